import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmotop import radial_toeplitz as rt
from harmotop.galerkin_toeplitz import (
    TabulatedSymbol,
    TruncationSpec,
    assemble,
    counting_galerkin,
    norm_domination_check,
    read_matrix_csv,
    schatten_galerkin,
    spectrum,
    weyl_check,
    write_matrix_csv,
)
from harmotop.grids import ball_grid
from harmotop.harmonic_basis import basis_indices, cumulative_multiplicity
from harmotop.numerics import symmetric_eigen
from harmotop.symbols import GeneralSymbol, Power, Step

UNIT = GeneralSymbol(lambda p: np.ones(p.shape[0]))


def test_truncation_spec_invariants():
    with pytest.raises(ValueError):
        TruncationSpec(max_degree=8, n_r=24, n_ang=17)  # angular below 2K+2
    with pytest.raises(ValueError):
        TruncationSpec(max_degree=8, n_r=10, n_ang=20)  # radial below K+8
    spec = TruncationSpec.for_degree(8)
    assert spec.n_ang >= 18 and spec.n_r >= 16


@pytest.mark.parametrize("d", [2, 3])
def test_unit_symbol_assembles_to_identity(d):
    spec = TruncationSpec.for_degree(6)
    A = assemble(UNIT, d, spec)
    assert np.max(np.abs(A - np.eye(A.shape[0]))) < 1e-10


def test_odd_symbol_kills_the_diagonal():
    A = assemble(GeneralSymbol(lambda p: p[:, 0]), 2, TruncationSpec.for_degree(8))
    assert np.max(np.abs(np.diag(A))) < 1e-12


@pytest.mark.parametrize("d", [2, 3])
def test_radial_symbol_gives_diagonal_blocks(d):
    spec = TruncationSpec.for_degree(12 if d == 2 else 10)
    A = assemble(Step(1.0, 0.5), d, spec)
    off = A - np.diag(np.diag(A))
    assert np.max(np.abs(off)) < 1e-10
    expected = [rt.step_eigenvalue(1.0, 0.5, d, idx.k) for idx in basis_indices(d, spec.max_degree)]
    assert np.max(np.abs(np.diag(A) - expected)) < 1e-10


def test_polynomial_symbol_matches_hand_computed_matrix():
    # V = x1^2 in d = 2, K = 2; radial-angular factorisation done by hand:
    # diag (1/4, 1/2, 1/6, 3/8, 3/8), coupling <const, cos 2theta> = sqrt(6)/12.
    A = assemble(GeneralSymbol(lambda p: p[:, 0] ** 2), 2, TruncationSpec.for_degree(2))
    expected = np.diag([0.25, 0.5, 1.0 / 6.0, 0.375, 0.375])
    expected[0, 3] = expected[3, 0] = math.sqrt(6.0) / 12.0
    assert np.max(np.abs(A - expected)) < 1e-12


def test_spectrum_of_zero_and_radial_symbols():
    spec = TruncationSpec.for_degree(10)
    zero = spectrum(GeneralSymbol(lambda p: np.zeros(p.shape[0])), 2, spec)
    assert np.max(np.abs(zero.eigenvalues())) < 1e-14
    sp_power = spectrum(Power(1.0, 1.0), 2, spec)
    exact = rt.radial_spectrum(Power(1.0, 1.0), 2, 10)
    assert np.sort(sp_power.eigenvalues()) == pytest.approx(
        np.sort(exact.eigenvalues()), abs=1e-9
    )
    assert sp_power.provenance == "galerkin"
    assert sp_power.total_count == cumulative_multiplicity(2, 10)


def test_counting_galerkin_identity_and_radial():
    from harmotop.radial_toeplitz import Spectrum

    m_k = cumulative_multiplicity(2, 6)
    ident = Spectrum(entries=((1.0, m_k),), max_degree=6, d=2, provenance="galerkin")
    assert counting_galerkin(ident, 0.5) == m_k
    assert counting_galerkin(ident, 1.0) == 0  # strict inequality
    assembled = spectrum(UNIT, 2, TruncationSpec.for_degree(6))
    assert counting_galerkin(assembled, 0.5) == m_k
    sp_step = spectrum(Step(1.0, 0.5), 2, TruncationSpec.for_degree(10))
    assert counting_galerkin(sp_step, 0.01) == rt.counting(Step(1.0, 0.5), 2, 0.01) == 5


def test_schatten_galerkin_values():
    spec = TruncationSpec.for_degree(6)
    ident = spectrum(UNIT, 2, spec)
    m_k = cumulative_multiplicity(2, 6)
    assert schatten_galerkin(ident, 1.0) == pytest.approx(m_k, rel=1e-10)
    sp_step = spectrum(Step(1.0, 0.5), 2, TruncationSpec.for_degree(10))
    assert schatten_galerkin(sp_step, 2.0) <= schatten_galerkin(sp_step, 1.0)
    assert schatten_galerkin(sp_step, 2.0) == pytest.approx(
        rt.schatten_radial(Step(1.0, 0.5), 2, 2.0, k_stop=10), rel=1e-9
    )


def test_eigenvalue_range_bounded_by_symbol_range():
    V = GeneralSymbol(lambda p: 0.3 + 0.25 * p[:, 0] + 0.1 * p[:, 1] ** 2)
    eigs = spectrum(V, 2, TruncationSpec.for_degree(10)).eigenvalues()
    # range of V on the closed ball: 0.3 +- 0.25 |x1| + ...
    assert eigs.min() >= 0.05 - 1e-9
    assert eigs.max() <= 0.65 + 1e-9


def test_essential_spectrum_filling():
    V = GeneralSymbol(lambda p: 0.5 * (1.0 + p[:, 0]))
    eigs = spectrum(V, 2, TruncationSpec.for_degree(40)).eigenvalues()
    for target in (0.1, 0.3, 0.5, 0.7, 0.9):
        assert np.min(np.abs(eigs - target)) < 0.02


def test_norm_domination_trace_equality_and_gaps():
    spec = TruncationSpec.for_degree(12)
    lhs, rhs, ok = norm_domination_check(Step(1.0, 0.5), 2, spec, 1.0)
    assert ok and lhs == pytest.approx(rhs, rel=1e-8)
    lhs, rhs, ok = norm_domination_check(Power(1.0, 1.0), 2, spec, 2.0)
    assert ok and lhs < rhs
    lhs, rhs, ok = norm_domination_check(Power(1.0, 1.0), 2, spec, 1.5, weak=True)
    assert ok
    with pytest.raises(ValueError):
        norm_domination_check(GeneralSymbol(lambda p: p[:, 0]), 2, spec, 2.0)


def test_constant_symbol_norm_is_tight():
    V = GeneralSymbol(lambda p: np.full(p.shape[0], 0.7))
    eigs = spectrum(V, 2, TruncationSpec.for_degree(8)).eigenvalues()
    assert np.max(np.abs(eigs - 0.7)) < 1e-10


def test_weyl_check_zero_and_toeplitz_pairs():
    rng = np.random.default_rng(9)
    X = rng.normal(size=(20, 20))
    A = 0.5 * (X + X.T)
    assert weyl_check(A, np.zeros_like(A), trials=50, rng=0)
    spec = TruncationSpec.for_degree(8)
    T1 = assemble(Power(1.0, 1.0), 2, spec)
    T2 = assemble(Step(0.5, 0.5), 2, spec)
    assert weyl_check(T1, T2, trials=100, rng=1)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**6))
def test_weyl_inequalities_random_matrices(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 9))
    X = rng.normal(size=(n, n))
    Y = rng.normal(size=(n, n))
    A, B = 0.5 * (X + X.T), 0.5 * (Y + Y.T)
    ea, eb, es = symmetric_eigen(A), symmetric_eigen(B), symmetric_eigen(A + B)
    s1, s2 = rng.uniform(0.01, 3.0, 2)
    for sign in (1, -1):
        lhs = int(np.count_nonzero(sign * es > s1 + s2))
        rhs = int(np.count_nonzero(sign * ea > s1)) + int(np.count_nonzero(sign * eb > s2))
        assert lhs <= rhs


def test_matrix_csv_round_trip(tmp_path):
    spec = TruncationSpec.for_degree(4)
    A = assemble(Step(1.0, 0.5), 2, spec)
    path = tmp_path / "section.csv"
    write_matrix_csv(path, A, 2, 4)
    header = path.read_text().splitlines()[0]
    assert header == f"# harmotop matrix d=2 K=4 n={cumulative_multiplicity(2, 4)}"
    B, d, k = read_matrix_csv(path)
    assert d == 2 and k == 4
    assert np.array_equal(A, B)
    with pytest.raises(ValueError):
        write_matrix_csv(path, A[:3, :3], 2, 4)


def test_tabulated_symbol_assembly():
    spec = TruncationSpec.for_degree(6)
    grid = ball_grid(2, spec)
    tab = TabulatedSymbol(d=2, spec=spec, values=0.5 * (1.0 + grid.points[:, 0]))
    direct = assemble(GeneralSymbol(lambda p: 0.5 * (1.0 + p[:, 0])), 2, spec)
    assert np.max(np.abs(assemble(tab, 2, spec) - direct)) < 1e-14
    with pytest.raises(ValueError):
        TabulatedSymbol(d=2, spec=spec, values=np.ones(7))
    other = TruncationSpec.for_degree(7)
    with pytest.raises(ValueError):
        assemble(tab, 2, other)
