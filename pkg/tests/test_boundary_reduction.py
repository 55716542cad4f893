import math

import numpy as np
import pytest

from harmotop import radial_toeplitz as rt
from harmotop.boundary_reduction import (
    BoundaryOperator,
    assemble_weighted_gram,
    dtn_eigenvalue,
    extension_gram_eigenvalue,
    extension_profile,
    inverse_power_weyl_fit,
    principal_symbol_value,
    reduced_operator,
    symbol_order_check,
)
from harmotop.galerkin_toeplitz import assemble
from harmotop.grids import TruncationSpec, ball_grid, extension_node_matrix
from harmotop.harmonic_basis import basis_indices
from harmotop.numerics import gauss_legendre
from harmotop.symbols import GeneralSymbol, Power, Step


def test_extension_is_harmonic_by_finite_differences():
    # u(x) = r^3 cos(3 theta): the 5-point Laplacian of a cubic harmonic
    # polynomial vanishes up to rounding.
    profile = extension_profile(2, 3)

    def u(x, y):
        r = math.hypot(x, y)
        theta = math.atan2(y, x)
        return float(profile(r)) * math.cos(3 * theta)

    h = 1e-3
    for (x, y) in [(0.3, 0.1), (-0.2, 0.4), (0.5, -0.35)]:
        lap = (u(x + h, y) + u(x - h, y) + u(x, y + h) + u(x, y - h) - 4 * u(x, y)) / h**2
        assert abs(lap) < 1e-6


def test_extension_recovers_boundary_trace():
    profile = extension_profile(2, 4)
    assert profile(1.0) == pytest.approx(1.0)
    assert profile(0.0) == 0.0
    assert extension_profile(3, 0)(0.5) == pytest.approx(1.0)


def test_gram_eigenvalue_against_quadrature_oracle():
    for d, k in [(2, 0), (3, 1), (2, 7), (3, 12)]:
        rule = gauss_legendre(k + d + 4, 0.0, 1.0)
        oracle = rule.integrate(lambda r: r ** (2 * k) * r ** (d - 1))
        assert extension_gram_eigenvalue(d, k) == pytest.approx(oracle, rel=1e-13)
    assert extension_gram_eigenvalue(2, 0) == pytest.approx(0.5)
    assert extension_gram_eigenvalue(3, 1) == pytest.approx(0.2)


def test_gram_eigenvalues_positive_and_vanishing():
    for d in (2, 3):
        vals = [extension_gram_eigenvalue(d, k) for k in range(1001)]
        assert all(v > 0.0 for v in vals)  # trivial kernel of the extension
        assert all(a > b for a, b in zip(vals, vals[1:]))  # compactness at spectral level
        assert all(abs((2 * k + d) * v - 1.0) <= 2.3e-16 for k, v in enumerate(vals))


def test_dtn_eigenvalues():
    assert dtn_eigenvalue(2, 0) == 0.0
    assert dtn_eigenvalue(2, 1) == 1.0
    vals = [dtn_eigenvalue(3, k) for k in range(1001)]
    assert all(v >= 0.0 for v in vals)
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert vals[1000] / 1000.0 == pytest.approx(1.0)  # first-order growth


def test_dtn_matches_finite_difference_normal_derivative():
    # d=2, k=4: central difference of r^4 at r=1 against the symbol value 4.
    k = 4
    h = 1e-4
    fd = ((1.0 + h) ** k - (1.0 - h) ** k) / (2.0 * h)
    assert abs(fd - dtn_eigenvalue(2, k)) < 1e-6


@pytest.mark.parametrize("d", [2, 3])
def test_weighted_gram_of_unit_symbol_is_gram_diagonal(d):
    spec = TruncationSpec.for_degree(6)
    unit = GeneralSymbol(lambda p: np.ones(p.shape[0]))
    J = assemble_weighted_gram(unit, d, spec).as_matrix()
    expected = np.diag([extension_gram_eigenvalue(d, idx.k) for idx in basis_indices(d, 6)])
    assert np.max(np.abs(J - expected)) < 1e-12


def test_weighted_gram_radial_diagonal_and_symmetric():
    spec = TruncationSpec.for_degree(8)
    J = assemble_weighted_gram(Step(1.0, 0.5), 2, spec).as_matrix()
    assert np.max(np.abs(J - J.T)) < 1e-12
    expected = [
        rt.step_eigenvalue(1.0, 0.5, 2, idx.k) / (2 * idx.k + 2) for idx in basis_indices(2, 8)
    ]
    assert np.max(np.abs(np.diag(J) - expected)) < 1e-12
    assert np.max(np.abs(J - np.diag(np.diag(J)))) < 1e-12


def test_reduced_operator_radial_diagonal_is_mu():
    spec = TruncationSpec.for_degree(8)
    R = reduced_operator(Power(1.0, 1.0), 2, spec).as_matrix()
    expected = [rt.power_eigenvalue(1.0, 1.0, 2, idx.k) for idx in basis_indices(2, 8)]
    assert np.max(np.abs(np.diag(R) - expected)) < 1e-10
    unit = GeneralSymbol(lambda p: np.ones(p.shape[0]))
    assert np.max(np.abs(reduced_operator(unit, 2, spec).as_matrix() - np.eye(R.shape[0]))) < 1e-10


@pytest.mark.parametrize(
    "d,max_degree,func",
    [
        (2, 12, lambda p: 0.5 * (1.0 + p[:, 0])),
        (2, 12, lambda p: p[:, 0] ** 2 + 0.1),
        (3, 8, lambda p: np.exp(0.5 * p[:, 2]) * (1.0 - (p**2).sum(axis=1))),
    ],
)
def test_reduced_operator_equals_galerkin_section(d, max_degree, func):
    spec = TruncationSpec.for_degree(max_degree)
    V = GeneralSymbol(func)
    R = reduced_operator(V, d, spec).as_matrix()
    G = assemble(V, d, spec)
    assert np.max(np.abs(R - G)) < 1e-10


def test_projection_reproduces_harmonic_polynomials():
    # G J^-1 G* acts as the identity on degree-<=K harmonic polynomials.
    d, K = 2, 5
    spec = TruncationSpec.for_degree(K)
    grid = ball_grid(d, spec)
    basis = extension_node_matrix(d, K, grid)
    rng = np.random.default_rng(4)
    coeffs = rng.normal(size=basis.shape[0])
    u_nodes = coeffs @ basis
    # <u, G psi_(k,l)> over the ball, then scale by the inverse Gram diagonal
    inner = basis @ (grid.weights * u_nodes)
    scaled = inner * np.array([2 * idx.k + d for idx in basis_indices(d, K)])
    assert np.max(np.abs(scaled - coeffs)) < 1e-10
    reconstructed = scaled @ basis
    assert np.max(np.abs(reconstructed - u_nodes)) < 1e-10


def test_boundary_operator_validation():
    with pytest.raises(ValueError):
        BoundaryOperator(d=2, max_degree=2)
    diag = BoundaryOperator(d=2, max_degree=2, degree_scalars=np.array([1.0, 2.0, 3.0]))
    assert np.allclose(diag.as_matrix(), np.diag([1.0, 2.0, 2.0, 3.0, 3.0]))


def test_symbol_order_limits():
    assert symbol_order_check(1.0, 1.0, 2, 10_000) == pytest.approx(0.5, abs=1e-4)
    assert symbol_order_check(2.0, 1.0, 3, 10_000) == pytest.approx(0.5, abs=1e-3)
    est_1 = symbol_order_check(1.5, 1.0, 2, 10_000)
    est_3 = symbol_order_check(1.5, 3.0, 2, 10_000)
    assert est_3 == pytest.approx(3.0 * est_1, rel=1e-9)  # linear in the amplitude
    assert principal_symbol_value(1.0, 1.0) == pytest.approx(0.5)


def test_inverse_power_weyl_fit():
    fit = inverse_power_weyl_fit(1.0, 1.0, 2, np.geomspace(1e3, 1e5, 12))
    assert fit.coefficient == pytest.approx(rt.boundary_law_constant(2, 1.0, 1.0), rel=0.02)
    # coefficient scales like a^((d-1)/gamma)
    fit2 = inverse_power_weyl_fit(1.0, 2.0, 2, np.geomspace(1e3, 1e5, 12))
    assert fit2.coefficient == pytest.approx(2.0 * fit.coefficient, rel=0.02)


def test_inverse_power_counts_reindex_toeplitz_counting():
    gamma = 1.0
    for e in (1e3, 3e4):
        n_energy = rt.counting(Power(1.0, gamma), 2, ln_lam=-gamma * math.log(e))
        n_thresh = rt.counting(Power(1.0, gamma), 2, e**-gamma)
        assert n_energy == n_thresh
