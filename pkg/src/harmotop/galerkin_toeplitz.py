"""Finite-section (Galerkin) compression of the Toeplitz operator for
general symbols in d = 2, 3: assembly, spectra, counting, Schatten norms,
norm-domination checks, and Weyl-inequality verification.

The section is the compression to harmonic degrees <= max_degree.  For
nonnegative symbols its eigenvalues are monotone nondecreasing in the
truncation degree (min-max), so counting from sections yields certified
lower bounds for the full counting function.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .grids import BallGrid, TruncationSpec, ball_grid, harmonic_node_matrix
from .harmonic_basis import cumulative_multiplicity
from .kernel_berezin import density_radial
from .numerics import symmetric_eigen
from .radial_toeplitz import Spectrum
from .symbols import (
    GeneralSymbol,
    Power,
    Sampled,
    Step,
    SymbolSum,
    radial_breakpoints,
    radial_values,
)

__all__ = [
    "TruncationSpec",
    "TabulatedSymbol",
    "assemble",
    "spectrum",
    "counting_galerkin",
    "schatten_galerkin",
    "norm_domination_check",
    "weyl_check",
    "write_matrix_csv",
    "read_matrix_csv",
]


@dataclass(frozen=True)
class TabulatedSymbol:
    """Symbol given by its values on the tensor quadrature grid of `spec`.

    Wire format for externally supplied general symbols: the value array is
    radial-major (all angular nodes of the first radius first) and must
    match the grid implied by (d, spec) exactly.
    """

    d: int
    spec: TruncationSpec
    values: np.ndarray
    boundary_gamma: float | None = None
    boundary_trace_values: np.ndarray | None = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        expected = ball_grid(self.d, self.spec).weights.size
        if vals.shape != (expected,):
            raise ValueError(
                f"tabulated symbol carries {vals.shape} values; the grid has {expected} nodes"
            )


def _node_values(V, d: int, spec: TruncationSpec, grid: BallGrid) -> np.ndarray:
    if isinstance(V, (Step, Power, Sampled, SymbolSum)):
        return radial_values(V, grid.radii)
    if isinstance(V, TabulatedSymbol):
        if V.d != d or V.spec != spec:
            raise ValueError("tabulated symbol was sampled on a different grid")
        return V.values
    if isinstance(V, GeneralSymbol):
        return V(grid.points)
    if callable(V):
        return np.asarray(V(grid.points), dtype=float)
    raise TypeError(f"cannot evaluate symbol of type {type(V).__name__}")


def _symbol_grid(V, d: int, spec: TruncationSpec) -> BallGrid:
    breaks = radial_breakpoints(V) if isinstance(V, (Step, Power, Sampled, SymbolSum)) else ()
    return ball_grid(d, spec, radial_breaks=breaks)


def assemble(V, d: int, spec: TruncationSpec) -> np.ndarray:
    """Section matrix with entries int_B V phi_i phi_j dx on degrees <= max_degree.

    Entries come from the tensor quadrature of the grid; the result is
    symmetrised by averaging, and a residual asymmetry beyond 1e-8 raises a
    quadrature-quality warning.
    """
    if d not in (2, 3):
        raise ValueError(f"general-symbol assembly supports d in {{2, 3}}, got d={d}")
    grid = _symbol_grid(V, d, spec)
    vals = _node_values(V, d, spec, grid)
    basis = harmonic_node_matrix(d, spec.max_degree, grid)
    A = (basis * (grid.weights * vals)) @ basis.T
    asym = float(np.max(np.abs(A - A.T)))
    scale = max(float(np.max(np.abs(A))), 1e-300)
    if asym > 1e-8 * scale:
        warnings.warn(
            f"assembly asymmetry {asym:.2e} exceeds 1e-8 relative; quadrature may be too coarse",
            RuntimeWarning,
        )
    return 0.5 * (A + A.T)


def spectrum(V, d: int, spec: TruncationSpec) -> Spectrum:
    """Eigenvalues of the finite section, sorted by decreasing magnitude."""
    eigs = symmetric_eigen(assemble(V, d, spec))
    order = np.argsort(-np.abs(eigs), kind="stable")
    entries = tuple((float(e), 1) for e in eigs[order])
    return Spectrum(entries=entries, max_degree=spec.max_degree, d=d, provenance="galerkin")


def counting_galerkin(spec_spectrum: Spectrum, lam: float, sign: int = 1) -> int:
    """Eigenvalues of the section with sign*e > lam (strict), multiplicities counted."""
    return spec_spectrum.count_above(lam, sign)


def schatten_galerkin(spec_spectrum: Spectrum, p: float, weak: bool = False) -> float:
    return spec_spectrum.schatten_weak(p) if weak else spec_spectrum.schatten(p)


def norm_domination_check(V, d: int, spec: TruncationSpec, p: float, weak: bool = False):
    """Compare the section's Schatten norm against the symbol's integral norm.

    lhs: finite-section (weak) Schatten norm.  rhs: the L^p norm of V with
    respect to the truncated density measure rho_K dx (weak: the level-set
    quasinorm sup_t t rho_K(|V| > t)^(1/p), evaluated on the quadrature
    grid).  Returns (lhs, rhs, passed) with passed = lhs <= rhs*(1 + 1e-6).
    Requires V >= 0.
    """
    if weak:
        if p <= 1.0:
            raise ValueError(f"weak exponent must be > 1, got {p}")
    elif p < 1.0:
        raise ValueError(f"exponent must be >= 1, got {p}")
    grid = _symbol_grid(V, d, spec)
    vals = _node_values(V, d, spec, grid)
    if np.min(vals) < -1e-12:
        raise ValueError("norm domination check requires a nonnegative symbol")
    vals = np.maximum(vals, 0.0)
    rho = density_radial(d, grid.radii, spec.max_degree)
    lhs = schatten_galerkin(spectrum(V, d, spec), p, weak=weak)
    if not weak:
        rhs = float(np.dot(grid.weights, rho * vals**p)) ** (1.0 / p)
    else:
        order = np.argsort(-vals, kind="stable")
        masses = np.cumsum((grid.weights * rho)[order])
        rhs = float(np.max(vals[order] * masses ** (1.0 / p)))
    return lhs, rhs, lhs <= rhs * (1.0 + 1e-6)


def _count_above(sorted_eigs: np.ndarray, s: float, sign: int) -> int:
    vals = sign * sorted_eigs
    return int(np.count_nonzero(vals > s))


def weyl_check(A: np.ndarray, B: np.ndarray, trials: int = 100, rng=None) -> bool:
    """Verify n_pm(s1+s2; A+B) <= n_pm(s1; A) + n_pm(s2; B) on an (s1, s2) sample.

    Uses a deterministic log-spaced grid plus `trials` random pairs drawn
    over the combined spectral range; returns False on any violation.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch: {A.shape} vs {B.shape}")
    ea = symmetric_eigen(A)
    eb = symmetric_eigen(B)
    es = symmetric_eigen(A + B)
    top = max(float(np.max(np.abs(ea))), float(np.max(np.abs(eb))), 1e-12)
    grid = np.geomspace(1e-4 * top, 1.5 * top, 10)
    pairs = [(s1, s2) for s1 in grid for s2 in grid]
    if trials > 0:
        rng = np.random.default_rng(rng if rng is not None else 0)
        lo, hi = math.log(1e-4 * top), math.log(1.5 * top)
        pairs.extend(
            (math.exp(a), math.exp(b)) for a, b in rng.uniform(lo, hi, size=(trials, 2))
        )
    for s1, s2 in pairs:
        for sign in (1, -1):
            if _count_above(es, s1 + s2, sign) > _count_above(ea, s1, sign) + _count_above(eb, s2, sign):
                return False
    return True


def write_matrix_csv(path, A: np.ndarray, d: int, max_degree: int) -> None:
    """Row-major CSV dump with the header `# harmotop matrix d=<d> K=<K> n=<M_K>`."""
    A = np.asarray(A, dtype=float)
    n = cumulative_multiplicity(d, max_degree)
    if A.shape != (n, n):
        raise ValueError(f"matrix shape {A.shape} does not match M_K = {n}")
    with open(path, "w") as fh:
        fh.write(f"# harmotop matrix d={d} K={max_degree} n={n}\n")
        for row in A:
            fh.write(",".join(format(x, ".17g") for x in row) + "\n")


def read_matrix_csv(path) -> tuple[np.ndarray, int, int]:
    """Read a matrix dump; returns (matrix, d, max_degree)."""
    with open(path) as fh:
        header = fh.readline().strip()
        parts = dict(
            item.split("=") for item in header.lstrip("# ").split() if "=" in item
        )
        if not header.startswith("# harmotop matrix"):
            raise ValueError(f"not a harmotop matrix file: {header!r}")
        d, k, n = int(parts["d"]), int(parts["K"]), int(parts["n"])
        rows = [list(map(float, line.split(","))) for line in fh if line.strip()]
    A = np.array(rows)
    if A.shape != (n, n):
        raise ValueError(f"matrix body {A.shape} does not match header n={n}")
    return A, d, k
