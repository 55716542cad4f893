"""Reduction of the Toeplitz operator to the boundary sphere.

On the ball the harmonic extension acts degree-wise as r^k, its Gram
operator is diagonal with eigenvalues 1/(2k+d), and conjugating the
V-weighted Gram operator by the inverse square root reproduces the Galerkin
section of the Toeplitz compression exactly (the unitary is the map
boundary harmonic -> normalised solid harmonic).  The module also checks
the order of the reduced operator as a pseudo-differential operator: its
leading symbol on the co-sphere is 2^-gamma Gamma(gamma+1) a0 |frequency|^-gamma
for symbols with power-type boundary decay.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grids import TruncationSpec, extension_node_matrix
from .harmonic_basis import basis_indices, multiplicity
from .numerics import log_gamma
from .radial_toeplitz import AsymptoticFit, counting, power_eigenvalue
from .symbols import Power

__all__ = [
    "BoundaryOperator",
    "extension_profile",
    "extension_gram_eigenvalue",
    "dtn_eigenvalue",
    "assemble_weighted_gram",
    "reduced_operator",
    "principal_symbol_value",
    "symbol_order_check",
    "inverse_power_weyl_fit",
]


@dataclass(frozen=True)
class BoundaryOperator:
    """Operator on boundary harmonics of degree <= max_degree.

    Either a full symmetric matrix in the (k, l) basis (degree-major) or,
    for degree-diagonal operators, one scalar per degree; the diagonal form
    asserts that all couplings across degrees vanish identically.
    """

    d: int
    max_degree: int
    matrix: np.ndarray | None = None
    degree_scalars: np.ndarray | None = None

    def __post_init__(self):
        if (self.matrix is None) == (self.degree_scalars is None):
            raise ValueError("provide exactly one of matrix, degree_scalars")

    def as_matrix(self) -> np.ndarray:
        if self.matrix is not None:
            return self.matrix
        diag = np.repeat(
            self.degree_scalars,
            [multiplicity(self.d, k) for k in range(self.max_degree + 1)],
        )
        return np.diag(diag)


def extension_profile(d: int, k: int):
    """Radial factor of the harmonic extension of a degree-k boundary harmonic."""
    if k < 0:
        raise ValueError(f"degree must be nonnegative, got {k}")
    return lambda r: np.asarray(r, dtype=float) ** k


def extension_gram_eigenvalue(d: int, k: int) -> float:
    """<G psi_k, G psi_k> = int_0^1 r^(2k) r^(d-1) dr = 1/(2k+d)."""
    if k < 0:
        raise ValueError(f"degree must be nonnegative, got {k}")
    return 1.0 / (2 * k + d)


def dtn_eigenvalue(d: int, k: int) -> float:
    """Dirichlet-to-Neumann eigenvalue: normal derivative of r^k at r = 1."""
    if k < 0:
        raise ValueError(f"degree must be nonnegative, got {k}")
    return float(k)


def assemble_weighted_gram(V, d: int, spec: TruncationSpec) -> BoundaryOperator:
    """Matrix of the V-weighted extension Gram form <V G psi_i, G psi_j>.

    Entries int_B V(x) |x|^(k+k') psi_{k,l}(x^) psi_{k',l'}(x^) dx on the
    same tensor grid as the Galerkin assembly.
    """
    from .galerkin_toeplitz import _node_values, _symbol_grid  # same symbol resolution rules

    grid = _symbol_grid(V, d, spec)
    vals = _node_values(V, d, spec, grid)
    basis = extension_node_matrix(d, spec.max_degree, grid)
    JV = (basis * (grid.weights * vals)) @ basis.T
    return BoundaryOperator(d=d, max_degree=spec.max_degree, matrix=0.5 * (JV + JV.T))


def reduced_operator(V, d: int, spec: TruncationSpec) -> BoundaryOperator:
    """Conjugation of the weighted Gram matrix by the inverse square root of
    the Gram diagonal; unitarily equivalent to the Toeplitz section."""
    JV = assemble_weighted_gram(V, d, spec)
    scale = np.array(
        [math.sqrt(2 * idx.k + d) for idx in basis_indices(d, spec.max_degree)]
    )
    mat = JV.matrix * scale[:, None] * scale[None, :]
    return BoundaryOperator(d=d, max_degree=spec.max_degree, matrix=mat)


def principal_symbol_value(gamma: float, a: float) -> float:
    """Leading symbol amplitude 2^-gamma Gamma(gamma+1) a of the reduced operator."""
    if gamma <= 0.0 or a <= 0.0:
        raise ValueError("principal symbol needs gamma > 0 and a > 0")
    return a * math.exp(-gamma * math.log(2.0) + log_gamma(gamma + 1.0))


def symbol_order_check(gamma: float, a: float, d: int, k_max: int) -> float:
    """Estimate lim k^gamma mu_k for the power symbol by Richardson extrapolation.

    Two-point extrapolation over k_max/2 and k_max cancels the 1/k term of
    the expansion; compare against :func:`principal_symbol_value` (the
    degree k plays the co-sphere frequency, with the O(1/k) mismatch
    absorbed by the extrapolation).
    """
    if k_max < 1000:
        raise ValueError(f"k_max must be >= 1000, got {k_max}")
    f_full = k_max**gamma * power_eigenvalue(a, gamma, d, k_max)
    half = k_max // 2
    f_half = half**gamma * power_eigenvalue(a, gamma, d, half)
    return 2.0 * f_full - f_half


def inverse_power_weyl_fit(gamma: float, a: float, d: int, e_grid) -> AsymptoticFit:
    """Counting law of the inverse-power reduced operator against C E^(d-1).

    Counts the degrees with mu_k^(-1/gamma) < E (with multiplicities),
    which coincides with the Toeplitz counting function at lam = E^-gamma,
    and fits the power law with pinned exponent d-1.  The coefficient
    approaches the boundary counting constant.
    """
    e_arr = np.asarray(e_grid, dtype=float)
    if e_arr.size < 4:
        raise ValueError(f"need at least 4 grid points, got {e_arr.size}")
    if np.any(e_arr <= 1.0) or np.any(np.diff(e_arr) <= 0.0):
        raise ValueError("energy grid must be increasing and > 1")
    v = Power(a, gamma)
    ln_lam = -gamma * np.log(e_arr)
    counts = np.array([counting(v, d, ln_lam=float(l)) for l in ln_lam], dtype=float)
    if np.any(counts < 1.0):
        raise ValueError("counting vanished on part of the energy grid")
    roots = counts ** (1.0 / (d - 1))
    alpha = np.polyfit(e_arr, roots, 1)[0]
    coefficient = float(alpha) ** (d - 1)
    resid = np.log(counts) - (math.log(coefficient) + (d - 1) * np.log(e_arr))
    return AsymptoticFit(
        coefficient=coefficient,
        exponent=float(d - 1),
        residual_rms=float(np.sqrt(np.mean(resid**2))),
        ln_lam=ln_lam,
        counts=counts,
    )
