"""Truncated reproducing kernel of the harmonic subspace, its diagonal
density, integrals against the induced measure, and the Berezin transform.

All series are truncated at an explicit maximum degree; near the boundary
the geometric factor |x|^(2k) demands max_degree of order 1/(1-|x|), see
:func:`suggested_max_degree`.  At fixed truncation every structural identity
(reproducing property, trace identity) is exact up to rounding, because the
truncated kernel is itself the kernel of an orthogonal projection.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import QuadratureDivergenceError
from .grids import BallGrid, TruncationSpec, ball_grid
from .harmonic_basis import multiplicity, sphere_surface_area, zonal_table
from .radial_toeplitz import radial_eigenvalue
from .symbols import GeneralSymbol, Power, Sampled, Step, SymbolSum, radial_values

__all__ = [
    "boundary_distance",
    "kernel_separation",
    "suggested_max_degree",
    "reproducing_kernel",
    "density",
    "density_radial",
    "density_integral",
    "berezin_transform",
]


def boundary_distance(x) -> float:
    """dist(x, boundary) = 1 - |x| on the unit ball."""
    r = float(np.linalg.norm(np.asarray(x, dtype=float)))
    if r >= 1.0:
        raise ValueError("point must lie inside the unit ball")
    return 1.0 - r


def kernel_separation(x, y) -> float:
    """|x - y| + dist(x, boundary) + dist(y, boundary)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return float(np.linalg.norm(x - y)) + boundary_distance(x) + boundary_distance(y)


def suggested_max_degree(max_radius: float) -> int:
    """Truncation degree making the kernel tail negligible at radius max_radius."""
    if not 0.0 <= max_radius < 1.0:
        raise ValueError(f"radius must lie in [0, 1), got {max_radius}")
    return math.ceil(40.0 / (1.0 - max_radius))


def _degree_weights(d: int, max_degree: int) -> np.ndarray:
    return np.array([(2 * k + d) * multiplicity(d, k) for k in range(max_degree + 1)], dtype=float)


def reproducing_kernel(d: int, x, y, max_degree: int) -> float:
    """Truncated kernel sum_{k<=K} (2k+d) |x|^k |y|^k Z_k(x^.y^); symmetric, real."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    rx = float(np.linalg.norm(x))
    ry = float(np.linalg.norm(y))
    if rx >= 1.0 or ry >= 1.0:
        raise ValueError("kernel arguments must lie inside the unit ball")
    t = float(np.dot(x, y) / (rx * ry)) if rx > 0.0 and ry > 0.0 else 1.0
    zt = zonal_table(d, max_degree, np.array([t]))[:, 0]
    k = np.arange(max_degree + 1)
    return float(np.sum((2 * k + d) * (rx * ry) ** k * zt))


def density_radial(d: int, r, max_degree: int) -> np.ndarray:
    """Kernel diagonal sum_{k<=K} (2k+d) m_k r^(2k) / |S^(d-1)| at radii r."""
    r = np.asarray(r, dtype=float)
    if np.any(r >= 1.0) or np.any(r < 0.0):
        raise ValueError("radii must lie in [0, 1)")
    coeff = _degree_weights(d, max_degree) / sphere_surface_area(d)
    # Horner in r^2 keeps the evaluation O(K) per radius.
    q = r * r
    acc = np.full_like(r, coeff[-1])
    for c in coeff[-2::-1]:
        acc = acc * q + c
    return acc


def density(d: int, x, max_degree: int) -> float:
    """Kernel diagonal at a point of the ball (positive, radial)."""
    r = float(np.linalg.norm(np.asarray(x, dtype=float)))
    if r >= 1.0:
        raise ValueError("point must lie inside the unit ball")
    return float(density_radial(d, np.array([r]), max_degree)[0])


def _radial_density_integral(v: RadialSymbol, d: int, max_degree: int) -> float:
    """Exact 1-D reduction: int f rho_K dx = sum_{k<=K} m_k mu_k(f)."""
    return float(
        sum(multiplicity(d, k) * radial_eigenvalue(v, d, k) for k in range(max_degree + 1))
    )


def _tensor_values(V, grid: BallGrid) -> np.ndarray:
    if isinstance(V, (Step, Power, Sampled, SymbolSum)):
        return radial_values(V, grid.radii)
    if isinstance(V, GeneralSymbol):
        return V(grid.points)
    if callable(V):
        return np.asarray(V(grid.points), dtype=float)
    raise TypeError(f"cannot evaluate symbol of type {type(V).__name__} on a grid")


def density_integral(
    V,
    d: int,
    max_degree: int,
    spec: TruncationSpec | None = None,
    check_convergence: bool = True,
) -> float:
    """Integral of V against the truncated density rho_K dx.

    Radial symbols reduce to the exact one-dimensional moment sum; general
    symbols integrate on the tensor grid, with a refinement check that
    raises QuadratureDivergenceError when two refinements differ by more
    than 1e-6 relative.
    """
    if isinstance(V, (Step, Power, Sampled, SymbolSum)):
        return _radial_density_integral(V, d, max_degree)
    if spec is None:
        spec = TruncationSpec.for_degree(max_degree)
    value = _tensor_density_integral(V, d, max_degree, spec)
    if check_convergence:
        finer = TruncationSpec(max_degree, spec.n_r + 8, spec.n_ang + 4)
        refined = _tensor_density_integral(V, d, max_degree, finer)
        scale = max(abs(value), abs(refined), 1e-300)
        if abs(value - refined) > 1e-6 * scale:
            raise QuadratureDivergenceError(
                f"density integral refinements disagree: {value!r} vs {refined!r}"
            )
    return value


def _tensor_density_integral(V, d: int, max_degree: int, spec: TruncationSpec) -> float:
    grid = ball_grid(d, spec)
    rho = density_radial(d, grid.radii, max_degree)
    return float(np.dot(grid.weights, rho * _tensor_values(V, grid)))


def berezin_transform(
    V,
    d: int,
    x,
    max_degree: int,
    spec: TruncationSpec | None = None,
) -> float:
    """Covariant symbol rho_K(x)^(-1) int R_K(x, y)^2 V(y) dy.

    For radial V the angular integral collapses by zonal orthogonality and
    the transform is the rho-weighted average of the radial eigenvalues:
        sum_k (2k+d) m_k |x|^(2k) mu_k / sum_k (2k+d) m_k |x|^(2k).
    """
    x = np.asarray(x, dtype=float)
    rx = float(np.linalg.norm(x))
    if rx >= 1.0:
        raise ValueError("point must lie inside the unit ball")
    if isinstance(V, (Step, Power, Sampled, SymbolSum)):
        coeff = _degree_weights(d, max_degree) * rx ** (2 * np.arange(max_degree + 1))
        mus = np.array([radial_eigenvalue(V, d, k) for k in range(max_degree + 1)])
        return float(np.dot(coeff, mus) / np.sum(coeff))
    if spec is None:
        spec = TruncationSpec.for_degree(max_degree)
    grid = ball_grid(d, spec)
    vals = _tensor_values(V, grid)
    # R_K(x, y_j) over all nodes via the zonal table in t = x^ . y^.
    if rx > 0.0:
        t = grid.points @ (x / rx) / np.where(grid.radii > 0.0, grid.radii, 1.0)
    else:
        t = np.ones(grid.points.shape[0])
    zt = zonal_table(d, max_degree, t)
    k = np.arange(max_degree + 1)
    radial_factor = rx**k[:, None] * grid.radii[None, :] ** k[:, None]
    kernel_vals = np.sum((2 * k[:, None] + d) * radial_factor * zt, axis=0)
    numer = float(np.dot(grid.weights, kernel_vals**2 * vals))
    return numer / density(d, x, max_degree)
