"""Spherical-harmonic combinatorics and the orthonormal harmonic basis of the unit ball.

Degree-k spherical harmonics on S^(d-1) have multiplicity m_k; the ball
carries the orthonormal basis sqrt(2k+d) |x|^k psi_{k,l}(x/|x|).  Pointwise
harmonics are implemented for d in {2, 3}; the combinatorial and radial
quantities work for every d >= 2.

Basis enumeration is degree-major with l ascending within a degree; all
matrix layouts downstream rely on this order.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .numerics import gegenbauer, log_gamma

__all__ = [
    "BasisIndex",
    "multiplicity",
    "cumulative_multiplicity",
    "multiplicity_asymptotic_check",
    "sphere_surface_area",
    "basis_indices",
    "spherical_harmonic",
    "angular_basis_matrix",
    "zonal_sum",
    "basis_value",
]


class BasisIndex(NamedTuple):
    k: int
    ell: int


def _check_dimension(d: int) -> None:
    if d < 2:
        raise ValueError(f"space dimension must be >= 2, got {d}")


def _binom(m: int, n: int) -> int:
    # binom(m, n) = 0 whenever m < n (including negative m).
    if n < 0 or m < n:
        return 0
    return math.comb(m, n)


def multiplicity(d: int, k: int) -> int:
    """Dimension m_k of the space of degree-k spherical harmonics on S^(d-1)."""
    _check_dimension(d)
    if k < 0:
        raise ValueError(f"degree must be nonnegative, got {k}")
    return _binom(d + k - 1, d - 1) - _binom(d + k - 3, d - 1)


def cumulative_multiplicity(d: int, k: int) -> int:
    """M_k = sum of m_j for j <= k, in closed binomial form; M_{-1} = 0."""
    _check_dimension(d)
    if k < -1:
        raise ValueError(f"cumulative multiplicity needs k >= -1, got {k}")
    return _binom(d + k - 1, d - 1) + _binom(d + k - 2, d - 1)


def multiplicity_asymptotic_check(d: int, k_max: int) -> float:
    """max over k in [k_max/2, k_max] of |M_k (d-1)!/(2 k^(d-1)) - 1| * k.

    The growth law M_k = 2 k^(d-1)/(d-1)! (1 + O(1/k)) makes this quantity
    bounded; the caller asserts the bound.
    """
    _check_dimension(d)
    if k_max < 10:
        raise ValueError(f"k_max must be >= 10, got {k_max}")
    fact = math.factorial(d - 1)
    worst = 0.0
    for k in range(k_max // 2, k_max + 1):
        dev = abs(cumulative_multiplicity(d, k) * fact / (2.0 * k ** (d - 1)) - 1.0) * k
        worst = max(worst, dev)
    return worst


def sphere_surface_area(d: int) -> float:
    """Surface measure of the unit sphere S^(d-1): 2 pi^(d/2) / Gamma(d/2)."""
    _check_dimension(d)
    return 2.0 * math.pi ** (0.5 * d) / math.exp(log_gamma(0.5 * d))


def basis_indices(d: int, max_degree: int) -> list[BasisIndex]:
    """All (k, ell) with k <= max_degree, degree-major, ell ascending."""
    return [
        BasisIndex(k, ell)
        for k in range(max_degree + 1)
        for ell in range(1, multiplicity(d, k) + 1)
    ]


# --- pointwise harmonics (d = 2, 3) ----------------------------------------


def _normalized_alp_table(K: int, u: np.ndarray) -> np.ndarray:
    """Geodesy (4pi) normalized associated Legendre values N[k, m, :] on u."""
    n = u.shape[0]
    s = np.sqrt(np.maximum(0.0, 1.0 - u * u))
    N = np.zeros((K + 1, K + 1, n))
    N[0, 0] = 1.0
    if K >= 1:
        N[1, 1] = math.sqrt(3.0) * s
        N[1, 0] = math.sqrt(3.0) * u
    for m in range(2, K + 1):
        N[m, m] = math.sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * N[m - 1, m - 1]
    for m in range(1, K):
        N[m + 1, m] = math.sqrt(2.0 * m + 3.0) * u * N[m, m]
    for m in range(0, K + 1):
        for k in range(m + 2, K + 1):
            a = math.sqrt((2.0 * k - 1.0) * (2.0 * k + 1.0) / ((k - m) * (k + m)))
            b = math.sqrt(
                (2.0 * k + 1.0) * (k + m - 1.0) * (k - m - 1.0)
                / ((2.0 * k - 3.0) * (k - m) * (k + m))
            )
            N[k, m] = a * u * N[k - 1, m] - b * N[k - 2, m]
    return N


def angular_basis_matrix(d: int, max_degree: int, dirs: np.ndarray) -> np.ndarray:
    """Orthonormal real spherical harmonics evaluated on unit vectors.

    Returns the (M_K, n) matrix whose rows follow :func:`basis_indices`.
    Only d = 2 and d = 3 carry pointwise harmonics.
    """
    dirs = np.asarray(dirs, dtype=float)
    if d == 2:
        theta = np.arctan2(dirs[:, 1], dirs[:, 0])
        rows = [np.full(dirs.shape[0], 1.0 / math.sqrt(2.0 * math.pi))]
        inv_sqrt_pi = 1.0 / math.sqrt(math.pi)
        for k in range(1, max_degree + 1):
            rows.append(np.cos(k * theta) * inv_sqrt_pi)
            rows.append(np.sin(k * theta) * inv_sqrt_pi)
        return np.vstack(rows)
    if d == 3:
        u = dirs[:, 2]
        phi = np.arctan2(dirs[:, 1], dirs[:, 0])
        N = _normalized_alp_table(max_degree, u)
        inv = 1.0 / math.sqrt(4.0 * math.pi)
        rows = []
        for k in range(max_degree + 1):
            for m in range(-k, k + 1):
                if m < 0:
                    rows.append(N[k, -m] * np.sin(-m * phi) * inv)
                elif m == 0:
                    rows.append(N[k, 0] * inv)
                else:
                    rows.append(N[k, m] * np.cos(m * phi) * inv)
        return np.vstack(rows)
    raise ValueError(f"pointwise harmonics are implemented for d in {{2, 3}}, got d={d}")


def spherical_harmonic(d: int, k: int, ell: int, point) -> float:
    """Value of the real orthonormal spherical harmonic psi_{k,ell} at a unit vector."""
    point = np.asarray(point, dtype=float)
    if point.shape != (d,):
        raise ValueError(f"expected a point in R^{d}, got shape {point.shape}")
    if abs(float(np.linalg.norm(point)) - 1.0) > 1e-12:
        raise ValueError("spherical_harmonic requires a unit vector")
    if not 1 <= ell <= multiplicity(d, k):
        raise ValueError(f"index ell={ell} outside [1, m_k] for d={d}, k={k}")
    mat = angular_basis_matrix(d, k, point[None, :])
    offset = cumulative_multiplicity(d, k - 1)
    return float(mat[offset + ell - 1, 0])


def zonal_sum(d: int, k: int, t) -> float | np.ndarray:
    """Rotation-invariant kernel sum_l psi_{k,l}(xi) psi_{k,l}(eta) at t = xi.eta.

    Equals m_k/|S^(d-1)| * C_k^(d/2-1)(t)/C_k^(d/2-1)(1) for d >= 3, and the
    Fourier kernel cos(k theta)/pi for d = 2 (1/(2 pi) at k = 0).
    """
    _check_dimension(d)
    scalar = np.ndim(t) == 0
    t_arr = np.asarray(t, dtype=float)
    if np.any(np.abs(t_arr) > 1.0 + 1e-12):
        raise ValueError("zonal_sum argument must lie in [-1, 1]")
    t_arr = np.clip(t_arr, -1.0, 1.0)
    if d == 2:
        if k == 0:
            out = np.full_like(t_arr, 1.0 / (2.0 * math.pi))
        else:
            out = np.cos(k * np.arccos(t_arr)) / math.pi
    else:
        alpha = 0.5 * d - 1.0
        ratio = gegenbauer(k, alpha, t_arr) / gegenbauer(k, alpha, 1.0)
        out = multiplicity(d, k) / sphere_surface_area(d) * ratio
    return float(out) if scalar else out


def zonal_table(d: int, max_degree: int, t: np.ndarray) -> np.ndarray:
    """zonal_sum(d, k, t) for all k <= max_degree in one recurrence pass."""
    t = np.clip(np.asarray(t, dtype=float), -1.0, 1.0)
    out = np.empty((max_degree + 1, t.shape[0]))
    if d == 2:
        theta = np.arccos(t)
        out[0] = 1.0 / (2.0 * math.pi)
        for k in range(1, max_degree + 1):
            out[k] = np.cos(k * theta) / math.pi
        return out
    alpha = 0.5 * d - 1.0
    area = sphere_surface_area(d)
    c_prev = np.ones_like(t)
    c_prev1 = 1.0
    out[0] = multiplicity(d, 0) / area
    if max_degree >= 1:
        c_cur = 2.0 * alpha * t
        c_cur1 = 2.0 * alpha
        out[1] = multiplicity(d, 1) / area * (c_cur / c_cur1)
        for k in range(2, max_degree + 1):
            c_prev, c_cur = c_cur, (2.0 * t * (k + alpha - 1.0) * c_cur - (k + 2.0 * alpha - 2.0) * c_prev) / k
            c_prev1, c_cur1 = c_cur1, (2.0 * (k + alpha - 1.0) * c_cur1 - (k + 2.0 * alpha - 2.0) * c_prev1) / k
            out[k] = multiplicity(d, k) / area * (c_cur / c_cur1)
    return out


def basis_value(d: int, k: int, ell: int, x) -> float:
    """Orthonormal harmonic basis element sqrt(2k+d) |x|^k psi_{k,ell}(x/|x|) on the ball."""
    x = np.asarray(x, dtype=float)
    if x.shape != (d,):
        raise ValueError(f"expected a point in R^{d}, got shape {x.shape}")
    r = float(np.linalg.norm(x))
    if r >= 1.0:
        raise ValueError("basis_value requires |x| < 1")
    scale = math.sqrt(2.0 * k + d)
    if r == 0.0:
        if k == 0:
            return scale / math.sqrt(sphere_surface_area(d))
        return 0.0
    return scale * r**k * spherical_harmonic(d, k, ell, x / r)
