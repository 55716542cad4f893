"""Tensor quadrature grids on the unit ball and basis evaluations on them.

The angular factor is spectrally exact: an equispaced Fourier grid in d = 2
(exact for trigonometric polynomials of degree < n_ang) and Gauss-Legendre
in the polar angle times an equispaced azimuthal grid in d = 3.  Products of
harmonics of degree <= max_degree are then integrated exactly as long as
n_ang >= 2*max_degree + 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .harmonic_basis import angular_basis_matrix, multiplicity
from .numerics import gauss_legendre

__all__ = ["TruncationSpec", "BallGrid", "ball_grid", "harmonic_node_matrix", "extension_node_matrix"]


@dataclass(frozen=True)
class TruncationSpec:
    """Galerkin truncation: max degree plus radial/angular quadrature sizes."""

    max_degree: int
    n_r: int
    n_ang: int

    def __post_init__(self):
        if self.max_degree < 0:
            raise ValueError(f"max degree must be nonnegative, got {self.max_degree}")
        if self.n_ang < 2 * self.max_degree + 2:
            raise ValueError(
                f"angular grid size {self.n_ang} below exactness threshold "
                f"{2 * self.max_degree + 2} for degree {self.max_degree}"
            )
        if self.n_r < self.max_degree + 8:
            raise ValueError(
                f"radial order {self.n_r} below required {self.max_degree + 8}"
            )

    @classmethod
    def for_degree(cls, max_degree: int) -> "TruncationSpec":
        return cls(max_degree=max_degree, n_r=max_degree + 16, n_ang=2 * max_degree + 4)


@dataclass(frozen=True)
class BallGrid:
    d: int
    r_nodes: np.ndarray
    r_weights: np.ndarray
    ang_dirs: np.ndarray      # (n_ang_total, d) unit vectors
    ang_weights: np.ndarray   # sums to |S^(d-1)|
    points: np.ndarray        # (n_r * n_ang_total, d), radial-major
    weights: np.ndarray       # includes the r^(d-1) Jacobian

    @property
    def radii(self) -> np.ndarray:
        return np.repeat(self.r_nodes, self.ang_dirs.shape[0])


def ball_grid(d: int, spec: TruncationSpec, radial_breaks: tuple[float, ...] = ()) -> BallGrid:
    """Tensor grid on the ball; the radial rule splits at `radial_breaks` so
    that symbols with jumps or kinks at those radii integrate exactly."""
    if d == 2:
        theta = 2.0 * math.pi * np.arange(spec.n_ang) / spec.n_ang
        dirs = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
        ang_w = np.full(spec.n_ang, 2.0 * math.pi / spec.n_ang)
    elif d == 3:
        n_pol = spec.n_ang // 2 + 1
        u, wu = np.polynomial.legendre.leggauss(n_pol)
        phi = 2.0 * math.pi * np.arange(spec.n_ang) / spec.n_ang
        U = np.repeat(u, spec.n_ang)
        PHI = np.tile(phi, n_pol)
        s = np.sqrt(1.0 - U * U)
        dirs = np.stack([s * np.cos(PHI), s * np.sin(PHI), U], axis=-1)
        ang_w = np.repeat(wu, spec.n_ang) * (2.0 * math.pi / spec.n_ang)
    else:
        raise ValueError(f"tensor grids are implemented for d in {{2, 3}}, got d={d}")
    edges = [0.0] + sorted({b for b in radial_breaks if 0.0 < b < 1.0}) + [1.0]
    r_nodes = []
    r_weights = []
    for a, b in zip(edges, edges[1:]):
        rule = gauss_legendre(spec.n_r, a, b)
        r_nodes.append(rule.nodes)
        r_weights.append(rule.weights)
    r_nodes = np.concatenate(r_nodes)
    r_weights = np.concatenate(r_weights)
    pts = r_nodes[:, None, None] * dirs[None, :, :]
    w = (r_weights * r_nodes ** (d - 1))[:, None] * ang_w[None, :]
    return BallGrid(
        d=d,
        r_nodes=r_nodes,
        r_weights=r_weights,
        ang_dirs=dirs,
        ang_weights=ang_w,
        points=pts.reshape(-1, d),
        weights=w.reshape(-1),
    )


def _node_matrix(d: int, max_degree: int, grid: BallGrid, normalized: bool) -> np.ndarray:
    psi = angular_basis_matrix(d, max_degree, grid.ang_dirs)
    n_r = grid.r_nodes.size
    n_a = grid.ang_dirs.shape[0]
    out = np.empty((psi.shape[0], n_r * n_a))
    r_pow = np.ones(n_r)
    row = 0
    for k in range(max_degree + 1):
        if k > 0:
            r_pow = r_pow * grid.r_nodes
        scale = math.sqrt(2.0 * k + d) if normalized else 1.0
        for _ in range(multiplicity(d, k)):
            out[row] = scale * np.kron(r_pow, psi[row])
            row += 1
    return out


def harmonic_node_matrix(d: int, max_degree: int, grid: BallGrid) -> np.ndarray:
    """Rows: orthonormal ball basis sqrt(2k+d) r^k psi_{k,l} at the grid nodes."""
    return _node_matrix(d, max_degree, grid, normalized=True)


def extension_node_matrix(d: int, max_degree: int, grid: BallGrid) -> np.ndarray:
    """Rows: harmonic extensions r^k psi_{k,l} (no normalisation) at the grid nodes."""
    return _node_matrix(d, max_degree, grid, normalized=False)
