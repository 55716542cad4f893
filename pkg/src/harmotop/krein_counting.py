"""Effective-Hamiltonian arithmetic for the perturbed soft Laplacian.

The counting functions of the perturbed operator near zero are sandwiched
between Toeplitz counting functions evaluated at shifted thresholds plus a
resolvent remainder.  The remainder is modelled through the spectrum of the
complementary restriction, which on the disk is the classical clamped
buckling spectrum {j_{k+1,m}^2} (multiplicity 1 for k = 0, 2 for k >= 1);
that identification is a working oracle confined to :func:`buckling_disk`,
so the sandwich arithmetic itself never depends on it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .numerics import bessel_zeros_upto
from .radial_toeplitz import boundary_law_constant

__all__ = [
    "BoundInterval",
    "SandwichInput",
    "sandwich_minus",
    "sandwich_plus",
    "CountingEnvelope",
    "counting_envelope",
    "buckling_disk",
    "disk_counting",
    "weyl_L_fit",
    "remainder_model",
]


@dataclass(frozen=True)
class BoundInterval:
    lower: int
    upper: int

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"empty bound interval [{self.lower}, {self.upper}]")


@dataclass(frozen=True)
class SandwichInput:
    """Inputs of the two-sided counting bounds.

    n_plus maps a positive threshold to the Toeplitz counting function;
    remainder maps epsilon to a bound on the resolvent-remainder counting
    term; offset is the constant absorbed on the positive-perturbation side.
    """

    lam: float
    eps: float
    n_plus: Callable[[float], int]
    remainder: Callable[[float], int]
    offset: int = 0

    def __post_init__(self):
        if self.lam <= 0.0:
            raise ValueError(f"threshold must be positive, got {self.lam}")
        if not 0.0 < self.eps < 1.0:
            raise ValueError(f"eps must lie in (0, 1), got {self.eps}")
        if self.offset < 0:
            raise ValueError(f"offset must be nonnegative, got {self.offset}")


def sandwich_minus(inp: SandwichInput) -> BoundInterval:
    """Two-sided bound for the negative-perturbation counting function:
    n_plus(lam) <= N <= n_plus((1-eps) lam) + remainder(eps)."""
    lower = int(inp.n_plus(inp.lam))
    upper = int(inp.n_plus((1.0 - inp.eps) * inp.lam)) + int(inp.remainder(inp.eps))
    return BoundInterval(lower=lower, upper=upper)


def sandwich_plus(inp: SandwichInput) -> BoundInterval:
    """Two-sided bound for the positive-perturbation counting function:
    n_plus((1+eps) lam) - remainder(eps) - offset <= N <= n_plus(lam) - offset,
    both sides clamped at zero."""
    lower = int(inp.n_plus((1.0 + inp.eps) * inp.lam)) - int(inp.remainder(inp.eps)) - inp.offset
    upper = int(inp.n_plus(inp.lam)) - inp.offset
    return BoundInterval(lower=max(0, lower), upper=max(0, upper))


@dataclass(frozen=True)
class CountingEnvelope:
    """Leading term and error exponents of the two-sided counting envelopes."""

    main: float
    error_exponent_inner: float   # lam^-(d-2)/gamma side
    error_exponent_sandwich: float  # lam^-(d-1) kappa / gamma side
    kappa: float


def counting_envelope(d: int, gamma: float, a0: float, lam: float) -> CountingEnvelope:
    """Envelope main term C lam^(-(d-1)/gamma) with the remainder dichotomy
    kappa = d/(d+2) for 2 <= d <= 4 and (d-2)/(d-1) for d >= 4."""
    if lam <= 0.0:
        raise ValueError(f"threshold must be positive, got {lam}")
    if d < 2:
        raise ValueError(f"space dimension must be >= 2, got {d}")
    kappa = d / (d + 2.0) if d <= 4 else (d - 2.0) / (d - 1.0)
    coeff = boundary_law_constant(d, gamma, a0)
    return CountingEnvelope(
        main=coeff * lam ** (-(d - 1) / gamma),
        error_exponent_inner=(d - 2) / gamma,
        error_exponent_sandwich=(d - 1) * kappa / gamma,
        kappa=kappa,
    )


# --- disk buckling oracle ----------------------------------------------------

_buckling_values: np.ndarray = np.empty(0)
_buckling_mults: np.ndarray = np.empty(0, dtype=int)
_buckling_limit: float = 0.0


def _ensure_buckling_table(val_max: float) -> None:
    global _buckling_values, _buckling_mults, _buckling_limit
    if val_max <= _buckling_limit:
        return
    # grow geometrically so that repeated slightly-larger requests do not
    # re-enumerate order by order
    val_max = max(val_max, 1.7 * _buckling_limit)
    x_max = math.sqrt(val_max) + 1.0
    vals, mults = [], []
    for order, zeros in bessel_zeros_upto(x_max, first_order=1):
        mult = 1 if order == 1 else 2
        for z in zeros:
            vals.append(z * z)
            mults.append(mult)
    order_idx = np.argsort(vals)
    _buckling_values = np.asarray(vals)[order_idx]
    _buckling_mults = np.asarray(mults, dtype=int)[order_idx]
    _buckling_limit = x_max * x_max


def buckling_disk(n: int) -> list[tuple[float, int]]:
    """The n smallest clamped-buckling values of the unit disk, ascending.

    Values are j_{k+1,m}^2 with multiplicity 1 for the radial family (k = 0)
    and 2 otherwise; entries accumulate at least n counting multiplicity.
    """
    if n < 1:
        raise ValueError(f"need at least one value, got n={n}")
    guess = max(60.0, 4.0 * n + 40.0)
    while True:
        _ensure_buckling_table(guess)
        if int(np.sum(_buckling_mults)) >= n:
            break
        guess *= 2.0
    out = []
    total = 0
    for val, mult in zip(_buckling_values, _buckling_mults):
        out.append((float(val), int(mult)))
        total += int(mult)
        if total >= n:
            break
    return out


def disk_counting(energy: float) -> int:
    """Number of disk buckling values strictly below `energy` (with multiplicity)."""
    if energy <= 0.0:
        return 0
    _ensure_buckling_table(energy)
    idx = int(np.searchsorted(_buckling_values, energy, side="left"))
    return int(np.sum(_buckling_mults[:idx]))


def weyl_L_fit(e_grid) -> tuple[float, float]:
    """Fit of the disk buckling counting function to C E: (exponent, coefficient).

    The exponent comes from a free log-log fit; the coefficient from the
    deepest grid point.  The planar leading coefficient is area/(4 pi) = 1/4.
    """
    e_arr = np.asarray(e_grid, dtype=float)
    if e_arr.size < 2 or np.any(np.diff(e_arr) <= 0.0):
        raise ValueError("energy grid must be increasing with >= 2 points")
    _ensure_buckling_table(float(e_arr[-1]))  # one enumeration for the whole grid
    counts = np.array([disk_counting(float(e)) for e in e_arr], dtype=float)
    if np.any(counts < 1.0):
        raise ValueError("energy grid starts below the first buckling value")
    exponent = float(np.polyfit(np.log(e_arr), np.log(counts), 1)[0])
    coefficient = float(counts[-1] / e_arr[-1])
    return exponent, coefficient


def remainder_model(eps: float, v_sup: float, lam1: float, d: int) -> int:
    """Model for the resolvent remainder: counting of the complementary
    spectrum below lam1 + v_sup/eps.

    For d = 2 the disk buckling oracle is evaluated exactly; for d >= 3 a
    unit-constant E^(d/2) growth model stands in (a model, not a certified
    bound).
    """
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    if v_sup < 0.0 or lam1 <= 0.0:
        raise ValueError("need v_sup >= 0 and lam1 > 0")
    energy = lam1 + v_sup / eps
    if d == 2:
        return disk_counting(energy)
    return int(energy ** (0.5 * d))
