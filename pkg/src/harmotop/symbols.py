"""Symbol types: radial profiles on [0, 1) and general multipliers on the ball.

Radial variants:
  Step(b, c)        v(r) = b on [0, c], 0 beyond (c in (0, 1))
  Power(a, gamma)   v(r) = a (1 - r)^gamma
  Sampled(r, v)     piecewise-linear through strictly increasing nodes in
                    [0, 1); constant continuation before the first node and
                    after the last one (so v(1-) is the last sample)
  SymbolSum(parts)  pointwise sum of radial symbols

General symbols evaluate pointwise on the open unit ball and may declare
power-type boundary behaviour V(x) ~ (1-|x|)^gamma a0(x/|x|).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

__all__ = [
    "Step",
    "Power",
    "Sampled",
    "SymbolSum",
    "RadialSymbol",
    "radial_values",
    "radial_sup",
    "boundary_value",
    "GeneralSymbol",
    "from_radial",
]


@dataclass(frozen=True)
class Step:
    b: float
    c: float

    def __post_init__(self):
        if not 0.0 < self.c < 1.0:
            raise ValueError(f"step radius must lie in (0, 1), got {self.c}")


@dataclass(frozen=True)
class Power:
    a: float
    gamma: float

    def __post_init__(self):
        if self.a <= 0.0:
            raise ValueError(f"power amplitude must be positive, got {self.a}")
        if self.gamma <= 0.0:
            raise ValueError(f"decay rate must be positive, got {self.gamma}")


@dataclass(frozen=True)
class Sampled:
    r: tuple[float, ...]
    v: tuple[float, ...]

    def __init__(self, r, v):
        r = tuple(float(x) for x in r)
        v = tuple(float(x) for x in v)
        if len(r) != len(v) or len(r) < 2:
            raise ValueError("sampled profile needs matching r/v sequences of length >= 2")
        if any(b <= a for a, b in zip(r, r[1:])):
            raise ValueError("sample radii must be strictly increasing")
        if r[0] < 0.0 or r[-1] >= 1.0:
            raise ValueError("sample radii must lie in [0, 1)")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "v", v)


@dataclass(frozen=True)
class SymbolSum:
    parts: tuple["RadialSymbol", ...]

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise ValueError("empty symbol sum")
        object.__setattr__(self, "parts", parts)


RadialSymbol = Union[Step, Power, Sampled, SymbolSum]


def radial_values(v: RadialSymbol, r) -> np.ndarray:
    """Evaluate the radial profile at radii r in [0, 1)."""
    r = np.asarray(r, dtype=float)
    if isinstance(v, Step):
        return np.where(r <= v.c, v.b, 0.0)
    if isinstance(v, Power):
        return v.a * (1.0 - r) ** v.gamma
    if isinstance(v, Sampled):
        return np.interp(r, v.r, v.v)
    if isinstance(v, SymbolSum):
        return sum(radial_values(p, r) for p in v.parts)
    raise TypeError(f"not a radial symbol: {v!r}")


def radial_sup(v: RadialSymbol) -> float:
    """An upper bound for sup |v| on [0, 1)."""
    if isinstance(v, Step):
        return abs(v.b)
    if isinstance(v, Power):
        return v.a
    if isinstance(v, Sampled):
        return max(abs(x) for x in v.v)
    if isinstance(v, SymbolSum):
        return sum(radial_sup(p) for p in v.parts)
    raise TypeError(f"not a radial symbol: {v!r}")


def radial_breakpoints(v: RadialSymbol) -> tuple[float, ...]:
    """Interior radii where the profile is not smooth (jumps and kinks).

    Quadrature rules split at these radii so that piecewise-polynomial
    profiles integrate exactly.
    """
    if isinstance(v, Step):
        return (v.c,)
    if isinstance(v, Power):
        return ()
    if isinstance(v, Sampled):
        return tuple(r for r in v.r if 0.0 < r < 1.0)
    if isinstance(v, SymbolSum):
        return tuple(sorted({b for p in v.parts for b in radial_breakpoints(p)}))
    raise TypeError(f"not a radial symbol: {v!r}")


def boundary_value(v: RadialSymbol) -> float:
    """v(1-) under the profile's continuation (0 for Step/Power)."""
    if isinstance(v, (Step, Power)):
        return 0.0
    if isinstance(v, Sampled):
        return v.v[-1]
    if isinstance(v, SymbolSum):
        return sum(boundary_value(p) for p in v.parts)
    raise TypeError(f"not a radial symbol: {v!r}")


@dataclass
class GeneralSymbol:
    """Multiplier on the unit ball, evaluated on (n, d) arrays of points.

    boundary_gamma/boundary_trace, when set, declare the decay structure
    V(x) = (1-|x|)^gamma a(x) with trace a0 on the sphere; spot-check with
    :meth:`check_boundary_meta`.
    """

    func: Callable[[np.ndarray], np.ndarray]
    boundary_gamma: float | None = None
    boundary_trace: Callable[[np.ndarray], np.ndarray] | None = field(default=None)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        return np.asarray(self.func(points), dtype=float)

    def check_boundary_meta(self, d: int, n_dirs: int = 16, radius: float = 0.999, rtol: float = 0.05) -> bool:
        if self.boundary_gamma is None or self.boundary_trace is None:
            raise ValueError("no boundary metadata declared")
        rng = np.random.default_rng(7)
        dirs = rng.normal(size=(n_dirs, d))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        scaled = self(radius * dirs) * (1.0 - radius) ** (-self.boundary_gamma)
        target = np.asarray(self.boundary_trace(dirs), dtype=float)
        return bool(np.all(np.abs(scaled - target) <= rtol * np.maximum(1.0, np.abs(target))))


def from_radial(v: RadialSymbol) -> GeneralSymbol:
    """Wrap a radial profile as a general symbol V(x) = v(|x|)."""
    meta_gamma = v.gamma if isinstance(v, Power) else None
    trace = None
    if isinstance(v, Power):
        trace = lambda dirs: np.full(np.atleast_2d(dirs).shape[0], v.a)
    return GeneralSymbol(
        func=lambda pts: radial_values(v, np.linalg.norm(np.atleast_2d(pts), axis=1)),
        boundary_gamma=meta_gamma,
        boundary_trace=trace,
    )
