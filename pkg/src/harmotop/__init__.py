"""Numerical spectral laboratory for harmonic Toeplitz operators on the unit ball."""

from .errors import QuadratureDivergenceError, TailNotCertifiedError
from .grids import TruncationSpec
from .symbols import GeneralSymbol, Power, RadialSymbol, Sampled, Step, SymbolSum

__version__ = "0.1.0"

__all__ = [
    "GeneralSymbol",
    "Power",
    "QuadratureDivergenceError",
    "RadialSymbol",
    "Sampled",
    "Step",
    "SymbolSum",
    "TailNotCertifiedError",
    "TruncationSpec",
    "__version__",
]
