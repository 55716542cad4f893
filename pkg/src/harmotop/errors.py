"""Error types shared across the package."""


class TailNotCertifiedError(RuntimeError):
    """A series/counting routine could not certify its truncation tail.

    Raised instead of silently truncating: the caller either supplied a
    cutoff below which the remainder cannot be bounded, or the quantity is
    genuinely not summable/finite (e.g. counting below the boundary value
    of a symbol that does not vanish on the boundary).
    """


class QuadratureDivergenceError(RuntimeError):
    """Consecutive quadrature refinements disagreed beyond tolerance."""
