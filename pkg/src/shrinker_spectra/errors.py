"""Exception types shared across the package.

The CLI maps these onto exit codes: insufficient data -> 4, file parse
problems -> 3, bad arguments -> 2.
"""


class InvalidDimensionError(ValueError):
    """A dimension parameter is out of range (n < 1, k >= n, ...)."""


class InsufficientSpectrumError(ValueError):
    """A spectrum does not provide enough eigenvalues for the request."""


class InsufficientLevelsError(InsufficientSpectrumError):
    """A Minkowski-sum merge cannot produce the requested level count."""


class NegativeDiscriminantError(ValueError):
    """The next-eigenvalue quadratic has no real root; the input prefix
    already violates the quadratic inequality it encodes."""


class InvalidShiftError(ValueError):
    """min |X|^2 >= 2n, so the additive spectral shift is not positive."""


class NotApplicableError(Exception):
    """A check whose hypotheses exclude the given model (e.g. compactness)."""


class SpectrumParseError(ValueError):
    """A spectrum or problem file could not be parsed."""
