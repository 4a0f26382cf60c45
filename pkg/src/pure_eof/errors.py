"""Exception hierarchy shared by every module in the package."""


class EoFError(ValueError):
    """Base class for all validation failures raised by pure_eof."""


class InvalidInputError(EoFError):
    """Non-finite or otherwise unusable numeric input."""


class DimensionError(EoFError):
    """Shape mismatch or index out of range."""


class NormalizationError(EoFError):
    """Amplitudes do not have unit norm."""


class DegenerateStateError(EoFError):
    """Zero (or numerically zero) state vector."""


class InvalidSpectrumError(EoFError):
    """Probability vector with negative entries or a bad sum."""


class InvalidUnitaryError(EoFError):
    """Matrix supplied as a local rotation is not unitary."""


class DegenerateBlockError(EoFError):
    """Two-qubit block whose weight is below the skip cutoff."""


class InvalidBasisError(EoFError):
    """Operation requires a Schmidt-diagonal coefficient matrix."""
