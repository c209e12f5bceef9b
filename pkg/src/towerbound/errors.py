"""Shared exception types."""


class TowerboundError(Exception):
    pass


class NotPrimeError(TowerboundError, ValueError):
    pass


class PrecisionUnstableError(TowerboundError):
    """Raised when a working-precision recomputation changes a result."""


class InfeasibleError(TowerboundError):
    """Raised when an enumeration would exceed the configured guard."""


class MiddleDegreeError(TowerboundError):
    """Raised for the degree where cohomology grows like the volume itself."""


class DiscreteSeriesError(TowerboundError):
    """Raised where non-tempered parameter data is undefined."""
