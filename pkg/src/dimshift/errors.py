class DimshiftError(Exception):
    """Base class for all errors raised by dimshift."""


class RangeError(DimshiftError, ValueError):
    """An integer argument lies outside the range an operation accepts."""


class DomainError(DimshiftError, ValueError):
    """A structural precondition (minimality, cycle validity, ...) does not hold."""


class CapacityError(DimshiftError):
    """A dense or combinatorial computation would exceed its configured budget."""


class ConsistencyError(DimshiftError):
    """An internal exactness check failed, e.g. a non-exact integer division."""
