"""Exception types shared across the package."""


class JohnsonError(Exception):
    """Base class for all errors raised by johnson_iso."""


class ParameterError(JohnsonError, ValueError):
    """Invalid or mismatched graph parameters / construction geometry."""


class RankRangeError(ParameterError, IndexError):
    """A lex rank or prefix length outside the vertex range."""


class UnsupportedError(JohnsonError):
    """Operation only defined for k = 2 was called on another J(n,k)."""


class DomainError(JohnsonError, ValueError):
    """Input outside the mathematical domain (empty set ratio, n < 3, ...)."""


class CapacityError(JohnsonError):
    """Exhaustive search requested beyond the enumeration cap."""
