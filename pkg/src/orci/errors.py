"""Exception types raised by the library."""


class OrciError(Exception):
    """Base class for all library errors."""


class DomainError(OrciError, ValueError):
    """An argument is outside the domain of the operation."""


class NumericError(OrciError, ArithmeticError):
    """A numerical procedure failed to reach its tolerance.

    Attributes
    ----------
    estimate : float or ndarray or None
        Best value obtained before giving up.
    error : float or None
        Error bound attached to ``estimate``.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class UndefinedIntervalError(OrciError):
    """The asymptotic interval does not exist because a table cell is zero."""

    def __init__(self, message, cell):
        super().__init__(message)
        self.cell = cell
