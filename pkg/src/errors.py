"""Exception hierarchy shared by the toolkit."""


class GWAError(Exception):
    """Base class for all toolkit errors."""


class FieldMismatchError(GWAError, TypeError):
    """Scalars living in different fields were combined."""


class DivisionByZeroError(GWAError, ZeroDivisionError):
    pass


class ParseError(GWAError, ValueError):
    """Malformed q, polynomial or range text."""


class InvalidAlgebraError(GWAError, ValueError):
    """The defining data does not describe an algebra A(a, q)."""


class PreconditionError(GWAError, ValueError):
    """An operation was called outside its documented domain."""


class HypothesisViolation(GWAError):
    """Closed-form answers are not available for this input."""


class UnsupportedCaseError(GWAError, ValueError):
    pass


class UsageError(GWAError):
    """Malformed command-line configuration."""
