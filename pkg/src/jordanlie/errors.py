"""Exception hierarchy shared by every module."""


class JordanLieError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(JordanLieError, ValueError):
    pass


class UnsupportedCharacteristic(JordanLieError, ValueError):
    pass


class NotAssociative(JordanLieError, ValueError):
    def __init__(self, triple, left, right):
        super().__init__(f"associativity fails on basis triple {triple}")
        self.triple = triple
        self.left = left
        self.right = right


class NotAnIdeal(JordanLieError, ValueError):
    pass


class NotSplitError(JordanLieError):
    """The semisimple quotient is not a sum of full matrix algebras over the base field."""


class PreconditionError(JordanLieError, ValueError):
    pass


class NotInnerIdeal(PreconditionError):
    pass


class NotRegular(PreconditionError):
    def __init__(self, message, violation=None):
        super().__init__(message)
        self.violation = violation


class UndecidableError(JordanLieError):
    pass


class ReductionFailed(JordanLieError, RuntimeError):
    """A branch that cannot occur for correct inputs was reached.

    Carries enough data to reproduce the failure.
    """

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload or {}


class ParseError(JordanLieError, ValueError):
    """A malformed algebra file; ``line`` and ``column`` are 1-based."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
