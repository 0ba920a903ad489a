"""Exception hierarchy shared by every module of the package."""


class TPNError(Exception):
    """Base class for all errors raised by tpncover."""


class RejectedInput(TPNError, ValueError):
    """An argument violates an operation's precondition."""


class ShapeError(TPNError, ValueError):
    """A word or simple expression does not have the shape an operation needs."""


class ParseError(RejectedInput):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class InvariantViolation(TPNError, RuntimeError):
    """An internal invariant or a proven bound failed to hold. Always a bug."""


class BudgetExceeded(TPNError):
    """The requested computation exceeds the configured resource budget."""
