"""Exception types shared across the package."""


class CondspecError(Exception):
    """Base class for library errors."""


class ConvergenceError(CondspecError):
    """An iterative factorization failed to converge."""


class GridTooSmallError(CondspecError):
    """The grid rectangle does not cover the required bounding disk."""


class GridResolutionError(CondspecError):
    """The grid is too coarse for the requested classification to be trusted."""


class NotAMemberError(CondspecError):
    """The point is not in the requested spectrum, so no witness exists."""


class PreconditionError(CondspecError):
    """A theorem-check precondition is violated (maps to CLI exit code 2)."""


class ParseError(CondspecError):
    """Malformed matrix input.  Carries 1-based line/column when known."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column
