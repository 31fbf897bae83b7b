"""Exception hierarchy shared by every module."""


class LeftOrderError(Exception):
    pass


class StructureError(LeftOrderError, ValueError):
    """Malformed word, presentation or matrix (unknown generator, bad shape...)."""


class ParseError(LeftOrderError, ValueError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "") + ": "
        super().__init__(where + message)
        self.message = message


class PreconditionError(LeftOrderError):
    """An operation was called on inputs violating its documented precondition."""


class DomainError(LeftOrderError, ValueError):
    """Evaluation outside the region where a map or germ is defined."""


class UnsupportedInverse(LeftOrderError):
    """The germ expression has no closed-form inverse in the supported class."""


class InvariantViolation(LeftOrderError):
    """Internal consistency check failed; indicates corrupted input data."""
