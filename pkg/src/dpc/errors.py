"""Exception hierarchy shared by all dpc modules.

The CLI maps these onto exit codes: ParseError -> 2, LimitExceeded -> 3,
DefectError -> 4. Everything else derived from DpcError is a usage-level
problem (exit 1).
"""


class DpcError(Exception):
    """Base class for all errors raised by dpc."""


class ParseError(DpcError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateArcError(ParseError):
    pass


class VertexRangeError(ParseError):
    pass


class LimitExceeded(DpcError):
    pass


class GraphOperationError(DpcError):
    """Precondition of a structural operation violated (missing arc, not a sink, ...)."""


class UncoverableVertexError(DpcError):
    pass


class UnboundedError(DpcError):
    pass


class SurjectivityError(DpcError):
    pass


class DefectError(DpcError):
    """An internal consistency check failed; indicates a bug, not bad input."""
