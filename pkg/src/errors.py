class PLConjError(Exception):
    """Base class for every error raised by the library."""


class InvalidInputError(PLConjError, ValueError):
    """Raised when caller supplied data violates a documented precondition."""


class BreakpointError(InvalidInputError):
    """A breakpoint list cannot be turned into a PL homeomorphism of [0,1]."""


class DuplicateXError(BreakpointError):
    pass


class NonMonotoneYError(BreakpointError):
    pass


class EndpointError(BreakpointError):
    pass


class DomainError(InvalidInputError):
    """A point argument lies outside the interval the operation is defined on."""


class NotInFError(InvalidInputError):
    """The map is not strictly above the diagonal on (0,1)."""


class InvalidParameterError(InvalidInputError):
    pass


class InvalidProfileError(InvalidInputError):
    pass


class GenConfigError(InvalidInputError):
    pass


class MapParseError(InvalidInputError):
    """Map document could not be parsed; ``position`` locates the problem."""

    def __init__(self, message: str, position: str = ""):
        self.position = position
        super().__init__(f"{message} (at {position})" if position else message)


class ReportParseError(MapParseError):
    pass


class InternalInvariantError(PLConjError, RuntimeError):
    """A guarantee the algorithms rely on did not hold."""
