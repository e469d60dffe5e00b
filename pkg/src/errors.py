"""Exception hierarchy shared by the library and the command line."""


class IdealConvError(Exception):
    """Base class for every error raised on purpose by this package."""


class ArgumentError(IdealConvError, ValueError):
    """An argument is outside the documented range."""


class MalformedExpressionError(IdealConvError):
    """A set expression breaks one of its structural invariants."""


class PresentationError(IdealConvError):
    """A sequence presentation cannot be evaluated at some index."""


class UnsupportedPresentationError(PresentationError):
    """The operation is only defined for another kind of presentation."""


class PreconditionError(IdealConvError):
    """An operation was called on inputs outside its precondition."""


class WitnessError(IdealConvError):
    """A supplied witness does not satisfy its invariants."""


class StrategyFailure(IdealConvError):
    """No witness construction strategy applies to the given input."""


class SizeError(ArgumentError):
    """A finite model is larger than the supported size."""


class DomainError(ArgumentError):
    """A point lies outside the domain of a map."""


class ConstructionError(IdealConvError):
    """A constructed family of open sets is not a topology."""


class ConsistencyError(IdealConvError):
    """Two independent decision methods disagree."""


class ParseError(ArgumentError):
    """Raised by the DSL parsers; carries the 0-based position of the problem."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownScenarioError(ArgumentError):
    """The requested scenario name is not registered."""
