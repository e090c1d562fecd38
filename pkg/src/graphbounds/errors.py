"""Exception hierarchy shared by every graphbounds module."""


class GraphBoundsError(ValueError):
    """Base class for all library errors."""


class IndexOutOfRange(GraphBoundsError, IndexError):
    pass


class SelfLoop(GraphBoundsError):
    pass


class SizeExceeded(GraphBoundsError):
    pass


class TooFewVertices(GraphBoundsError):
    pass


class InvalidProbability(GraphBoundsError):
    pass


class InvalidParameters(GraphBoundsError):
    pass


class Infeasible(GraphBoundsError):
    pass


class WiringFailure(GraphBoundsError):
    pass


class ParseError(GraphBoundsError):
    """Input could not be parsed; ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedLine(ParseError):
    pass


class NotSquare(ParseError):
    pass


class OutOfRangeEntry(ParseError):
    pass


class AsymmetryTooLarge(ParseError):
    pass


class InvalidDiagonal(ParseError):
    pass


class AsymmetricAdjacency(ParseError):
    pass


class NonBinaryEntry(ParseError):
    pass


class SelfLoopEntry(ParseError):
    pass
