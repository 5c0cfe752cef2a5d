"""Exception hierarchy shared by every module of the package."""


class MecCountError(ValueError):
    """Base class for all errors raised by meccount."""


class VertexOutOfRange(MecCountError, IndexError):
    pass


class NotChordal(MecCountError):
    pass


class NotConnected(MecCountError):
    pass


class NotATree(MecCountError):
    pass


class SeedNotClique(MecCountError):
    pass


class EdgeNotInTree(MecCountError):
    pass


class InvalidCliqueTree(MecCountError):
    pass


class NotADirectedEdge(MecCountError):
    pass


class NotSynchronous(MecCountError):
    pass


class WindowMismatch(MecCountError):
    pass


class TooLarge(MecCountError):
    pass


class NoMatch(MecCountError, AssertionError):
    """A projection search found no MEC; signals an internal inconsistency."""


class InfeasibleSpec(MecCountError):
    pass


class ParseError(MecCountError):
    pass


class Disagreement(MecCountError):
    """Two counting methods produced different answers on the same input."""
