"""Exception hierarchy shared across the package."""


class EcsbmError(Exception):
    """Base class for all errors raised by this package."""


class SelfLoopError(EcsbmError):
    """An edge connects a vertex to itself where self-loops are not allowed."""


class DuplicateEdgeError(EcsbmError):
    """The same unordered vertex pair appears more than once."""


class VertexOutOfRangeError(EcsbmError):
    """A vertex id falls outside the declared vertex universe."""


class VertexUniverseMismatchError(EcsbmError):
    """Two graphs that must share a vertex universe have different sizes."""


class GraphTooLargeError(EcsbmError):
    """The graph exceeds the size limit of an exhaustive algorithm."""


class KTooLargeError(EcsbmError):
    """Requested connectivity exceeds what a simple graph on the vertex set allows."""


class NotEnoughCandidatesError(EcsbmError):
    """Fewer candidates than the number of picks requested."""


class UnassignedVertexError(EcsbmError):
    """A vertex has no cluster where a total assignment is required."""


class InconsistentParamsError(EcsbmError):
    """Block-model parameters violate a consistency invariant."""


class OddDiagonalError(EcsbmError):
    """A diagonal entry of the block edge-count matrix is odd."""


class EmptyGraphError(EcsbmError):
    """The operation is undefined on a graph with no vertices."""


class UniverseMismatchError(EcsbmError):
    """Two reports or networks being compared do not share a universe."""


class ParseError(EcsbmError):
    """An input file failed to parse; carries the path and 1-based line number."""

    def __init__(self, path, line, message):
        super().__init__(f"{path}:{line}: {message}")
        self.path = str(path)
        self.line = line
