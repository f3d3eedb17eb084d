"""Exception types raised by the package.

Every error derives from :class:`GraphError`, itself a ``ValueError``, so
callers that only care about "bad input" can catch one type.
"""


class GraphError(ValueError):
    pass


class SelfLoopError(GraphError):
    def __init__(self, vertex):
        super().__init__(f"self-loop at vertex {vertex}")
        self.vertex = vertex


class OutOfRangeError(GraphError):
    pass


class EmptyOrFullError(GraphError):
    pass


class FullDeletionError(GraphError):
    pass


class Graph6Error(GraphError):
    pass


class BadCharError(Graph6Error):
    pass


class TruncatedBitsError(Graph6Error):
    pass


class DisconnectedError(GraphError):
    pass


class CompleteGraphError(GraphError):
    pass


class DegreeTooSmallError(GraphError):
    pass


class TooSmallError(GraphError):
    pass


class ConstantVectorError(GraphError):
    pass


class NotACutError(GraphError):
    pass


class PencilDomainError(GraphError):
    pass


class NoConvergenceError(ArithmeticError):
    """Jacobi sweeps hit the cap; this indicates a solver bug, not bad input."""


class DomainError(GraphError):
    pass


class PreconditionDeltaError(DomainError):
    pass


class UnknownFamilyError(GraphError):
    pass


class TooLargeError(GraphError):
    pass
