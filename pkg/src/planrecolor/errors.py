"""Exception hierarchy shared by the recoloring engine."""


class RecolorError(Exception):
    """Base class for every error raised by this package."""


class EmbeddingError(RecolorError, ValueError):
    """Rotation system is not a connected simple plane embedding."""


class PreconditionError(RecolorError, ValueError):
    """An operation was called outside its documented preconditions."""


class CapExceeded(RecolorError):
    """A brute-force enumeration would exceed its configured size cap."""


class ParseError(RecolorError, ValueError):
    """A text file could not be parsed; message names the offending line."""


class StructureNotFound(RecolorError):
    """No reducible configuration exists in some recursion subinstance.

    The offending subgraph is kept in ``graph`` so callers can inspect or
    serialize the falsifying instance.
    """

    def __init__(self, message, graph=None, strategy=None):
        super().__init__(message)
        self.graph = graph
        self.strategy = strategy
