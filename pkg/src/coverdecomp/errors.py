"""Exception hierarchy shared by all modules."""


class CoverDecompError(Exception):
    """Base class for every error raised by this package."""


class InvalidPolygon(CoverDecompError, ValueError):
    """Vertex list is not a clockwise, strictly convex, centrally symmetric polygon."""


class InvalidInput(CoverDecompError, ValueError):
    """Malformed point set, instance or file."""


class StructuralViolation(CoverDecompError):
    """A structural property that is proven to hold was observed to fail.

    Reaching this is always an implementation bug; ``witnesses`` carries the
    offending points so the failure can be reproduced.
    """

    def __init__(self, message, witnesses=()):
        super().__init__(message)
        self.witnesses = tuple(witnesses)


class Incomparable(StructuralViolation):
    """Two points are not ordered by the boundary order of a wedge."""


class ConstraintUnsatisfiable(CoverDecompError):
    """The black/white cycle constraints admit no assignment."""


class InsufficientFold(CoverDecompError):
    """A covering instance is not deep enough for the decomposition guarantee."""

    def __init__(self, message, witness=None, depth=None):
        super().__init__(message)
        self.witness = witness
        self.depth = depth


class DecompositionFailure(CoverDecompError):
    """A produced color class failed to cover the region (bug trap)."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SizeBound(CoverDecompError):
    """Input exceeds the configured size bound of a brute-force oracle."""
