"""Error types for cluster-index-cli."""


class ParseError(ValueError):
    """Raised when textual or JSON input does not follow the shared syntax."""


class ClusterIndexError(Exception):
    """Base class for domain errors; the CLI prints the class name and exits 1."""


class InvalidArc(ClusterIndexError):
    """The endpoint pair does not describe an indecomposable object."""


class EqualEndpoints(InvalidArc):
    pass


class NeighbouringEndpoints(InvalidArc):
    pass


class InvalidPoint(ClusterIndexError):
    """A marked point refers to an interval that does not exist for this n."""


class PreconditionViolated(ClusterIndexError):
    pass


class NoExtension(ClusterIndexError):
    """There is no nonzero extension of the requested kind."""


class NotInTriangulation(ClusterIndexError):
    pass


class NoFlipAvailable(ClusterIndexError):
    """The arc is not the diagonal of a finite quadrilateral."""


class InvalidTriangulation(ClusterIndexError):
    pass


class ApproximationFailure(ClusterIndexError):
    """The approximation triangle could not be completed inside the triangulation."""


class NotRigidTriangulation(ClusterIndexError):
    pass


class NotRigidObject(ClusterIndexError):
    pass


class MixedTriangulations(ClusterIndexError):
    """Index vectors relative to different triangulations were combined."""


class MutationMismatch(ClusterIndexError):
    """The flip formula disagrees with the directly recomputed index."""


class IoError(ClusterIndexError):
    """Reading an input file or writing a rendered document failed."""
