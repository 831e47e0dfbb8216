"""Exception hierarchy shared across the package."""

from __future__ import annotations


class GvfError(Exception):
    """Base class for all errors raised by this package."""


class NonManifoldEdge(GvfError):
    """A mesh edge is shared by more than two triangles."""


class EmptySourceSet(GvfError):
    """A distance query was issued with no source vertices."""


class UnreachablePair(GvfError):
    """Two guiding vertices lie in different connected components."""


class EmptyGuidingSet(GvfError):
    """An extension or fitting operation received no guiding points."""


class DisconnectedDomain(GvfError):
    """The domain graph is not connected."""


class IndexOutOfRange(GvfError):
    """A level index lies outside the chain's valid range."""


class ElementNotFound(GvfError):
    """A range-tree element reference does not name an element of the tree."""


class InfeasibleGuidingSet(GvfError):
    """The guiding data violates the distance/level-gap existence condition.

    Carries the first violating pair as ``witness`` when available.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InternalIntervalEmpty(GvfError):
    """The per-vertex feasible interval emptied during extension.

    This cannot happen on feasible input; seeing it means a bug in the
    extension bookkeeping.
    """


class EmptyCandidateSet(GvfError):
    """The tree-valued extension ran out of candidate elements at a vertex."""


class DimensionMismatch(GvfError):
    """A field's length does not match its grid's cell count."""


class EmptyFixedSet(GvfError):
    """Harmonic relaxation needs at least one fixed vertex to be well posed."""


class IsolatedFreeVertex(GvfError):
    """A free vertex with no neighbors cannot be relaxed."""


class ParseError(GvfError):
    """Malformed input text; the message reports the offending line."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DuplicateLocation(GvfError):
    """Two sample records name the same grid cell or entity."""


class OutOfBounds(GvfError):
    """A sample location lies outside the declared domain."""
