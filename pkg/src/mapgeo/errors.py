"""Exception hierarchy shared by all mapgeo modules."""

from __future__ import annotations


class MapGeometryError(Exception):
    """Base class for every domain error raised by this package."""


# --- map construction ---------------------------------------------------


class EdgeCrossing(MapGeometryError):
    """Two edge segments intersect somewhere other than a shared endpoint."""


class LowValency(MapGeometryError):
    """A vertex has fewer than three incident edges."""


class MuOutOfRange(MapGeometryError):
    """An angle factor falls outside (0, 4*pi/valency]."""


class DuplicateEdge(MapGeometryError):
    """The same unordered vertex pair appears twice in the edge list."""


class DisconnectedMap(MapGeometryError):
    """The input graph is not connected, so Euler's formula cannot hold."""


class UnknownVertex(MapGeometryError):
    pass


class UnknownEdge(MapGeometryError):
    pass


class OutOfRange(MapGeometryError):
    """Arc position or interpolation argument outside its interval."""


class Disconnects(MapGeometryError):
    """Removing the requested faces disconnects the remaining surface."""


class AllFacesRemoved(MapGeometryError):
    """Face removal must leave at least one face."""


class MapSyntaxError(MapGeometryError):
    """Malformed line in the map text format; carries the line number."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


# --- tracing ------------------------------------------------------------


class StartOnEdge(MapGeometryError):
    """Trace start point lies on (or too near) an edge."""


class ZeroDirection(MapGeometryError):
    pass


class EmptyList(MapGeometryError):
    pass


class ValueOutOfRange(MapGeometryError):
    pass


# --- polygons and areas --------------------------------------------------


class DegenerateTriangle(MapGeometryError):
    """A Heron radicand is negative beyond tolerance."""


class NegativeArea(MapGeometryError):
    """Hyperbolic subtraction produced a negative total area."""


class ChainInconsistent(MapGeometryError):
    """Side-chain data admits no planar realization of the declared kind."""


class CenterOnEdge(MapGeometryError):
    pass


# --- bundles ------------------------------------------------------------


class EmptyCut(MapGeometryError):
    pass


class NonlinearFunction(MapGeometryError):
    """Operation requires linear angle functions."""


# --- enumeration --------------------------------------------------------


class TooLarge(MapGeometryError):
    """Input exceeds the brute-force enumeration bounds."""


class Disconnected(MapGeometryError):
    pass


# --- pseudo-planes ------------------------------------------------------


class OutOfDomain(MapGeometryError):
    """Angle field evaluated outside its declared domain."""


class NoConvergence(MapGeometryError):
    """Bisection failed; signals a discontinuous sampled field."""


class VerticalTangent(MapGeometryError):
    pass


class NonMonotoneRho(MapGeometryError):
    pass


class OriginUndefined(MapGeometryError):
    """Lifted field queried exactly at the origin with nonzero height."""


class NonFinite(MapGeometryError):
    """A field returned NaN or infinity during integration."""


class NotElliptic(MapGeometryError):
    pass


class EmptySequence(MapGeometryError):
    pass


class NotSingular(MapGeometryError):
    """Jacobian classification requested at a non-equilibrium point."""


class BadParameters(MapGeometryError):
    pass


# --- rendering ----------------------------------------------------------


class EmptyViewport(MapGeometryError):
    pass
