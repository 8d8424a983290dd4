"""Polygon predicates, internal-angle sums, bent-side areas and m-circles.

Angle conventions differ between the two halves of this module and follow
the source constructions exactly:

* the existence predicate and the internal-angle sum take crossing angles on
  the half-angle scale (a euclidean crossing is pi);
* the area routines take full surrounding angles (a euclidean crossing is
  2*pi) and bend the side by f/2 at each crossing, which is what makes the
  law-of-cosines recurrence and the euclidean degenerations come out right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from . import geom
from .errors import (
    CenterOnEdge,
    ChainInconsistent,
    DegenerateTriangle,
    NegativeArea,
)
from .map_core import (
    TOL_ANGLE,
    PlanarMap,
    PointClass,
    classify_edge_point,
    classify_vertex,
    locate_face,
)

_HERON_SLACK = 1e-12


class ChainKind(Enum):
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class SideChain:
    """One bent triangle side: c-subsegments c[0..p] between crossings, the
    full crossing angles f[0..p-1], and the two straight sides a, b closing
    the triangle. All crossings must share the declared kind."""

    a: float
    b: float
    c: tuple[float, ...]
    f: tuple[float, ...]
    kind: ChainKind

    def __post_init__(self) -> None:
        if len(self.c) != len(self.f) + 1:
            raise ChainInconsistent("need p+1 sub-segments for p crossings")
        if len(self.f) < 1:
            raise ChainInconsistent("need at least one crossing")
        if self.a <= 0 or self.b <= 0 or any(ci <= 0 for ci in self.c):
            raise ChainInconsistent("all lengths must be positive")
        if any(not (0.0 < fi < 4.0 * math.pi) for fi in self.f):
            raise ChainInconsistent("angles must lie in (0, 4*pi)")


def exists_1_polygon(f_values: list[float], tol: float = TOL_ANGLE) -> bool:
    """A closed one-sided polygon through the given crossing angles exists
    exactly when there are at least three of them summing to (l-2)*pi."""
    l = len(f_values)
    if l < 3:
        return False
    return abs(sum(f_values) - (l - 2) * math.pi) <= tol * l


def exists_2_polygon(pmap: PlanarMap) -> bool:
    """True when the map carries any non-euclidean point at all: either a
    non-euclidean vertex, or an edge whose endpoint angles differ (its
    interior then sweeps through non-euclidean values)."""
    for vid in pmap.vertices:
        if classify_vertex(pmap, vid) is not PointClass.EUCLIDEAN:
            return True
    for e in pmap.edges:
        u, v = e.endpoints
        if abs(pmap.vertex_angle(u) - pmap.vertex_angle(v)) > TOL_ANGLE:
            return True
    return False


def internal_angle_sum(n: int, f_values: list[float]) -> float:
    """Sum of internal angles of an n-gon whose sides cross the listed
    non-euclidean points: (n + l - 2)*pi - sum(f)."""
    if n < 1:
        raise ValueError("polygon needs at least one side")
    l = len(f_values)
    return (n + l - 2) * math.pi - sum(f_values)


def _heron(a: float, b: float, c: float) -> float:
    s = 0.5 * (a + b + c)
    rad = s * (s - a) * (s - b) * (s - c)
    if rad < -_HERON_SLACK:
        raise DegenerateTriangle(f"sides ({a}, {b}, {c}) violate the triangle inequality")
    return math.sqrt(max(rad, 0.0))


def chain_area(chain: SideChain) -> float:
    """Area of a triangle whose side AB bends at p same-kind crossings.

    Walks the law-of-cosines recurrence from A: each step knows |Ax_i| and
    the angle x_i makes between A and the previous chain point, turns by the
    bend angle (f/2 for elliptic, its reflex complement for hyperbolic,
    keeping the chain on one side of AB), and closes with |AB|. The p pocket
    triangles are added for an elliptic chain and subtracted for a
    hyperbolic one.
    """
    p = len(chain.f)
    len_a = chain.c[0]
    beta = 0.0
    pockets: list[float] = []
    for i in range(p):
        # Pocket-triangle angle at the crossing: f/2 folded into (0, pi].
        # cos(f/2) == cos(2*pi - f/2), so the reflex branch (full angles
        # above 2*pi) yields the same law-of-cosines values.
        half = chain.f[i] / 2.0
        bend = half if half <= math.pi else 2.0 * math.pi - half
        gamma = bend - beta
        if not (0.0 < gamma <= math.pi + TOL_ANGLE):
            raise ChainInconsistent(
                f"crossing {i}: turn angle {gamma} leaves the chain's side"
            )
        c_next = chain.c[i + 1]
        new_len = math.sqrt(
            len_a * len_a + c_next * c_next - 2.0 * len_a * c_next * math.cos(gamma)
        )
        if new_len <= 0.0:
            raise ChainInconsistent(f"crossing {i}: chain folds back onto A")
        pockets.append(_heron(len_a, c_next, new_len))
        cos_beta = (c_next * c_next + new_len * new_len - len_a * len_a) / (
            2.0 * c_next * new_len
        )
        beta = math.acos(min(1.0, max(-1.0, cos_beta)))
        len_a = new_len

    ab = len_a
    try:
        main = _heron(chain.a, chain.b, ab)
    except DegenerateTriangle as exc:
        raise ChainInconsistent(
            f"derived |AB|={ab} violates the triangle inequality with a, b"
        ) from exc
    if chain.kind is ChainKind.ELLIPTIC:
        return main + sum(pockets)
    area = main - sum(pockets)
    if area < -_HERON_SLACK:
        raise NegativeArea(f"hyperbolic pockets exceed the closing triangle: {area}")
    return max(area, 0.0)


def triangle_area_one_point(
    a: float, b: float, c: float, d: float, f: float, kind: ChainKind
) -> float:
    """Single-crossing specialization; identical arithmetic to chain_area."""
    return chain_area(SideChain(a, b, (c, d), (f,), kind))


# --- m-circles ----------------------------------------------------------------


@dataclass(frozen=True)
class MCircleQuery:
    center: geom.Point
    radius: float
    resolution: int = 256

    def __post_init__(self) -> None:
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.resolution <= 0:
            raise ValueError("resolution must be positive")


@dataclass(frozen=True)
class MCircleResult:
    exists: bool
    reason: str
    witness_epsilon: float | None = None
    witness_point: geom.Point | None = None
    witness_class: PointClass | None = field(default=None)

    def __bool__(self) -> bool:
        return self.exists


def _circle_segment_hits(
    center: geom.Point, radius: float, a: geom.Point, b: geom.Point
) -> list[float]:
    """Segment parameters s in [0, 1] where |a + s(b-a) - center| = radius."""
    d = geom.sub(b, a)
    m = geom.sub(a, center)
    qa = geom.dot(d, d)
    qb = 2.0 * geom.dot(m, d)
    qc = geom.dot(m, m) - radius * radius
    disc = qb * qb - 4.0 * qa * qc
    if disc < 0.0 or qa == 0.0:
        return []
    root = math.sqrt(disc)
    out = []
    for s in ((-qb - root) / (2.0 * qa), (-qb + root) / (2.0 * qa)):
        if -1e-12 <= s <= 1.0 + 1e-12:
            out.append(min(1.0, max(0.0, s)))
    return out


def mcircle_exists(pmap: PlanarMap, query: MCircleQuery) -> MCircleResult:
    """Decide whether a circle of the queried radius exists around the center.

    A center in a non-outer face always admits one. A center in the outer
    face is swept with euclidean probe circles of radius eps (geometric grid
    in (0, r), parameterized counterclockwise from angle 0): the first and
    last intersection points with the map must be euclidean for every eps.
    Any non-euclidean vertex closer than r also blocks existence.
    """
    center, r = query.center, query.radius
    if not pmap.edges:
        return MCircleResult(True, "empty map")
    for e in pmap.edges:
        a, b = pmap.edge_points(e.endpoints)
        if geom.point_segment_distance(center, a, b) <= 1e-9:
            raise CenterOnEdge(f"center lies on edge {e.endpoints}")

    face = locate_face(pmap, center)
    if face != pmap.outer_face:
        return MCircleResult(True, f"center in non-outer face {face}")

    for vid in pmap.vertices:
        if classify_vertex(pmap, vid) is not PointClass.EUCLIDEAN:
            if geom.dist(center, pmap.vertex(vid).position) < r:
                return MCircleResult(
                    False,
                    f"non-euclidean vertex {vid} within radius",
                    witness_point=pmap.vertex(vid).position,
                    witness_class=classify_vertex(pmap, vid),
                )

    n = query.resolution
    lo, hi = math.log(1e-3), math.log(1.0 - 1e-9)
    for k in range(n):
        eps = r * math.exp(lo + (hi - lo) * k / (n - 1)) if n > 1 else 0.5 * r
        hits: list[tuple[float, tuple[int, int], float, geom.Point]] = []
        for e in pmap.edges:
            a, b = pmap.edge_points(e.endpoints)
            for s in _circle_segment_hits(center, eps, a, b):
                pt = geom.add(a, geom.scale(geom.sub(b, a), s))
                theta = math.atan2(pt[1] - center[1], pt[0] - center[0]) % (
                    2.0 * math.pi
                )
                hits.append((theta, e.endpoints, s * pmap.edge(e.endpoints).length, pt))
        if not hits:
            continue
        hits.sort(key=lambda h: h[0])
        for theta, endpoints, arc_x, pt in (hits[0], hits[-1]):
            cls = _classify_map_point(pmap, endpoints, arc_x, pt)
            if cls is not PointClass.EUCLIDEAN:
                return MCircleResult(
                    False,
                    "non-euclidean sweep intersection",
                    witness_epsilon=eps,
                    witness_point=pt,
                    witness_class=cls,
                )
    return MCircleResult(True, "all sweep intersections euclidean")


def _classify_map_point(
    pmap: PlanarMap, endpoints: tuple[int, int], arc_x: float, pt: geom.Point
) -> PointClass:
    for vid in endpoints:
        if geom.dist(pt, pmap.vertex(vid).position) <= 1e-9:
            return classify_vertex(pmap, vid)
    return classify_edge_point(pmap, endpoints, arc_x)


@dataclass(frozen=True)
class MCircleEquation:
    """Polar descriptor of a circle around its own center: rho = r."""

    center: geom.Point
    radius: float

    def rho(self, theta: float) -> float:
        return self.radius


def mcircle_equation(center: geom.Point, r: float) -> MCircleEquation:
    if r <= 0:
        raise ValueError("radius must be positive")
    return MCircleEquation(center, r)
