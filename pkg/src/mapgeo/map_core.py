"""Straight-line planar maps with per-vertex angle factors.

A map couples a straight-line plane drawing with an angle factor mu at each
vertex; the product valency(u) * mu(u) replaces the flat 2*pi of angle around
u. Everything downstream (point/edge classification, tracing, bundles) reads
that product, so this module owns construction, validation and the derived
combinatorics: rotation system, face tracing and face removal.

Maps are immutable once built; every operation here is a pure read.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import geom
from .errors import (
    AllFacesRemoved,
    DisconnectedMap,
    Disconnects,
    DuplicateEdge,
    EdgeCrossing,
    LowValency,
    MapSyntaxError,
    MuOutOfRange,
    OutOfRange,
    UnknownEdge,
    UnknownVertex,
)

TOL_ANGLE = 1e-9

Dart = tuple[int, int]


class PointClass(Enum):
    ELLIPTIC = "elliptic"
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"


class EdgeClass(Enum):
    """The six edge classes, keyed by the unordered endpoint classes."""

    CE1 = "euclidean-elliptic"
    CE2 = "euclidean-euclidean"
    CE3 = "euclidean-hyperbolic"
    CE4 = "elliptic-elliptic"
    CE5 = "elliptic-hyperbolic"
    CE6 = "hyperbolic-hyperbolic"


_EDGE_CLASS_TABLE = {
    frozenset({PointClass.EUCLIDEAN, PointClass.ELLIPTIC}): EdgeClass.CE1,
    frozenset({PointClass.EUCLIDEAN}): EdgeClass.CE2,
    frozenset({PointClass.EUCLIDEAN, PointClass.HYPERBOLIC}): EdgeClass.CE3,
    frozenset({PointClass.ELLIPTIC}): EdgeClass.CE4,
    frozenset({PointClass.ELLIPTIC, PointClass.HYPERBOLIC}): EdgeClass.CE5,
    frozenset({PointClass.HYPERBOLIC}): EdgeClass.CE6,
}


@dataclass(frozen=True)
class Vertex:
    id: int
    position: geom.Point
    mu: float


@dataclass(frozen=True)
class Edge:
    endpoints: tuple[int, int]
    length: float


@dataclass(frozen=True)
class CensusReport:
    elliptic_vertices: int
    euclidean_vertices: int
    hyperbolic_vertices: int
    edge_counts: dict[EdgeClass, int]
    faces: int
    degree_identity: bool
    count_identity: bool


class PlanarMap:
    """Immutable straight-line planar map; build with :func:`build_map`."""

    def __init__(
        self,
        vertices: dict[int, Vertex],
        edges: tuple[Edge, ...],
        rotation: dict[int, tuple[Dart, ...]],
        faces: tuple[tuple[Dart, ...], ...],
        boundary_faces: frozenset[int] = frozenset(),
    ) -> None:
        self.vertices = vertices
        self.edges = edges
        self.rotation = rotation
        self.faces = faces
        self.boundary_faces = boundary_faces
        self._edge_index = {
            frozenset(e.endpoints): i for i, e in enumerate(edges)
        }
        self._dart_face: dict[Dart, int] = {}
        for fi, walk in enumerate(faces):
            for dart in walk:
                self._dart_face[dart] = fi

    # -- basic lookups -----------------------------------------------------

    @property
    def outer_face(self) -> int:
        return len(self.faces) - 1

    def vertex(self, vid: int) -> Vertex:
        try:
            return self.vertices[vid]
        except KeyError:
            raise UnknownVertex(f"no vertex {vid}") from None

    def degree(self, vid: int) -> int:
        return len(self.rotation[self.vertex(vid).id])

    def vertex_angle(self, vid: int) -> float:
        """Total angle valency(u) * mu(u) carried around vertex u."""
        v = self.vertex(vid)
        return self.degree(vid) * v.mu

    def edge(self, endpoints: tuple[int, int]) -> Edge:
        key = frozenset(endpoints)
        if key not in self._edge_index:
            raise UnknownEdge(f"no edge {endpoints}")
        return self.edges[self._edge_index[key]]

    def has_edge(self, endpoints: tuple[int, int]) -> bool:
        return frozenset(endpoints) in self._edge_index

    def edge_points(self, endpoints: tuple[int, int]) -> tuple[geom.Point, geom.Point]:
        self.edge(endpoints)
        return (
            self.vertex(endpoints[0]).position,
            self.vertex(endpoints[1]).position,
        )

    def dart_face(self, dart: Dart) -> int:
        return self._dart_face[dart]

    def face_walk_points(self, face: int) -> list[geom.Point]:
        return [self.vertex(u).position for u, _ in self.faces[face]]

    def total_edge_length(self) -> float:
        return sum(e.length for e in self.edges)

    def extent(self) -> float:
        """Diameter of the drawing's bounding box (0 for empty maps)."""
        if not self.vertices:
            return 0.0
        xs = [v.position[0] for v in self.vertices.values()]
        ys = [v.position[1] for v in self.vertices.values()]
        return math.hypot(max(xs) - min(xs), max(ys) - min(ys))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlanarMap):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and set(frozenset(e.endpoints) for e in self.edges)
            == set(frozenset(e.endpoints) for e in other.edges)
            and self.boundary_faces == other.boundary_faces
        )


# --- construction ---------------------------------------------------------


def build_map(
    vertices: list[tuple[int, geom.Point, float]],
    edges: list[tuple[int, int]],
) -> PlanarMap:
    """Validate and assemble a planar map.

    ``vertices`` are (id, (x, y), mu) triples; ``edges`` are id pairs. The
    rotation system is derived from the coordinates (counterclockwise angular
    sort at each vertex) and faces are traced from it, the outer face being
    the unique walk of negative signed area, stored last.

    The mu bound is checked as 0 < mu <= 4*pi/valency: the upper bound is
    admitted with equality because reference fixtures sit exactly on it.
    """
    vmap: dict[int, Vertex] = {}
    for vid, pos, mu in vertices:
        if vid in vmap:
            raise DuplicateEdge(f"duplicate vertex id {vid}")
        if not (math.isfinite(pos[0]) and math.isfinite(pos[1])):
            raise MuOutOfRange(f"vertex {vid}: non-finite coordinates")
        vmap[vid] = Vertex(vid, (float(pos[0]), float(pos[1])), float(mu))

    seen: set[frozenset[int]] = set()
    built: list[Edge] = []
    for u, v in edges:
        if u not in vmap or v not in vmap:
            raise UnknownVertex(f"edge ({u}, {v}) references a missing vertex")
        if u == v:
            raise DuplicateEdge(f"loop ({u}, {u}) cannot be drawn straight")
        key = frozenset((u, v))
        if key in seen:
            raise DuplicateEdge(f"edge ({u}, {v}) repeated")
        seen.add(key)
        length = geom.dist(vmap[u].position, vmap[v].position)
        if length <= 0.0:
            raise EdgeCrossing(f"edge ({u}, {v}) has coincident endpoints")
        built.append(Edge((u, v), length))

    _check_planarity(vmap, built)

    adjacency: dict[int, list[int]] = {vid: [] for vid in vmap}
    for e in built:
        u, v = e.endpoints
        adjacency[u].append(v)
        adjacency[v].append(u)

    for vid, nbrs in adjacency.items():
        if len(nbrs) < 3:
            raise LowValency(f"vertex {vid} has valency {len(nbrs)} < 3")
    for vid, vert in vmap.items():
        bound = 4.0 * math.pi / len(adjacency[vid])
        if not (0.0 < vert.mu <= bound + TOL_ANGLE):
            raise MuOutOfRange(
                f"vertex {vid}: mu={vert.mu} outside (0, {bound:.12g}]"
            )

    _check_connected(adjacency)

    rotation = {
        vid: tuple(
            (vid, w)
            for w in sorted(
                nbrs,
                key=lambda w: math.atan2(
                    vmap[w].position[1] - vmap[vid].position[1],
                    vmap[w].position[0] - vmap[vid].position[0],
                ),
            )
        )
        for vid, nbrs in adjacency.items()
    }

    faces = _trace_faces(vmap, rotation)

    nu, eps, phi = len(vmap), len(built), len(faces)
    if nu - eps + phi != 2:
        raise EdgeCrossing(
            f"Euler check failed: {nu} - {eps} + {phi} != 2 (bad embedding)"
        )
    return PlanarMap(vmap, tuple(built), rotation, faces)


def _check_planarity(vmap: dict[int, Vertex], edges: list[Edge]) -> None:
    for i in range(len(edges)):
        a = vmap[edges[i].endpoints[0]].position
        b = vmap[edges[i].endpoints[1]].position
        for j in range(i + 1, len(edges)):
            c = vmap[edges[j].endpoints[0]].position
            d = vmap[edges[j].endpoints[1]].position
            if geom.segments_conflict(a, b, c, d):
                raise EdgeCrossing(
                    f"edges {edges[i].endpoints} and {edges[j].endpoints} intersect"
                )


def _check_connected(adjacency: dict[int, list[int]]) -> None:
    if not adjacency:
        return
    start = next(iter(adjacency))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adjacency[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(adjacency):
        raise DisconnectedMap("map is not connected")


def _trace_faces(
    vmap: dict[int, Vertex], rotation: dict[int, tuple[Dart, ...]]
) -> tuple[tuple[Dart, ...], ...]:
    """Orbit tracing: after dart (u, v) continue with the dart preceding
    (v, u) in the counterclockwise rotation at v, keeping each face on the
    left of its darts. Inner faces come out counterclockwise (positive
    area), the outer face clockwise."""
    index_at: dict[Dart, int] = {}
    for darts in rotation.values():
        for i, d in enumerate(darts):
            index_at[d] = i

    def face_next(d: Dart) -> Dart:
        u, v = d
        ring = rotation[v]
        i = index_at[(v, u)]
        return ring[(i - 1) % len(ring)]

    unused = {d for darts in rotation.values() for d in darts}
    faces: list[tuple[Dart, ...]] = []
    for start in sorted(unused):
        if start not in unused:
            continue
        walk = []
        d = start
        while True:
            walk.append(d)
            unused.discard(d)
            d = face_next(d)
            if d == start:
                break
        faces.append(tuple(walk))

    outer = [
        i
        for i, walk in enumerate(faces)
        if geom.polygon_signed_area([vmap[u].position for u, _ in walk]) < 0.0
    ]
    if len(outer) != 1:
        raise EdgeCrossing("embedding does not have a unique outer face")
    ordered = [faces[i] for i in range(len(faces)) if i != outer[0]]
    ordered.append(faces[outer[0]])
    return tuple(ordered)


# --- classification -------------------------------------------------------


def classify_angle(total: float, tol: float = TOL_ANGLE) -> PointClass:
    """Trichotomy of a total surrounding angle against 2*pi."""
    if total < 2.0 * math.pi - tol:
        return PointClass.ELLIPTIC
    if total > 2.0 * math.pi + tol:
        return PointClass.HYPERBOLIC
    return PointClass.EUCLIDEAN


def classify_vertex(pmap: PlanarMap, vid: int) -> PointClass:
    return classify_angle(pmap.vertex_angle(vid))


def classify_edge(pmap: PlanarMap, endpoints: tuple[int, int]) -> EdgeClass:
    u, v = pmap.edge(endpoints).endpoints
    classes = frozenset({classify_vertex(pmap, u), classify_vertex(pmap, v)})
    return _EDGE_CLASS_TABLE[classes]


def edge_half_angles(
    pmap: PlanarMap, endpoints: tuple[int, int]
) -> tuple[float, float, float]:
    """(f at first endpoint, f at second, length) for the linear angle
    function along ``endpoints``; f interpolates valency*mu/2."""
    u, v = endpoints
    e = pmap.edge(endpoints)
    d = e.length
    return (pmap.vertex_angle(u) / 2.0, pmap.vertex_angle(v) / 2.0, d)


def classify_edge_point(
    pmap: PlanarMap, endpoints: tuple[int, int], x: float
) -> PointClass:
    """Class of the edge-interior point at arc position x from the first
    endpoint, under the default linear angle function."""
    f0, f1, d = edge_half_angles(pmap, endpoints)
    if not (-TOL_ANGLE <= x <= d + TOL_ANGLE):
        raise OutOfRange(f"arc position {x} outside [0, {d}]")
    f = (1.0 - x / d) * f0 + (x / d) * f1
    # Interior angle trichotomy is against pi (half of 2*pi).
    if f < math.pi - TOL_ANGLE:
        return PointClass.ELLIPTIC
    if f > math.pi + TOL_ANGLE:
        return PointClass.HYPERBOLIC
    return PointClass.EUCLIDEAN


def census(pmap: PlanarMap) -> CensusReport:
    """Count vertex and edge classes and verify the two structural
    identities (degree sum = 2 * edges; vertices + faces = edges + 2)."""
    by_class = {c: 0 for c in PointClass}
    degree_sum = 0
    for vid in pmap.vertices:
        by_class[classify_vertex(pmap, vid)] += 1
        degree_sum += pmap.degree(vid)
    edge_counts = {c: 0 for c in EdgeClass}
    for e in pmap.edges:
        edge_counts[classify_edge(pmap, e.endpoints)] += 1
    phi = len(pmap.faces)
    total_edges = sum(edge_counts.values())
    return CensusReport(
        elliptic_vertices=by_class[PointClass.ELLIPTIC],
        euclidean_vertices=by_class[PointClass.EUCLIDEAN],
        hyperbolic_vertices=by_class[PointClass.HYPERBOLIC],
        edge_counts=edge_counts,
        faces=phi,
        degree_identity=degree_sum == 2 * total_edges,
        count_identity=len(pmap.vertices) + phi == total_edges + 2,
    )


def has_infinite_noneuclidean(pmap: PlanarMap) -> bool:
    """True when some edge interior carries infinitely many non-euclidean
    points: either an edge with unequal endpoint angles, or all vertex
    angles equal to a constant other than 2*pi."""
    if not pmap.edges:
        return False
    for e in pmap.edges:
        u, v = e.endpoints
        if abs(pmap.vertex_angle(u) - pmap.vertex_angle(v)) > TOL_ANGLE:
            return True
    angles = [pmap.vertex_angle(vid) for vid in pmap.vertices]
    first = angles[0]
    if all(abs(a - first) <= TOL_ANGLE for a in angles):
        return abs(first - 2.0 * math.pi) > TOL_ANGLE
    return False


# --- face removal ----------------------------------------------------------


def remove_faces(pmap: PlanarMap, face_ids: list[int]) -> PlanarMap:
    """Mark faces as removed boundary; traces entering them terminate.

    The remainder must stay connected: kept faces are considered connected
    when they share at least one vertex (the point-set reading of the
    closure of what survives).
    """
    requested = set(face_ids)
    phi = len(pmap.faces)
    for fid in requested:
        if not (0 <= fid < phi):
            raise UnknownEdge(f"no face {fid}")
    removed = set(pmap.boundary_faces) | requested
    if len(removed) >= phi:
        raise AllFacesRemoved("at least one face must remain")

    kept = [i for i in range(phi) if i not in removed]
    face_vertices = [
        {u for u, _ in pmap.faces[i]} for i in range(phi)
    ]
    seen = {kept[0]}
    stack = [kept[0]]
    while stack:
        i = stack.pop()
        for j in kept:
            if j not in seen and face_vertices[i] & face_vertices[j]:
                seen.add(j)
                stack.append(j)
    if len(seen) != len(kept):
        raise Disconnects("face removal disconnects the remaining surface")

    return PlanarMap(
        pmap.vertices,
        pmap.edges,
        pmap.rotation,
        pmap.faces,
        frozenset(removed),
    )


def locate_face(pmap: PlanarMap, point: geom.Point) -> int:
    """Index of the face containing ``point`` (outer face if no inner walk
    does). Points on edges are not meaningfully located; callers guard."""
    for fi in range(len(pmap.faces) - 1):
        if geom.point_in_closed_walk(point, pmap.face_walk_points(fi)):
            return fi
    return pmap.outer_face


# --- text format ------------------------------------------------------------


def parse_map_text(text: str) -> PlanarMap:
    """Parse the line-oriented map format.

    ``v <id> <x> <y> <mu>`` declares a vertex, ``e <id1> <id2>`` a straight
    edge and ``boundary <face-index>`` removes a face (faces indexed in trace
    order, outer face last). ``#`` starts a comment.
    """
    vertices: list[tuple[int, geom.Point, float]] = []
    edges: list[tuple[int, int]] = []
    boundary: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "v" and len(parts) == 5:
                vertices.append(
                    (int(parts[1]), (float(parts[2]), float(parts[3])), float(parts[4]))
                )
            elif parts[0] == "e" and len(parts) == 3:
                edges.append((int(parts[1]), int(parts[2])))
            elif parts[0] == "boundary" and len(parts) == 2:
                boundary.append(int(parts[1]))
            else:
                raise MapSyntaxError(lineno, f"unrecognized line {line!r}")
        except ValueError as exc:
            raise MapSyntaxError(lineno, str(exc)) from None
    pmap = build_map(vertices, edges)
    if boundary:
        pmap = remove_faces(pmap, boundary)
    return pmap


def dump_map_text(pmap: PlanarMap) -> str:
    """Canonical dump; ``parse_map_text`` on the output reproduces the map."""
    lines = ["# mapgeo map file"]
    for vid in sorted(pmap.vertices):
        v = pmap.vertices[vid]
        lines.append(f"v {vid} {v.position[0]!r} {v.position[1]!r} {v.mu!r}")
    for e in sorted(pmap.edges, key=lambda e: tuple(sorted(e.endpoints))):
        u, v = sorted(e.endpoints)
        lines.append(f"e {u} {v}")
    for fid in sorted(pmap.boundary_faces):
        lines.append(f"boundary {fid}")
    return "\n".join(lines) + "\n"
