"""Angle functions along edges, m-line tracing and discrete curvature.

An m-line is straight inside every face and, when it crosses an edge at a
point presenting angle f, continues with its direction rotated
counterclockwise by (pi - f). Crossing a vertex uses the vertex half-angle
valency*mu/2. Open traces are extended backward through the start point so
the result represents the full line, not just the forward ray; the backward
march applies the inverse rotation, which makes the two directions agree on
the same geometry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from . import geom
from .errors import (
    EmptyList,
    OutOfRange,
    StartOnEdge,
    ValueOutOfRange,
    ZeroDirection,
)
from .map_core import TOL_ANGLE, PlanarMap, edge_half_angles

Dart = tuple[int, int]


@dataclass(frozen=True)
class LinearAngleFunction:
    """Linear interpolation of the half-angle between two edge endpoints:
    f(0) = f_start, f(length) = f_end."""

    f_start: float
    f_end: float
    length: float

    def value(self, x: float) -> float:
        if not (-TOL_ANGLE <= x <= self.length + TOL_ANGLE):
            raise OutOfRange(f"arc position {x} outside [0, {self.length}]")
        t = min(1.0, max(0.0, x / self.length))
        return (1.0 - t) * self.f_start + t * self.f_end

    def slope(self) -> float:
        return (self.f_end - self.f_start) / self.length


def angle_function(pmap: PlanarMap, endpoints: tuple[int, int]) -> LinearAngleFunction:
    f0, f1, d = edge_half_angles(pmap, endpoints)
    return LinearAngleFunction(f0, f1, d)


def angle_at(fn: LinearAngleFunction, x: float) -> float:
    return fn.value(x)


class TraceClass(Enum):
    CLOSED_SIMPLE = "closed-simple"
    CLOSED_SELF_INTERSECTING = "closed-self-intersecting"
    OPEN_SIMPLE = "open-simple"
    OPEN_SELF_INTERSECTING = "open-self-intersecting"
    TERMINATED_AT_BOUNDARY = "terminated-at-boundary"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class CrossingEvent:
    point: geom.Point
    edge: tuple[int, int] | None
    vertex: int | None
    x: float
    f_value: float
    sign: int
    turn: float


@dataclass
class TraceConfig:
    max_crossings: int = 10_000
    tol_hit: float = 1e-9
    tol_close: float = 1e-6
    extend_backward: bool = True
    escape_length: float | None = None  # cap for stored open end legs


@dataclass(frozen=True)
class TraceResult:
    segments: tuple[tuple[geom.Point, geom.Point], ...]
    crossings: tuple[CrossingEvent, ...]
    classification: TraceClass
    total_length: float
    open_end_directions: tuple[geom.Point, ...] = field(default=())


def _sign_of(f: float) -> int:
    if f < math.pi - TOL_ANGLE:
        return 1
    if f > math.pi + TOL_ANGLE:
        return -1
    return 0


def _make_event(
    point: geom.Point,
    edge: tuple[int, int] | None,
    vertex: int | None,
    x: float,
    f: float,
) -> CrossingEvent:
    return CrossingEvent(point, edge, vertex, x, f, _sign_of(f), math.pi - f)


def _flip_event(ev: CrossingEvent) -> CrossingEvent:
    """Same crossing presented from the opposite traversal: the angle seen
    on the other side of the line is 2*pi - f."""
    f = 2.0 * math.pi - ev.f_value
    return CrossingEvent(ev.point, ev.edge, ev.vertex, ev.x, f, _sign_of(f), math.pi - f)


def _next_crossing(
    pmap: PlanarMap, origin: geom.Point, direction: geom.Point, min_t: float
) -> tuple[float, tuple[int, int], float] | None:
    """Nearest edge hit along the ray: (t, edge endpoints, arc position)."""
    best: tuple[float, tuple[int, int], float] | None = None
    for e in pmap.edges:
        a, b = pmap.edge_points(e.endpoints)
        hit = geom.ray_segment_intersection(origin, direction, a, b, min_t=min_t)
        if hit is None:
            continue
        t, s = hit
        if best is None or t < best[0]:
            best = (t, e.endpoints, s * e.length)
    return best


def _march(
    pmap: PlanarMap,
    start: geom.Point,
    direction: geom.Point,
    cfg: TraceConfig,
    turn_sign: float,
    check_closure: bool,
):
    """One-directional march. Returns (points, events, status, exit_dir).

    status: 'escaped' | 'closed' | 'boundary' | 'budget'. ``points`` are the
    polyline vertices after ``start`` (crossing points, plus the closing
    start point for closed traces).
    """
    pos = start
    d = direction
    points: list[geom.Point] = []
    events: list[CrossingEvent] = []
    min_t = 1e-9
    while True:
        hit = _next_crossing(pmap, pos, d, min_t)
        if check_closure and events:
            t_close = _passes_through(pos, d, start, cfg.tol_close)
            if (
                t_close is not None
                and (hit is None or t_close <= hit[0] + cfg.tol_close)
                and _same_direction(d, direction, cfg.tol_close)
            ):
                points.append(start)
                return points, events, "closed", d
        if hit is None:
            return points, events, "escaped", d
        if len(events) >= cfg.max_crossings:
            return points, events, "budget", d
        t, endpoints, arc_x = hit
        point = geom.add(pos, geom.scale(d, t))

        vertex_id = None
        u, v = endpoints
        pu = pmap.vertex(u).position
        pv = pmap.vertex(v).position
        if geom.dist(point, pu) <= cfg.tol_hit:
            vertex_id = u
        elif geom.dist(point, pv) <= cfg.tol_hit:
            vertex_id = v
        if vertex_id is not None:
            f = pmap.vertex_angle(vertex_id) / 2.0
            events.append(_make_event(point, None, vertex_id, arc_x, f))
        else:
            fn = angle_function(pmap, endpoints)
            f = fn.value(arc_x)
            events.append(_make_event(point, endpoints, None, arc_x, f))

        points.append(point)
        d = geom.rotate(d, turn_sign * (math.pi - f))

        if pmap.boundary_faces:
            entered = _entered_face(pmap, endpoints, vertex_id, point, d)
            if entered in pmap.boundary_faces:
                return points, events, "boundary", d
        pos = point


def _passes_through(
    pos: geom.Point, d: geom.Point, target: geom.Point, tol: float
) -> float | None:
    """Parameter t >= 0 where the ray pos + t*d passes within tol of target."""
    rel = geom.sub(target, pos)
    t = geom.dot(rel, d)
    if t < -tol:
        return None
    closest = geom.add(pos, geom.scale(d, max(t, 0.0)))
    if geom.dist(closest, target) <= tol:
        return max(t, 0.0)
    return None


def _same_direction(a: geom.Point, b: geom.Point, tol: float) -> bool:
    return geom.dist(a, b) <= tol


def _entered_face(
    pmap: PlanarMap,
    endpoints: tuple[int, int],
    vertex_id: int | None,
    point: geom.Point,
    outgoing: geom.Point,
) -> int:
    from .map_core import locate_face

    if vertex_id is not None:
        probe = geom.add(point, geom.scale(outgoing, 1e-7))
        return locate_face(pmap, probe)
    u, v = endpoints
    along = geom.sub(pmap.vertex(v).position, pmap.vertex(u).position)
    if geom.cross(along, outgoing) > 0.0:
        return pmap.dart_face((u, v))
    return pmap.dart_face((v, u))


def trace_mline(
    pmap: PlanarMap,
    start: geom.Point,
    direction: geom.Point,
    cfg: TraceConfig | None = None,
) -> TraceResult:
    """March an m-line through the map.

    Halts on closure (return to the start point and direction within
    tol_close), on entering a removed boundary face, on exhausting
    max_crossings, or on escaping every face; open traces are then extended
    backward from the start so the polyline covers the whole line. Stored
    end legs of open traces are capped at ``escape_length``; the true end
    directions are kept for exact self-intersection tests.
    """
    cfg = cfg or TraceConfig()
    if geom.norm(direction) == 0.0:
        raise ZeroDirection("direction must be nonzero")
    d0 = geom.unit(direction)
    for e in pmap.edges:
        a, b = pmap.edge_points(e.endpoints)
        if geom.point_segment_distance(start, a, b) <= cfg.tol_hit:
            raise StartOnEdge(f"start point lies on edge {e.endpoints}")

    escape = cfg.escape_length
    if escape is None:
        escape = max(10.0, 4.0 * pmap.extent() + 2.0 * geom.norm(start))

    fwd_pts, fwd_events, status, exit_dir = _march(
        pmap, start, d0, cfg, +1.0, check_closure=True
    )

    if status == "closed":
        chain = [start] + fwd_pts
        segments = tuple(zip(chain[:-1], chain[1:]))
        simple = _closed_simple(segments)
        cls = TraceClass.CLOSED_SIMPLE if simple else TraceClass.CLOSED_SELF_INTERSECTING
        segments, events, dirs = _normalize_orientation(
            segments, tuple(fwd_events), ()
        )
        return TraceResult(segments, events, cls, _length(segments))

    if status == "budget":
        chain = [start] + fwd_pts
        segments = tuple(zip(chain[:-1], chain[1:]))
        return TraceResult(
            segments, tuple(fwd_events), TraceClass.BUDGET_EXHAUSTED, _length(segments)
        )

    back_pts: list[geom.Point] = []
    back_events: list[CrossingEvent] = []
    back_status = "none"
    back_dir = geom.scale(d0, -1.0)
    if cfg.extend_backward:
        back_pts, back_events, back_status, back_dir = _march(
            pmap, start, geom.scale(d0, -1.0), cfg, -1.0, check_closure=False
        )

    chain = list(reversed(back_pts)) + [start] + fwd_pts
    open_dirs: list[geom.Point] = []
    head_ray = back_dir if back_status == "escaped" else None
    tail_ray = exit_dir if status == "escaped" else None
    if head_ray is not None:
        chain.insert(0, geom.add(chain[0], geom.scale(head_ray, escape)))
        open_dirs.append(head_ray)
    if tail_ray is not None:
        chain.append(geom.add(chain[-1], geom.scale(tail_ray, escape)))
        open_dirs.append(tail_ray)

    segments = tuple(zip(chain[:-1], chain[1:]))
    events = tuple(reversed(back_events)) + tuple(fwd_events)

    if status == "boundary" or back_status == "boundary":
        cls = TraceClass.TERMINATED_AT_BOUNDARY
    elif back_status == "budget":
        cls = TraceClass.BUDGET_EXHAUSTED
    else:
        simple = _open_simple(chain, head_ray, tail_ray)
        cls = TraceClass.OPEN_SIMPLE if simple else TraceClass.OPEN_SELF_INTERSECTING
        segments, events, open_dirs = _normalize_orientation(
            segments, events, tuple(open_dirs)
        )
    return TraceResult(segments, events, cls, _length(segments), tuple(open_dirs))


def _normalize_orientation(segments, events, open_dirs):
    """Present the unoriented line with nonnegative net turning.

    The closure and simplicity criteria sum interior angles of the
    traversal that curls counterclockwise; a trace that came out curling
    the other way is reported reversed, each crossing showing the angle on
    the opposite side (2*pi - f).
    """
    if sum(ev.turn for ev in events) >= -1e-12:
        return segments, events, open_dirs
    segments = tuple((b, a) for (a, b) in reversed(segments))
    events = tuple(_flip_event(ev) for ev in reversed(events))
    return segments, events, tuple(reversed(open_dirs))


def _length(segments: tuple[tuple[geom.Point, geom.Point], ...]) -> float:
    return sum(geom.dist(a, b) for a, b in segments)


def _closed_simple(segments) -> bool:
    n = len(segments)
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if geom.segments_properly_intersect(*segments[i], *segments[j]):
                return False
    return True


def _open_simple(chain, head_dir, tail_dir) -> bool:
    """Self-intersection test on the inner polyline plus true end rays.

    ``chain`` includes capped escape points; the inner polyline runs between
    the first and last crossing, and the end legs are retested as unbounded
    rays so long-range crossings are not missed by the cap.
    """
    lo = 1 if head_dir is not None else 0
    hi = len(chain) - 1 if tail_dir is not None else len(chain)
    pts = chain[lo:hi]
    segs = list(zip(pts[:-1], pts[1:]))
    n = len(segs)
    for i in range(n):
        for j in range(i + 2, n):
            if geom.segments_properly_intersect(*segs[i], *segs[j]):
                return False
    head_origin = pts[0] if pts else chain[0]
    tail_origin = pts[-1] if pts else chain[-1]
    if head_dir is not None:
        for k, s in enumerate(segs):
            if k == 0:
                continue
            if geom.ray_segment_properly_intersect(head_origin, head_dir, *s):
                return False
    if tail_dir is not None:
        for k, s in enumerate(segs):
            if k == n - 1:
                continue
            if geom.ray_segment_properly_intersect(tail_origin, tail_dir, *s):
                return False
    if head_dir is not None and tail_dir is not None:
        if geom.ray_ray_properly_intersect(head_origin, head_dir, tail_origin, tail_dir):
            return False
    return True


# --- classification prediction ---------------------------------------------


@dataclass(frozen=True)
class PredictedClass:
    kind: TraceClass
    self_intersections: int = 0


def predict_class(f_values: list[float], tol: float = TOL_ANGLE) -> PredictedClass:
    """Predict the trace class from crossing angle values alone.

    Simply closed when the sum equals (n-2)*pi; open and simple when the sum
    is at least (n-1)*pi; otherwise every start index admitting a window of
    consecutive values whose sum lies strictly inside ((s-2)*pi, (s-1)*pi)
    is counted as one predicted self-intersection.
    """
    n = len(f_values)
    if n == 0:
        raise EmptyList("need at least one crossing value")
    for f in f_values:
        if not (0.0 < f < 2.0 * math.pi):
            raise ValueOutOfRange(f"angle value {f} outside (0, 2*pi)")
    total = sum(f_values)
    if abs(total - (n - 2) * math.pi) <= tol * n:
        return PredictedClass(TraceClass.CLOSED_SIMPLE)
    if total >= (n - 1) * math.pi - tol * n:
        return PredictedClass(TraceClass.OPEN_SIMPLE)
    count = 0
    for i in range(n):
        partial = 0.0
        for s in range(1, n - i + 1):
            partial += f_values[i + s - 1]
            if (s - 2) * math.pi + tol < partial < (s - 1) * math.pi - tol:
                count += 1
                break
    return PredictedClass(TraceClass.OPEN_SELF_INTERSECTING, count)


def window_margin(f_values: list[float]) -> float:
    """Smallest distance of any window sum (and the total-sum tests) to a
    theorem boundary; used to filter marginal cases in agreement tests."""
    n = len(f_values)
    best = float("inf")
    total = sum(f_values)
    best = min(best, abs(total - (n - 2) * math.pi))
    best = min(best, abs(total - (n - 1) * math.pi))
    for i in range(n):
        partial = 0.0
        for s in range(1, n - i + 1):
            partial += f_values[i + s - 1]
            best = min(
                best,
                abs(partial - (s - 2) * math.pi),
                abs(partial - (s - 1) * math.pi),
            )
    return best


# --- curvature ---------------------------------------------------------------


def curvature(trace: TraceResult) -> float:
    """Sum of turning angles (pi - f) over the non-euclidean crossings."""
    return sum(ev.turn for ev in trace.crossings if ev.sign != 0)


def curvature_integral(f_start: float, f_end: float, length: float, steps: int) -> float:
    """Trapezoid quadrature of (pi - f) along a linear angle function."""
    if steps < 1:
        raise OutOfRange("steps must be >= 1")
    h = length / steps
    fn = LinearAngleFunction(f_start, f_end, length)
    total = 0.5 * (math.pi - fn.value(0.0)) + 0.5 * (math.pi - fn.value(length))
    for i in range(1, steps):
        total += math.pi - fn.value(i * h)
    return total * h


def edge_curvature(pmap: PlanarMap, endpoints: tuple[int, int], steps: int = 64) -> float:
    f0, f1, d = edge_half_angles(pmap, endpoints)
    return curvature_integral(f0, f1, d, steps)


@dataclass(frozen=True)
class CurvatureReport:
    """Both sides of the total-curvature identity, reported without judgment:
    ``computed`` integrates (pi - f) over both directions of every edge,
    ``claimed`` is 2*pi times the total edge length."""

    computed: float
    claimed: float

    @property
    def difference(self) -> float:
        return self.computed - self.claimed


def map_total_curvature(pmap: PlanarMap, steps: int = 64) -> CurvatureReport:
    per_direction = sum(
        edge_curvature(pmap, e.endpoints, steps) for e in pmap.edges
    )
    computed = 2.0 * per_direction
    claimed = 2.0 * math.pi * pmap.total_edge_length()
    return CurvatureReport(computed=computed, claimed=claimed)
