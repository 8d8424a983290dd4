"""Small 2D geometry kernel: vectors as plain (x, y) tuples.

All predicates take explicit tolerances; callers own the epsilon policy.
"""

from __future__ import annotations

import math

Point = tuple[float, float]


def sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def add(a: Point, b: Point) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def scale(a: Point, k: float) -> Point:
    return (a[0] * k, a[1] * k)


def dot(a: Point, b: Point) -> float:
    return a[0] * b[0] + a[1] * b[1]


def cross(a: Point, b: Point) -> float:
    return a[0] * b[1] - a[1] * b[0]


def norm(a: Point) -> float:
    return math.hypot(a[0], a[1])


def dist(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def unit(a: Point) -> Point:
    n = norm(a)
    if n == 0.0:
        raise ValueError("cannot normalize a zero vector")
    return (a[0] / n, a[1] / n)


def rotate(d: Point, angle: float) -> Point:
    c, s = math.cos(angle), math.sin(angle)
    return (d[0] * c - d[1] * s, d[0] * s + d[1] * c)


def angle_of(d: Point) -> float:
    return math.atan2(d[1], d[0])


def point_segment_distance(p: Point, a: Point, b: Point) -> float:
    ab = sub(b, a)
    denom = dot(ab, ab)
    if denom == 0.0:
        return dist(p, a)
    t = dot(sub(p, a), ab) / denom
    t = min(1.0, max(0.0, t))
    return dist(p, add(a, scale(ab, t)))


def segments_properly_intersect(
    a: Point, b: Point, c: Point, d: Point, eps: float = 1e-12
) -> bool:
    """True if open segment interiors share a point (collinear overlap excluded).

    Touching at an endpoint of either segment does not count; a transversal
    crossing through an endpoint of exactly one segment does.
    """
    r = sub(b, a)
    s = sub(d, c)
    denom = cross(r, s)
    qp = sub(c, a)
    if abs(denom) <= eps * max(norm(r) * norm(s), 1.0):
        return False
    t = cross(qp, s) / denom
    u = cross(qp, r) / denom
    lo_t = eps / max(norm(r), eps)
    lo_u = eps / max(norm(s), eps)
    return lo_t < t < 1.0 - lo_t and lo_u < u < 1.0 - lo_u


def segments_conflict(
    a: Point, b: Point, c: Point, d: Point, eps: float = 1e-9
) -> bool:
    """Planarity check: any contact other than a shared endpoint is a conflict.

    Includes transversal crossings, T-junctions (an endpoint interior to the
    other segment) and collinear overlap.
    """
    shared_ac = dist(a, c) <= eps
    shared_ad = dist(a, d) <= eps
    shared_bc = dist(b, c) <= eps
    shared_bd = dist(b, d) <= eps

    r = sub(b, a)
    s = sub(d, c)
    denom = cross(r, s)
    if abs(denom) <= eps * max(norm(r) * norm(s), 1.0):
        # Parallel: conflict only on collinear overlap beyond a shared point.
        if point_segment_distance(a, c, d) > eps and point_segment_distance(
            b, c, d
        ) > eps and point_segment_distance(c, a, b) > eps and point_segment_distance(
            d, a, b
        ) > eps:
            return False
        overlap = 0
        for p, excl in ((a, shared_ac or shared_ad), (b, shared_bc or shared_bd)):
            if not excl and point_segment_distance(p, c, d) <= eps:
                overlap += 1
        for p, excl in ((c, shared_ac or shared_bc), (d, shared_ad or shared_bd)):
            if not excl and point_segment_distance(p, a, b) <= eps:
                overlap += 1
        return overlap > 0

    qp = sub(c, a)
    t = cross(qp, s) / denom
    u = cross(qp, r) / denom
    tol_t = eps / max(norm(r), eps)
    tol_u = eps / max(norm(s), eps)
    if -tol_t <= t <= 1.0 + tol_t and -tol_u <= u <= 1.0 + tol_u:
        hit = add(a, scale(r, t))
        for p in (a, b):
            if dist(hit, p) <= eps:
                return not (dist(hit, c) <= eps or dist(hit, d) <= eps)
        for p in (c, d):
            if dist(hit, p) <= eps:
                return True
        return True
    return False


def ray_segment_intersection(
    origin: Point, direction: Point, a: Point, b: Point, min_t: float = 0.0
) -> tuple[float, float] | None:
    """Return (t, s) with origin + t*direction == a + s*(b-a), or None.

    Requires t >= min_t and s in [0, 1]; parallel configurations return None.
    """
    r = direction
    s_vec = sub(b, a)
    denom = cross(r, s_vec)
    if abs(denom) <= 1e-15 * max(norm(s_vec), 1.0):
        return None
    qp = sub(a, origin)
    t = cross(qp, s_vec) / denom
    s = cross(qp, r) / denom
    if t >= min_t and -1e-12 <= s <= 1.0 + 1e-12:
        return (t, min(1.0, max(0.0, s)))
    return None


def ray_ray_properly_intersect(
    o1: Point, d1: Point, o2: Point, d2: Point, eps: float = 1e-12
) -> bool:
    """True if the two open rays share a point at positive parameters."""
    denom = cross(d1, d2)
    if abs(denom) <= eps:
        return False
    qp = sub(o2, o1)
    t = cross(qp, d2) / denom
    u = cross(qp, d1) / denom
    return t > eps and u > eps


def ray_segment_properly_intersect(
    origin: Point, direction: Point, a: Point, b: Point, eps: float = 1e-12
) -> bool:
    hit = ray_segment_intersection(origin, direction, a, b, min_t=eps)
    if hit is None:
        return False
    t, s = hit
    lo = eps / max(norm(sub(b, a)), eps)
    return lo < s < 1.0 - lo and t > eps


def polygon_signed_area(points: list[Point]) -> float:
    total = 0.0
    n = len(points)
    for i in range(n):
        x0, y0 = points[i]
        x1, y1 = points[(i + 1) % n]
        total += x0 * y1 - x1 * y0
    return 0.5 * total


def point_in_closed_walk(p: Point, walk: list[Point]) -> bool:
    """Crossing-parity test; valid for non-simple closed walks too."""
    x, y = p
    inside = False
    n = len(walk)
    for i in range(n):
        x0, y0 = walk[i]
        x1, y1 = walk[(i + 1) % n]
        if (y0 > y) != (y1 > y):
            x_int = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
            if x_int > x:
                inside = not inside
    return inside


def clip_segment_to_rect(
    a: Point, b: Point, xmin: float, ymin: float, xmax: float, ymax: float
) -> tuple[Point, Point] | None:
    """Liang-Barsky clipping; returns the clipped segment or None."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    t0, t1 = 0.0, 1.0
    for p, q in (
        (-dx, a[0] - xmin),
        (dx, xmax - a[0]),
        (-dy, a[1] - ymin),
        (dy, ymax - a[1]),
    ):
        if p == 0.0:
            if q < 0.0:
                return None
            continue
        r = q / p
        if p < 0.0:
            if r > t1:
                return None
            t0 = max(t0, r)
        else:
            if r < t0:
                return None
            t1 = min(t1, r)
    return (
        (a[0] + t0 * dx, a[1] + t0 * dy),
        (a[0] + t1 * dx, a[1] + t1 * dy),
    )
