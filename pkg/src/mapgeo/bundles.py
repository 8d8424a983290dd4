"""Parallel-bundle conditions for cuts, with a ray-tracing oracle.

A cut is an ordered list of edges a family of parallel m-lines passes
through one after another. The family stays a bundle (no two members ever
meet) exactly when every prefix sum of the angle-function derivatives is
nonnegative; leaving parallel additionally needs the total derivative sum to
vanish, and returning parallel to the *initial* direction needs the angle
values to sum to l*pi.

The source material decorates these sums with a pointwise sign function, but
evaluates all of its own specializations unsigned; the spec's worked
examples do the same, so the conditions here are the unsigned ones.

The common parameter x lives on [0, d_1] of the first edge and transfers to
edge i at the proportional position x * d_i / d_1; derivatives are taken in
each edge's own arc length, which reproduces the linear inequality system
with the 1/d_i weights exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from . import geom
from .errors import EmptyCut, NonlinearFunction, UnknownEdge
from .map_core import PlanarMap
from .mline import LinearAngleFunction

_GRID = 128
_TOL = 1e-9

AngleFn = LinearAngleFunction | Callable[[float], float]


@dataclass(frozen=True)
class Cut:
    """Ordered left-to-right edges with their angle functions and lengths."""

    functions: tuple[AngleFn, ...]
    lengths: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.functions) == 0:
            raise EmptyCut("a cut needs at least one edge")
        if len(self.functions) != len(self.lengths):
            raise EmptyCut("one length per angle function required")
        if any(d <= 0 for d in self.lengths):
            raise EmptyCut("edge lengths must be positive")

    @property
    def size(self) -> int:
        return len(self.functions)

    def is_linear(self) -> bool:
        return all(isinstance(f, LinearAngleFunction) for f in self.functions)

    def value(self, i: int, x_own: float) -> float:
        f = self.functions[i]
        if isinstance(f, LinearAngleFunction):
            return f.value(x_own)
        return f(x_own)

    def derivative(self, i: int, x_own: float) -> float:
        """One-sided (forward) derivative in edge i's own arc length."""
        f = self.functions[i]
        if isinstance(f, LinearAngleFunction):
            return f.slope()
        h = self.lengths[i] / (4 * _GRID)
        if x_own + h > self.lengths[i]:
            x_own = self.lengths[i] - h
        return (self.value(i, x_own + h) - self.value(i, x_own)) / h


def cut_from_map(
    pmap: PlanarMap, edges: Sequence[tuple[int, int]], require_cut: bool = True
) -> Cut:
    """Build a Cut from map edges (linear angle functions from vertex data).

    With ``require_cut`` the edge set must disconnect the map when removed.
    """
    fns = []
    lengths = []
    for endpoints in edges:
        from .map_core import edge_half_angles

        f0, f1, d = edge_half_angles(pmap, endpoints)
        fns.append(LinearAngleFunction(f0, f1, d))
        lengths.append(d)
    if require_cut and not _disconnects(pmap, edges):
        raise UnknownEdge("edge set is not a cut of the map")
    return Cut(tuple(fns), tuple(lengths))


def _disconnects(pmap: PlanarMap, removed: Sequence[tuple[int, int]]) -> bool:
    removed_keys = {frozenset(e) for e in removed}
    adjacency: dict[int, list[int]] = {vid: [] for vid in pmap.vertices}
    for e in pmap.edges:
        if frozenset(e.endpoints) in removed_keys:
            continue
        u, v = e.endpoints
        adjacency[u].append(v)
        adjacency[v].append(u)
    start = next(iter(adjacency))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adjacency[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) != len(adjacency)


def _grid_positions(cut: Cut) -> list[float]:
    d1 = cut.lengths[0]
    return [d1 * k / (_GRID - 1) for k in range(_GRID)]


def _own_position(cut: Cut, i: int, x_common: float) -> float:
    return x_common * cut.lengths[i] / cut.lengths[0]


@dataclass(frozen=True)
class BundleVerdict:
    ok: bool
    violated_prefix: int | None = None  # 1-based prefix length k
    violated_x: float | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_parallel_bundle(cut: Cut, x_domain: tuple[float, float] | None = None) -> BundleVerdict:
    """All derivative prefix sums nonnegative across the domain.

    Linear cuts are decided exactly (the prefix sums are constants); sampled
    or callable functions are checked on a uniform grid with forward
    differences. Returns the first violated (k, x) when the answer is no.
    """
    if cut.is_linear():
        running = 0.0
        for k in range(cut.size):
            running += cut.derivative(k, 0.0)
            if running < -_TOL:
                return BundleVerdict(False, violated_prefix=k + 1, violated_x=0.0)
        return BundleVerdict(True)

    lo, hi = x_domain if x_domain is not None else (0.0, cut.lengths[0])
    for x in _grid_positions(cut):
        if not (lo <= x <= hi):
            continue
        running = 0.0
        for k in range(cut.size):
            running += cut.derivative(k, _own_position(cut, k, x))
            if running < -_TOL:
                return BundleVerdict(False, violated_prefix=k + 1, violated_x=x)
    return BundleVerdict(True)


def exits_parallel(cut: Cut) -> bool:
    """Bundle prefixes for k < l plus a vanishing total derivative sum: the
    family leaves the cut mutually parallel (not necessarily at the original
    direction)."""
    if cut.is_linear():
        running = 0.0
        for k in range(cut.size - 1):
            running += cut.derivative(k, 0.0)
            if running < -_TOL:
                return False
        total = running + cut.derivative(cut.size - 1, 0.0)
        return abs(total) <= _TOL

    for x in _grid_positions(cut):
        running = 0.0
        for k in range(cut.size - 1):
            running += cut.derivative(k, _own_position(cut, k, x))
            if running < -_TOL:
                return False
        total = running + cut.derivative(cut.size - 1, _own_position(cut, cut.size - 1, x))
        if abs(total) > 1e-6:
            return False
    return True


def parallel_to_initial(cut: Cut, x: float) -> bool:
    """Exit direction equals the entry direction at common position x: the
    strict prefixes must be bundle-feasible and the angle values at x must
    sum to l*pi."""
    if cut.is_linear():
        running = 0.0
        for k in range(cut.size - 1):
            running += cut.derivative(k, 0.0)
            if running < -_TOL:
                return False
    else:
        verdict = is_parallel_bundle(cut)
        if not verdict.ok:
            return False
    total = sum(
        cut.value(i, _own_position(cut, i, x)) for i in range(cut.size)
    )
    return abs(total - cut.size * math.pi) <= cut.size * 1e-9


def linear_bundle_check(cut: Cut) -> bool:
    """The linear inequality system: prefix sums of
    (f_end - f_start) / d  nonnegative for every prefix."""
    if not cut.is_linear():
        raise NonlinearFunction("linear_bundle_check requires linear angle functions")
    running = 0.0
    for f in cut.functions:
        running += f.slope()
        if running < -_TOL:
            return False
    return True


def sufficient_per_edge(cut: Cut) -> bool:
    """Per-edge sufficient condition: every edge individually nondecreasing
    (f at the right end at least f at the left end). Implies the full
    prefix system."""
    for i, f in enumerate(cut.functions):
        if isinstance(f, LinearAngleFunction):
            if f.f_end < f.f_start - _TOL:
                return False
        else:
            if cut.value(i, cut.lengths[i]) < cut.value(i, 0.0) - _TOL:
                return False
    return True


# --- ray-tracing oracle ---------------------------------------------------


@dataclass(frozen=True)
class _TracedRay:
    """Stage s starts at points[s] with direction dirs[s]; stage 0 is the
    entry leg, stage k > 0 the leg after crossing edge k."""

    points: tuple[geom.Point, ...]
    dirs: tuple[geom.Point, ...]


def simulate_bundle(
    cut: Cut,
    ray_count: int = 8,
    spacing: float | None = None,
    pmap: PlanarMap | None = None,
    edges: Sequence[tuple[int, int]] | None = None,
) -> bool:
    """Trace parallel m-lines through the cut; True when no two ever meet.

    Without a map the cut is laid out synthetically: edge i as a horizontal
    rung of length d_i, rungs center-aligned and stacked with small gaps,
    rays vertical from below in a tight cluster around mid-span. A bundle
    must stay disjoint no matter how far the lines run between and after
    the edges, so each stage leg is compared as an unbounded ray, not just
    up to the next rung.
    """
    if spacing is None:
        spacing = 1e-3 * cut.lengths[0] / max(ray_count, 1)
    rays = _trace_rays(cut, ray_count, spacing, pmap, edges)
    for i in range(len(rays)):
        for j in range(i + 1, len(rays)):
            if _rays_meet(rays[i], rays[j]):
                return False
    return True


def _trace_rays(
    cut: Cut,
    ray_count: int,
    spacing: float,
    pmap: PlanarMap | None,
    edges: Sequence[tuple[int, int]] | None,
) -> list[_TracedRay]:
    if pmap is not None and edges is not None:
        segs = [pmap.edge_points(e) for e in edges]
        a0, b0 = segs[0]
        along = geom.unit(geom.sub(b0, a0))
        direction0 = (-along[1], along[0])
    else:
        gap = 0.05 * min(cut.lengths)
        width = cut.lengths[0]
        segs = []
        for i in range(cut.size):
            off = 0.5 * (width - cut.lengths[i])
            y = (i + 1) * gap
            segs.append(((off, y), (off + cut.lengths[i], y)))
        direction0 = (0.0, 1.0)

    rays = []
    for r in range(ray_count):
        offset = (r - 0.5 * (ray_count - 1)) * spacing
        if pmap is not None and edges is not None:
            a0, b0 = segs[0]
            mid = geom.add(a0, geom.scale(geom.sub(b0, a0), 0.5))
            along = geom.unit(geom.sub(b0, a0))
            start = geom.sub(geom.add(mid, geom.scale(along, offset)), direction0)
        else:
            start = (0.5 * cut.lengths[0] + offset, 0.0)
        rays.append(_trace_one(cut, segs, start, direction0))
    return rays


def _trace_one(cut, segs, start, direction) -> _TracedRay:
    pos = start
    d = direction
    points = [start]
    dirs = [direction]
    for i, (a, b) in enumerate(segs):
        hit = geom.ray_segment_intersection(pos, d, a, b, min_t=1e-12)
        if hit is None:
            break
        t, s = hit
        pos = geom.add(pos, geom.scale(d, t))
        x_own = s * cut.lengths[i]
        f = cut.value(i, x_own)
        d = geom.rotate(d, math.pi - f)
        points.append(pos)
        dirs.append(d)
    return _TracedRay(tuple(points), tuple(dirs))


def _rays_meet(r1: _TracedRay, r2: _TracedRay) -> bool:
    """Stage-by-stage forward intersection: at each stage both legs are
    extended as rays, the region between consecutive cut edges being
    unbounded as far as bundle membership is concerned."""
    for (p1, d1), (p2, d2) in zip(
        zip(r1.points, r1.dirs), zip(r2.points, r2.dirs)
    ):
        if geom.ray_ray_properly_intersect(p1, d1, p2, d2):
            return True
    return False
