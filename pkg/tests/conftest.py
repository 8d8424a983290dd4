"""Shared fixtures and randomized-geometry generators for the test suite.

MAPGEO_SEED (env var) reseeds every randomized fixture; the default keeps
runs reproducible.
"""

from __future__ import annotations

import math
import os
import random
from collections import Counter

import numpy as np
import pytest
from scipy.spatial import Delaunay

import mapgeo
from mapgeo import geom
from mapgeo.errors import MapGeometryError
from mapgeo.polygon import ChainKind, SideChain

SEED = int(os.environ.get("MAPGEO_SEED", "20260809"))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(SEED)


@pytest.fixture
def pyrng() -> random.Random:
    return random.Random(SEED)


# --- reference fixtures -----------------------------------------------------


def k4_example_map() -> mapgeo.PlanarMap:
    """Complete map on four vertices with vertex angles 3*pi/2 (elliptic),
    3*pi, 3*pi (hyperbolic) and 2*pi (euclidean)."""
    verts = [
        (1, (0.0, 2.0), math.pi / 2),
        (2, (-2.0, -1.0), math.pi),
        (3, (2.0, -1.0), math.pi),
        (4, (0.0, 0.0), 2 * math.pi / 3),
    ]
    edges = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    return mapgeo.build_map(verts, edges)


def wheel_example_map() -> mapgeo.PlanarMap:
    """Wheel on four rim vertices: euclidean hub, rim angles 4*pi."""
    verts = [(0, (0.0, 0.0), math.pi / 2)]
    rim = [(1, (1.0, 1.0)), (2, (-1.0, 1.0)), (3, (-1.0, -1.0)), (4, (1.0, -1.0))]
    for vid, p in rim:
        verts.append((vid, p, 4 * math.pi / 3))
    edges = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)]
    return mapgeo.build_map(verts, edges)


def prism_map(mu_factor: float = 1.0) -> mapgeo.PlanarMap:
    """Circular-ladder drawing: two nested squares joined by spokes; all
    valencies 3. With mu_factor 1 every vertex is euclidean."""
    verts = []
    for vid, p in [
        (1, (2.0, 2.0)),
        (2, (-2.0, 2.0)),
        (3, (-2.0, -2.0)),
        (4, (2.0, -2.0)),
        (5, (1.0, 1.0)),
        (6, (-1.0, 1.0)),
        (7, (-1.0, -1.0)),
        (8, (1.0, -1.0)),
    ]:
        verts.append((vid, p, mu_factor * 2 * math.pi / 3))
    edges = [
        (1, 2), (2, 3), (3, 4), (4, 1),
        (5, 6), (6, 7), (7, 8), (8, 5),
        (1, 5), (2, 6), (3, 7), (4, 8),
    ]
    return mapgeo.build_map(verts, edges)


def uniform_angle_k4(total_angle: float) -> mapgeo.PlanarMap:
    """K4 drawing with the same vertex angle everywhere; spokes of the
    central vertex sit at 90/210/330 degrees so symmetric loop fixtures
    are easy to aim."""
    mu = total_angle / 3.0
    pts = {0: (0.0, 0.0)}
    for k, ang in enumerate((90.0, 210.0, 330.0), start=1):
        a = math.radians(ang)
        pts[k] = (4.0 * math.cos(a), 4.0 * math.sin(a))
    verts = [(i, pts[i], mu) for i in sorted(pts)]
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]
    return mapgeo.build_map(verts, edges)


# --- randomized generators ----------------------------------------------------


def random_planar_map(
    rng: np.random.Generator,
    factor_lo: float = 0.85,
    factor_hi: float = 1.15,
    n_lo: int = 6,
    n_hi: int = 14,
) -> mapgeo.PlanarMap:
    """Delaunay triangulation of random points, retried until every vertex
    has valency >= 3; vertex angles are factor * 2*pi with factor sampled
    from [factor_lo, factor_hi]."""
    while True:
        n = int(rng.integers(n_lo, n_hi + 1))
        pts = rng.uniform(-10.0, 10.0, (n, 2))
        try:
            tri = Delaunay(pts)
        except Exception:
            continue
        edges = set()
        for simplex in tri.simplices:
            for i in range(3):
                a, b = int(simplex[i]), int(simplex[(i + 1) % 3])
                edges.add((min(a, b), max(a, b)))
        deg: Counter = Counter()
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        if len(deg) < n or min(deg.values()) < 3:
            continue
        verts = []
        for i in range(n):
            factor = rng.uniform(factor_lo, factor_hi)
            verts.append(
                (i, (float(pts[i, 0]), float(pts[i, 1])), factor * 2 * math.pi / deg[i])
            )
        try:
            return mapgeo.build_map(verts, sorted(edges))
        except MapGeometryError:
            continue


def build_chain_fixture(
    rng: random.Random, p: int, kind: ChainKind
) -> tuple[SideChain, float]:
    """Random convex bent-side fixture with explicit coordinates.

    Walks the chain with geometric bends theta_i (total turning kept under
    0.95*pi so the arc stays simple), closes the triangle with an apex C
    placed far on the pocket-free side (elliptic) or the pocket side
    (hyperbolic), and returns the chain plus the shoelace area of the
    polygon A, x_1..x_p, B, C as the oracle value.
    """
    turns = [rng.uniform(0.05, 0.9) for _ in range(p)]
    scale = min(1.0, 0.95 * math.pi / sum(turns))
    turns = [t * scale for t in turns]
    thetas = [math.pi - t for t in turns]
    c = [rng.uniform(0.5, 2.0) for _ in range(p + 1)]
    pts = [(0.0, 0.0)]
    phi = 0.0
    for i in range(p):
        pts.append(
            (pts[-1][0] + c[i] * math.cos(phi), pts[-1][1] + c[i] * math.sin(phi))
        )
        phi += math.pi - thetas[i]
    pts.append((pts[-1][0] + c[p] * math.cos(phi), pts[-1][1] + c[p] * math.sin(phi)))
    a_pt, b_pt = pts[0], pts[-1]
    chord = geom.sub(b_pt, a_pt)
    right = geom.unit((chord[1], -chord[0]))  # pocket lies right of the chord
    mid = geom.scale(geom.add(a_pt, b_pt), 0.5)
    height = rng.uniform(2.0, 5.0) * max(1.0, geom.norm(chord))
    if kind is ChainKind.ELLIPTIC:
        c_pt = geom.add(mid, geom.scale(right, -height))
    else:
        c_pt = geom.add(mid, geom.scale(right, height))
    f = tuple(
        2.0 * t if kind is ChainKind.ELLIPTIC else 2.0 * (2.0 * math.pi - t)
        for t in thetas
    )
    chain = SideChain(geom.dist(a_pt, c_pt), geom.dist(b_pt, c_pt), tuple(c), f, kind)
    oracle = abs(geom.polygon_signed_area(pts + [c_pt]))
    return chain, oracle
