"""Counting non-equivalent map geometries over small simple graphs.

Everything here is exact: Fractions and big integers, no floats. The two
brute-force engines are a backtracking automorphism counter and a rotation-
system enumerator that traces faces to build the genus distribution. The
closed-form counts combine them:

    without boundary, orientable:      3^n * prod (rho-1)! / (2 |Aut|)
    without boundary, non-orientable:  (2^beta - 1) times the above
    one-face boundary, orientable:     3^n / (2 |Aut|) *
                                       [(beta+1) * prod (rho-1)! - 2 g'(1)]
    one-face boundary, non-orientable: (2^beta - 1) times the above

where g is the genus polynomial and beta the cycle rank. The formulas are
Burnside-style weighted counts and need not be integers; results are
reported as exact rationals. (An independent orbit count over labelled
(rotation system, 3-coloring) pairs could in principle probe the
non-integral cases, but is out of scope here and deliberately not asserted.)
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import Disconnected, LowValency, TooLarge

_AUT_MAX_VERTICES = 10
_ROTATION_MAX = 10_000_000


@dataclass(frozen=True)
class SimpleGraph:
    """Connected simple graph on vertices 0..n-1."""

    n: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_edges(
        cls, pairs: list[tuple[int, int]], allow_low_degree: bool = False
    ) -> "SimpleGraph":
        seen = set()
        norm = []
        vertices = set()
        for u, v in pairs:
            if u == v:
                raise ValueError(f"loop ({u}, {u}) not allowed in a simple graph")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"parallel edge {key}")
            seen.add(key)
            norm.append(key)
            vertices.update(key)
        ids = sorted(vertices)
        index = {v: i for i, v in enumerate(ids)}
        edges = tuple(sorted((index[u], index[v]) for u, v in norm))
        g = cls(len(ids), edges)
        if not g.is_connected():
            raise Disconnected("graph must be connected")
        if not allow_low_degree:
            degs = g.degrees()
            bad = [i for i, d in enumerate(degs) if d < 3]
            if bad:
                raise LowValency(
                    f"vertices {bad} have degree < 3 (pass allow_low_degree to override)"
                )
        return g

    def degrees(self) -> tuple[int, ...]:
        d = [0] * self.n
        for u, v in self.edges:
            d[u] += 1
            d[v] += 1
        return tuple(d)

    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(ns)) for ns in nbrs)

    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs = self.neighbors()
        return tuple(frozenset(ns) for ns in nbrs)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        nbrs = self.neighbors()
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in nbrs[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n


def betti(graph: SimpleGraph) -> int:
    """Cycle rank: edges - vertices + 1 (connected graphs only)."""
    if not graph.is_connected():
        raise Disconnected("Betti number defined here for connected graphs")
    return len(graph.edges) - graph.n + 1


def aut_order(graph: SimpleGraph) -> int:
    """Number of adjacency-preserving vertex permutations, by backtracking."""
    if graph.n > _AUT_MAX_VERTICES:
        raise TooLarge(f"automorphism brute force capped at {_AUT_MAX_VERTICES} vertices")
    if graph.n == 0:
        return 1
    adj = graph.adjacency()
    degs = graph.degrees()
    order = sorted(range(graph.n), key=lambda v: (-degs[v], v))
    image = [-1] * graph.n
    used = [False] * graph.n
    count = 0

    def extend(pos: int) -> None:
        nonlocal count
        if pos == graph.n:
            count += 1
            return
        v = order[pos]
        for w in range(graph.n):
            if used[w] or degs[w] != degs[v]:
                continue
            ok = True
            for j in range(pos):
                u = order[j]
                if (u in adj[v]) != (image[u] in adj[w]):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                extend(pos + 1)
                used[w] = False
                image[v] = -1

    extend(0)
    return count


@dataclass(frozen=True)
class GenusPolynomial:
    """Coefficients g_k: the number of orientable embeddings of genus k."""

    coefficients: tuple[int, ...]

    def total(self) -> int:
        return sum(self.coefficients)

    def derivative_at_one(self) -> int:
        return sum(k * g for k, g in enumerate(self.coefficients))

    def __str__(self) -> str:
        terms = []
        for k, g in enumerate(self.coefficients):
            if g == 0:
                continue
            if k == 0:
                terms.append(str(g))
            elif k == 1:
                terms.append(f"{g}x")
            else:
                terms.append(f"{g}x^{k}")
        return " + ".join(terms) if terms else "0"


def rotation_system_count(graph: SimpleGraph) -> int:
    return math.prod(math.factorial(d - 1) for d in graph.degrees())


def _face_count(
    nbrs: tuple[tuple[int, ...], ...], rotation: list[tuple[int, ...]]
) -> int:
    """Orbits of the face permutation 'next dart after (u, v) is the successor
    of u in the rotation at v'."""
    position = [
        {w: i for i, w in enumerate(ring)} for ring in rotation
    ]
    unseen = {(u, w) for u in range(len(nbrs)) for w in nbrs[u]}
    faces = 0
    while unseen:
        start = unseen.pop()
        u, v = start
        while True:
            ring = rotation[v]
            w = ring[(position[v][u] + 1) % len(ring)]
            dart = (v, w)
            if dart == start:
                break
            unseen.discard(dart)
            u, v = dart
        faces += 1
    return faces


def genus_distribution(graph: SimpleGraph, threads: int = 1) -> GenusPolynomial:
    """Tally the genus of every rotation system of the graph.

    Rotation systems are enumerated with the smallest neighbor of each
    vertex anchored first, giving exactly prod (rho-1)! distinct systems.
    The genus of each comes from n - e + faces = 2 - 2g.
    """
    total = rotation_system_count(graph)
    if total > _ROTATION_MAX:
        raise TooLarge(f"{total} rotation systems exceed the enumeration bound")
    nbrs = graph.neighbors()
    n_edges = len(graph.edges)

    per_vertex = [
        [
            (ns[0],) + rest
            for rest in itertools.permutations(ns[1:])
        ]
        if ns
        else [()]
        for ns in nbrs
    ]

    max_genus = (n_edges - graph.n + 1) // 2 + 1
    def tally_range(assignments) -> list[int]:
        counts = [0] * (max_genus + 1)
        for rotation in assignments:
            faces = _face_count(nbrs, list(rotation))
            euler = graph.n - n_edges + faces
            genus2 = 2 - euler
            if genus2 % 2 != 0 or genus2 < 0:
                raise AssertionError("face tracing produced a non-integral genus")
            counts[genus2 // 2] += 1
        return counts

    all_assignments = itertools.product(*per_vertex)
    if threads <= 1:
        counts = tally_range(all_assignments)
    else:
        chunks: list[list] = [[] for _ in range(threads)]
        for i, assignment in enumerate(all_assignments):
            chunks[i % threads].append(assignment)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(tally_range, chunks))
        counts = [sum(col) for col in zip(*results)]

    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    poly = GenusPolynomial(tuple(counts))
    if poly.total() != total:
        raise AssertionError("rotation-system tally does not match prod (rho-1)!")
    return poly


def count_from_map_set(n: int, m: int, size: int) -> tuple[int, int]:
    """Counts over a set of non-isomorphic maps of order n with m faces:
    3^n * size geometries without boundary, 3^n * m * size with one
    boundary face."""
    base = 3**n * size
    return (base, base * m)


def n_orientable(graph: SimpleGraph) -> Fraction:
    rho_product = rotation_system_count(graph)
    return Fraction(3**graph.n * rho_product, 2 * aut_order(graph))


def n_nonorientable(graph: SimpleGraph) -> Fraction:
    return (2 ** betti(graph) - 1) * n_orientable(graph)


def n_orientable_boundary(
    graph: SimpleGraph, poly: GenusPolynomial | None = None
) -> Fraction:
    poly = poly if poly is not None else genus_distribution(graph)
    rho_product = rotation_system_count(graph)
    bracket = (betti(graph) + 1) * rho_product - 2 * poly.derivative_at_one()
    return Fraction(3**graph.n, 2 * aut_order(graph)) * bracket


def n_nonorientable_boundary(
    graph: SimpleGraph, poly: GenusPolynomial | None = None
) -> Fraction:
    return (2 ** betti(graph) - 1) * n_orientable_boundary(graph, poly)


@dataclass(frozen=True)
class EnumerationReport:
    nu: int
    eps: int
    betti: int
    aut_order: int
    genus_polynomial: GenusPolynomial
    n_orientable: Fraction
    n_nonorientable: Fraction
    n_orientable_boundary: Fraction
    n_nonorientable_boundary: Fraction


def enumeration_report(graph: SimpleGraph, threads: int = 1) -> EnumerationReport:
    poly = genus_distribution(graph, threads=threads)
    return EnumerationReport(
        nu=graph.n,
        eps=len(graph.edges),
        betti=betti(graph),
        aut_order=aut_order(graph),
        genus_polynomial=poly,
        n_orientable=n_orientable(graph),
        n_nonorientable=n_nonorientable(graph),
        n_orientable_boundary=n_orientable_boundary(graph, poly),
        n_nonorientable_boundary=n_nonorientable_boundary(graph, poly),
    )
