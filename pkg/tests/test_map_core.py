import math

import pytest

import mapgeo
from mapgeo import map_core
from mapgeo.errors import (
    AllFacesRemoved,
    Disconnects,
    DuplicateEdge,
    EdgeCrossing,
    LowValency,
    MapSyntaxError,
    MuOutOfRange,
    OutOfRange,
    UnknownVertex,
)
from mapgeo.map_core import EdgeClass, PointClass

from conftest import k4_example_map, prism_map, random_planar_map, wheel_example_map


TWO_PI = 2 * math.pi


def test_build_k4_apex_euler():
    verts = [
        (1, (0.0, 2.0), TWO_PI / 3),
        (2, (-2.0, -1.0), TWO_PI / 3),
        (3, (2.0, -1.0), TWO_PI / 3),
        (4, (0.0, 0.0), TWO_PI / 3),
    ]
    m = mapgeo.build_map(verts, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    assert len(m.vertices) - len(m.edges) + len(m.faces) == 2
    assert len(m.faces) == 4


def test_build_k4_example_fixture():
    m = k4_example_map()
    angles = sorted(round(m.vertex_angle(v), 9) for v in m.vertices)
    expected = sorted(
        round(a, 9) for a in (1.5 * math.pi, 3 * math.pi, 3 * math.pi, 2 * math.pi)
    )
    assert angles == expected


def test_crossing_segments_rejected():
    verts = [
        (1, (0.0, 0.0), 1.0),
        (2, (2.0, 2.0), 1.0),
        (3, (0.0, 2.0), 1.0),
        (4, (2.0, 0.0), 1.0),
    ]
    with pytest.raises(EdgeCrossing):
        mapgeo.build_map(verts, [(1, 2), (3, 4), (1, 3), (2, 4), (1, 4), (3, 2)])


def test_low_valency_rejected():
    verts = [(1, (0.0, 0.0), 1.0), (2, (1.0, 0.0), 1.0), (3, (0.0, 1.0), 1.0)]
    with pytest.raises(LowValency):
        mapgeo.build_map(verts, [(1, 2), (2, 3), (3, 1)])


def test_mu_out_of_range():
    verts = [
        (1, (0.0, 2.0), 7.0),  # bound is 4*pi/3 ~ 4.19
        (2, (-2.0, -1.0), 1.0),
        (3, (2.0, -1.0), 1.0),
        (4, (0.0, 0.0), 1.0),
    ]
    with pytest.raises(MuOutOfRange):
        mapgeo.build_map(verts, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])


def test_mu_upper_bound_equality_admitted():
    # Reference wheel fixture sits exactly on mu = 4*pi/valency.
    wheel_example_map()


def test_duplicate_edge_and_loop():
    verts = [
        (1, (0.0, 2.0), 1.0),
        (2, (-2.0, -1.0), 1.0),
        (3, (2.0, -1.0), 1.0),
        (4, (0.0, 0.0), 1.0),
    ]
    edges = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    with pytest.raises(DuplicateEdge):
        mapgeo.build_map(verts, edges + [(2, 1)])
    with pytest.raises(DuplicateEdge):
        mapgeo.build_map(verts, edges[:-1] + [(3, 3)])


def test_unknown_vertex_in_edge():
    with pytest.raises(UnknownVertex):
        mapgeo.build_map([(1, (0.0, 0.0), 1.0)], [(1, 9)])


def test_classify_vertex_trichotomy():
    m = k4_example_map()
    assert mapgeo.classify_vertex(m, 1) is PointClass.ELLIPTIC
    assert mapgeo.classify_vertex(m, 2) is PointClass.HYPERBOLIC
    assert mapgeo.classify_vertex(m, 3) is PointClass.HYPERBOLIC
    assert mapgeo.classify_vertex(m, 4) is PointClass.EUCLIDEAN


def test_classify_vertex_euclidean_exact():
    # valency 4, mu = pi/2 -> total angle exactly 2*pi
    verts = [
        (0, (0.0, 0.0), math.pi / 2),
        (1, (2.0, 0.0), 2 * math.pi / 3),
        (2, (0.0, 2.0), 2 * math.pi / 3),
        (3, (-2.0, 0.0), 2 * math.pi / 3),
        (4, (0.0, -2.0), 2 * math.pi / 3),
    ]
    edges = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)]
    m = mapgeo.build_map(verts, edges)
    assert mapgeo.classify_vertex(m, 0) is PointClass.EUCLIDEAN


def test_wheel_rim_hyperbolic():
    m = wheel_example_map()
    assert mapgeo.classify_vertex(m, 1) is PointClass.HYPERBOLIC
    assert mapgeo.classify_vertex(m, 0) is PointClass.EUCLIDEAN


def test_classify_edge_table():
    m = k4_example_map()
    assert mapgeo.classify_edge(m, (1, 4)) is EdgeClass.CE1
    assert mapgeo.classify_edge(m, (2, 4)) is EdgeClass.CE3
    assert mapgeo.classify_edge(m, (1, 2)) is EdgeClass.CE5
    assert mapgeo.classify_edge(m, (2, 3)) is EdgeClass.CE6
    # symmetric in endpoints
    for e in m.edges:
        u, v = e.endpoints
        assert mapgeo.classify_edge(m, (u, v)) is mapgeo.classify_edge(m, (v, u))


def test_classify_edge_ce2_ce4():
    m_eu = prism_map(1.0)
    assert mapgeo.classify_edge(m_eu, (1, 2)) is EdgeClass.CE2
    m_el = prism_map(0.9)
    assert mapgeo.classify_edge(m_el, (1, 2)) is EdgeClass.CE4


def test_classify_edge_point_linear():
    m_eu = prism_map(1.0)
    for x in (0.0, 1.0, 2.3):
        assert (
            mapgeo.classify_edge_point(m_eu, (1, 2), x) is PointClass.EUCLIDEAN
        )
    # CE5 edge of the reference fixture: f runs 3*pi/4 .. 3*pi/2
    m = k4_example_map()
    d = m.edge((1, 2)).length
    # f crosses pi at x* where (1-t)*0.75*pi + t*1.5*pi = pi -> t = 1/3
    assert mapgeo.classify_edge_point(m, (1, 2), 0.25 * d) is PointClass.ELLIPTIC
    assert mapgeo.classify_edge_point(m, (1, 2), d / 3.0) is PointClass.EUCLIDEAN
    assert mapgeo.classify_edge_point(m, (1, 2), 0.75 * d) is PointClass.HYPERBOLIC
    with pytest.raises(OutOfRange):
        mapgeo.classify_edge_point(m, (1, 2), d + 1.0)


def test_classify_edge_point_matches_vertex_class_at_ends():
    m = k4_example_map()
    for e in m.edges:
        u, v = e.endpoints
        assert mapgeo.classify_edge_point(m, (u, v), 0.0) is mapgeo.classify_vertex(m, u)
        assert mapgeo.classify_edge_point(m, (u, v), e.length) is mapgeo.classify_vertex(m, v)


def test_census_k4():
    rep = mapgeo.census(k4_example_map())
    assert (rep.elliptic_vertices, rep.euclidean_vertices, rep.hyperbolic_vertices) == (1, 1, 2)
    assert rep.faces == 4
    assert sum(rep.edge_counts.values()) == 6
    assert rep.degree_identity and rep.count_identity


def test_census_wheel():
    rep = mapgeo.census(wheel_example_map())
    assert (rep.elliptic_vertices, rep.euclidean_vertices, rep.hyperbolic_vertices) == (0, 1, 4)
    assert rep.faces == 5
    assert sum(rep.edge_counts.values()) == 8
    assert rep.degree_identity and rep.count_identity


def test_census_random_maps(rng):
    for _ in range(25):
        rep = mapgeo.census(random_planar_map(rng))
        assert rep.degree_identity and rep.count_identity


def test_has_infinite_noneuclidean():
    assert not mapgeo.has_infinite_noneuclidean(prism_map(1.0))
    assert mapgeo.has_infinite_noneuclidean(k4_example_map())
    # constant vertex angle != 2*pi everywhere
    assert mapgeo.has_infinite_noneuclidean(prism_map(0.9))


def test_remove_faces_valid():
    m = prism_map()
    m2 = mapgeo.remove_faces(m, [4])
    assert m2.boundary_faces == frozenset({4})
    assert len(m2.faces) == len(m.faces)


def test_remove_faces_all_removed():
    m = prism_map()
    with pytest.raises(AllFacesRemoved):
        mapgeo.remove_faces(m, list(range(len(m.faces))))


def test_remove_faces_disconnects():
    m = prism_map()
    # Keep only the east and west trapezoids; they share no vertex.
    by_vertices = {frozenset(u for u, _ in walk): i for i, walk in enumerate(m.faces)}
    east = by_vertices[frozenset({1, 4, 5, 8})]
    west = by_vertices[frozenset({2, 3, 6, 7})]
    removed = [i for i in range(len(m.faces)) if i not in (east, west)]
    with pytest.raises(Disconnects):
        mapgeo.remove_faces(m, removed)


def test_outer_face_is_last_with_negative_area():
    from mapgeo import geom

    for m in (k4_example_map(), wheel_example_map(), prism_map()):
        areas = [
            geom.polygon_signed_area(m.face_walk_points(i))
            for i in range(len(m.faces))
        ]
        assert areas[-1] < 0
        assert all(a > 0 for a in areas[:-1])


def test_parse_and_dump_round_trip():
    m = mapgeo.remove_faces(prism_map(), [4])
    text = mapgeo.dump_map_text(m)
    again = mapgeo.parse_map_text(text)
    assert again == m
    assert mapgeo.dump_map_text(again) == text


def test_parse_map_text_comments_and_errors():
    text = """
# a triangle with apex
v 1 0 2 2.0943951023931953
v 2 -2 -1 2.0943951023931953
v 3 2 -1 2.0943951023931953
v 4 0 0 2.0943951023931953   # apex
e 1 2
e 1 3
e 1 4
e 2 3
e 2 4
e 3 4
"""
    m = mapgeo.parse_map_text(text)
    assert len(m.vertices) == 4 and len(m.edges) == 6

    with pytest.raises(MapSyntaxError) as err:
        mapgeo.parse_map_text("v 1 0 0 1.0\nnonsense here\n")
    assert err.value.line == 2


def test_parse_map_boundary_directive():
    m = prism_map()
    text = mapgeo.dump_map_text(m) + "boundary 4\n"
    again = mapgeo.parse_map_text(text)
    assert again.boundary_faces == frozenset({4})


def test_euler_formula_random(rng):
    for _ in range(25):
        m = random_planar_map(rng)
        assert len(m.vertices) - len(m.edges) + len(m.faces) == 2


def test_locate_face():
    m = prism_map()
    inner_square = next(
        i
        for i, walk in enumerate(m.faces)
        if {u for u, _ in walk} == {5, 6, 7, 8}
    )
    assert map_core.locate_face(m, (0.0, 0.0)) == inner_square
    assert map_core.locate_face(m, (5.0, 5.0)) == m.outer_face
