import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mapgeo import polygon
from mapgeo.errors import CenterOnEdge, ChainInconsistent, DegenerateTriangle
from mapgeo.polygon import ChainKind, MCircleQuery, SideChain

from conftest import build_chain_fixture, k4_example_map, prism_map


def test_exists_1_polygon():
    assert polygon.exists_1_polygon([math.pi / 3] * 3)
    assert not polygon.exists_1_polygon([math.pi] * 2)
    assert polygon.exists_1_polygon([math.pi / 2] * 4)
    assert not polygon.exists_1_polygon([math.pi / 2] * 3)


def test_exists_2_polygon():
    assert not polygon.exists_2_polygon(prism_map(1.0))
    assert polygon.exists_2_polygon(k4_example_map())
    assert polygon.exists_2_polygon(prism_map(0.9))


def test_internal_angle_sum():
    assert polygon.internal_angle_sum(3, []) == pytest.approx(math.pi)
    assert polygon.internal_angle_sum(3, [math.pi / 2]) == pytest.approx(1.5 * math.pi)
    assert polygon.internal_angle_sum(4, []) == pytest.approx(2 * math.pi)


@given(st.integers(min_value=1, max_value=12))
def test_internal_angle_sum_classical(n):
    assert polygon.internal_angle_sum(n, []) == pytest.approx((n - 2) * math.pi)


@given(
    st.integers(min_value=3, max_value=8),
    st.lists(st.floats(0.2, 0.9 * math.pi), min_size=0, max_size=6),
)
def test_internal_angle_sum_formula(n, fs):
    got = polygon.internal_angle_sum(n, fs)
    assert got == pytest.approx((n + len(fs) - 2) * math.pi - sum(fs))


def test_triangle_trichotomy_via_angle_sum():
    # elliptic crossings (f < pi) push the sum above pi, hyperbolic below...
    # per the closed form: sum = (n + l - 2)*pi - sum(f)
    elliptic = polygon.internal_angle_sum(3, [0.5 * math.pi, 0.6 * math.pi])
    hyperbolic = polygon.internal_angle_sum(3, [1.5 * math.pi, 1.4 * math.pi])
    euclidean = polygon.internal_angle_sum(3, [math.pi, math.pi])
    assert euclidean == pytest.approx(math.pi)
    assert elliptic > math.pi > hyperbolic


def test_triangle_area_one_point_examples():
    # right-isosceles construction: pocket angle pi/2 on both sides
    assert polygon.triangle_area_one_point(
        1, 1, 1, 1, math.pi, ChainKind.ELLIPTIC
    ) == pytest.approx(1.0)
    assert polygon.triangle_area_one_point(
        1, 1, 1, 1, math.pi, ChainKind.HYPERBOLIC
    ) == pytest.approx(0.0, abs=1e-12)
    # euclidean crossing degenerates to plain Heron of (a, b, c+d)
    got = polygon.triangle_area_one_point(3, 4, 2.5, 2.5, 2 * math.pi, ChainKind.ELLIPTIC)
    assert got == pytest.approx(6.0)


def test_triangle_area_degenerate():
    with pytest.raises(ChainInconsistent):
        # |AB| = 2 but a + b = 0.5: no closing triangle
        polygon.triangle_area_one_point(0.25, 0.25, 1, 1, 2 * math.pi, ChainKind.ELLIPTIC)


def test_chain_area_specializes_to_one_point():
    cases = [
        (1.0, 1.0, 1.0, 1.0, math.pi, ChainKind.ELLIPTIC),
        (3.0, 4.0, 2.5, 2.5, 2 * math.pi, ChainKind.ELLIPTIC),
        (2.0, 2.5, 1.0, 1.5, 1.2 * math.pi, ChainKind.HYPERBOLIC),
    ]
    for a, b, c, d, f, kind in cases:
        direct = polygon.triangle_area_one_point(a, b, c, d, f, kind)
        via_chain = polygon.chain_area(SideChain(a, b, (c, d), (f,), kind))
        assert direct == via_chain  # identical arithmetic, bit for bit


def test_chain_area_collinear():
    chain = SideChain(3.0, 4.0, (1.0, 2.0, 2.0), (2 * math.pi,) * 2, ChainKind.ELLIPTIC)
    assert polygon.chain_area(chain) == pytest.approx(6.0)


def test_chain_area_against_shoelace(pyrng):
    worst = 0.0
    for trial in range(300):
        p = pyrng.randint(1, 4)
        kind = ChainKind.ELLIPTIC if trial % 2 == 0 else ChainKind.HYPERBOLIC
        chain, oracle = build_chain_fixture(pyrng, p, kind)
        area = polygon.chain_area(chain)
        worst = max(worst, abs(area - oracle) / oracle)
    assert worst < 1e-9


def test_chain_validation():
    with pytest.raises(ChainInconsistent):
        SideChain(1, 1, (1.0,), (math.pi,), ChainKind.ELLIPTIC)  # p+1 mismatch
    with pytest.raises(ChainInconsistent):
        SideChain(1, 1, (1.0, -1.0), (math.pi,), ChainKind.ELLIPTIC)
    with pytest.raises(ChainInconsistent):
        SideChain(1, 1, (1.0, 1.0), (5 * math.pi,), ChainKind.ELLIPTIC)


def test_mcircle_center_in_inner_face():
    m = k4_example_map()
    res = polygon.mcircle_exists(m, MCircleQuery((0.0, 0.5), 10.0))
    assert res.exists


def test_mcircle_outer_blocked_by_elliptic_vertex():
    m = k4_example_map()
    res = polygon.mcircle_exists(m, MCircleQuery((0.0, 3.0), 2.0))
    assert not res.exists
    assert res.witness_point == pytest.approx((0.0, 2.0))


def test_mcircle_outer_blocked_by_edge_interior():
    m = k4_example_map()
    res = polygon.mcircle_exists(m, MCircleQuery((-1.8, 1.5), 1.5))
    assert not res.exists
    assert res.witness_epsilon is not None


def test_mcircle_euclidean_map_ok():
    m = prism_map(1.0)
    res = polygon.mcircle_exists(m, MCircleQuery((5.0, 0.0), 4.0))
    assert res.exists


def test_mcircle_empty_map():
    import mapgeo

    empty = mapgeo.PlanarMap({}, (), {}, ((),))
    res = polygon.mcircle_exists(empty, MCircleQuery((0.0, 0.0), 1.0))
    assert res.exists


def test_mcircle_center_on_edge():
    m = prism_map(1.0)
    with pytest.raises(CenterOnEdge):
        polygon.mcircle_exists(m, MCircleQuery((1.5, 1.0), 1.0))


def test_mcircle_equation():
    eq = polygon.mcircle_equation((0.0, 0.0), 1.0)
    assert eq.rho(0.0) == 1.0
    eq = polygon.mcircle_equation((2.0, -1.0), 2.5)
    assert eq.rho(math.pi) == 2.5
    with pytest.raises(ValueError):
        polygon.mcircle_equation((0.0, 0.0), -1.0)


def test_mcircle_radius_matches_traced_m_length():
    # On an all-euclidean map a traced radius is straight, so its m-length
    # equals the euclidean distance, which the polar descriptor reports.
    import mapgeo
    from mapgeo import geom, mline

    m = prism_map(1.0)
    center = (0.2, 0.1)
    r0 = 0.6
    eq = polygon.mcircle_equation(center, r0)
    tr = mline.trace_mline(m, center, (1.0, 0.3))
    d = geom.unit((1.0, 0.3))
    endpoint = geom.add(center, geom.scale(d, r0))
    # the trace passes straight through the endpoint at arc length r0
    n = (-d[1], d[0])
    assert abs(geom.dot(geom.sub(endpoint, center), n)) < 1e-12
    assert eq.rho(0.3) == pytest.approx(r0)
