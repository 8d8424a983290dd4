import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mapgeo import bundles
from mapgeo.bundles import Cut, cut_from_map
from mapgeo.errors import EmptyCut, NonlinearFunction, UnknownEdge
from mapgeo.mline import LinearAngleFunction as LAF

from conftest import prism_map

PI = math.pi


def linear_cut(slopes, lengths=None):
    lengths = lengths or [1.0] * len(slopes)
    fns = tuple(
        LAF(PI - s * d / 2.0, PI + s * d / 2.0, d) for s, d in zip(slopes, lengths)
    )
    return Cut(fns, tuple(lengths))


def ladder_fixture_cut():
    """Three-rung ladder with nondecreasing vertex angles along each rung:
    a parallel bundle by the per-edge sufficient condition."""
    fns = (
        LAF(PI, PI, 1.0),
        LAF(0.9 * PI, 1.1 * PI, 1.0),
        LAF(0.95 * PI, 1.2 * PI, 1.5),
    )
    return Cut(fns, (1.0, 1.0, 1.5))


def test_empty_cut_rejected():
    with pytest.raises(EmptyCut):
        Cut((), ())


def test_euclidean_cut_everything_true():
    cut = Cut((LAF(PI, PI, 1.0), LAF(PI, PI, 2.0)), (1.0, 2.0))
    assert bundles.is_parallel_bundle(cut)
    assert bundles.linear_bundle_check(cut)
    assert bundles.sufficient_per_edge(cut)
    assert bundles.exits_parallel(cut)
    assert bundles.parallel_to_initial(cut, 0.4)


def test_single_decreasing_edge_not_bundle():
    # vertex angles 3*pi -> 3*pi/2: f falls, derivative negative
    cut = Cut((LAF(1.5 * PI, 0.75 * PI, 1.0),), (1.0,))
    verdict = bundles.is_parallel_bundle(cut)
    assert not verdict
    assert verdict.violated_prefix == 1
    assert not bundles.linear_bundle_check(cut)


def test_single_edge_reduces_to_endpoint_inequality():
    up = Cut((LAF(0.9 * PI, 1.2 * PI, 1.0),), (1.0,))
    down = Cut((LAF(1.2 * PI, 0.9 * PI, 1.0),), (1.0,))
    assert bundles.linear_bundle_check(up)
    assert not bundles.linear_bundle_check(down)


def test_prefix_order_matters():
    assert bundles.linear_bundle_check(linear_cut([2.0, -1.0]))
    assert not bundles.linear_bundle_check(linear_cut([-1.0, 2.0]))


def test_regular_equal_length_reduction():
    # equal lengths: the system reduces to prefix sums of f-differences
    cut = linear_cut([0.3, -0.1, -0.1], [2.0, 2.0, 2.0])
    assert bundles.linear_bundle_check(cut)
    cut2 = linear_cut([0.1, -0.3, 0.4], [2.0, 2.0, 2.0])
    assert not bundles.linear_bundle_check(cut2)


def test_sufficient_implies_linear():
    cut = ladder_fixture_cut()
    assert bundles.sufficient_per_edge(cut)
    assert bundles.linear_bundle_check(cut)
    assert bundles.is_parallel_bundle(cut)


def test_sufficient_false_linear_true():
    cut = linear_cut([3.0, -1.0])
    assert not bundles.sufficient_per_edge(cut)
    assert bundles.linear_bundle_check(cut)


@given(
    st.lists(st.floats(-0.5, 0.5), min_size=1, max_size=6),
    st.lists(st.floats(0.5, 2.0), min_size=6, max_size=6),
)
@settings(max_examples=200, deadline=None)
def test_sufficient_implies_linear_property(slopes, lengths):
    cut = linear_cut(slopes, lengths[: len(slopes)])
    if bundles.sufficient_per_edge(cut):
        assert bundles.linear_bundle_check(cut)


def test_exits_parallel():
    assert bundles.exits_parallel(linear_cut([0.4, -0.4]))
    assert not bundles.exits_parallel(linear_cut([0.4]))
    assert not bundles.exits_parallel(linear_cut([-0.4, 0.4]))


def test_parallel_to_initial():
    # constant values 3*pi/4 and 5*pi/4 sum to 2*pi = l*pi
    cut = Cut((LAF(0.75 * PI, 0.75 * PI, 1.0), LAF(1.25 * PI, 1.25 * PI, 1.0)), (1.0, 1.0))
    assert bundles.parallel_to_initial(cut, 0.5)
    single = Cut((LAF(PI / 2, PI / 2, 1.0),), (1.0,))
    assert not bundles.parallel_to_initial(single, 0.5)


def test_nonlinear_rejected_by_linear_check():
    cut = Cut((lambda x: PI + 0.1 * math.sin(x),), (1.0,))
    with pytest.raises(NonlinearFunction):
        bundles.linear_bundle_check(cut)


def test_sampled_function_path():
    rising = Cut((lambda x: PI + 0.2 * x,), (1.0,))
    falling = Cut((lambda x: PI - 0.2 * x,), (1.0,))
    assert bundles.is_parallel_bundle(rising)
    assert not bundles.is_parallel_bundle(falling)


def test_cut_from_map_requires_cut():
    m = prism_map(1.0)
    # the four spokes disconnect inner square from outer square
    spokes = [(1, 5), (2, 6), (3, 7), (4, 8)]
    cut = cut_from_map(m, spokes)
    assert cut.size == 4
    with pytest.raises(UnknownEdge):
        cut_from_map(m, [(1, 2)])  # single outer edge does not disconnect


def test_simulate_bundle_euclidean():
    cut = Cut((LAF(PI, PI, 1.0), LAF(PI, PI, 1.0)), (1.0, 1.0))
    assert bundles.simulate_bundle(cut, ray_count=6)


def test_simulate_bundle_converging():
    cut = Cut((LAF(1.1 * PI, 0.9 * PI, 1.0),), (1.0,))
    assert not bundles.simulate_bundle(cut, ray_count=6)


def test_simulate_matches_linear_check(pyrng):
    agree = 0
    total = 0
    while total < 40:
        l = pyrng.randint(1, 5)
        fns = []
        for _ in range(l):
            d = pyrng.uniform(0.5, 2.0)
            slope = pyrng.uniform(-0.4, 0.4)
            delta = pyrng.uniform(-0.1, 0.1)
            mid = PI + delta
            fns.append(LAF(mid - slope * d / 2, mid + slope * d / 2, d))
        cut = Cut(tuple(fns), tuple(f.length for f in fns))
        running = 0.0
        marginal = False
        for f in fns:
            running += f.slope()
            if abs(running) < 0.02:
                marginal = True
        if marginal:
            continue
        total += 1
        if bundles.linear_bundle_check(cut) == bundles.simulate_bundle(cut, ray_count=6):
            agree += 1
    assert agree == total
