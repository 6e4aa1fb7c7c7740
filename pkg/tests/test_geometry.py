import math

import numpy as np
import pytest
from hypothesis import given

from sltb.errors import OutOfTriangle, UndefinedDirection
from sltb.geometry import (
    D_POINT,
    PI_3,
    SQRT3,
    U_POINT,
    CartesianPoint,
    angles_of,
    from_cartesian,
    in_admissible_space,
    max_vector_point,
    radial_fraction,
    to_cartesian,
)
from sltb.opinion import BELIEF, DISBELIEF, VACUOUS, Opinion

from .strategies import opinions, simplex_points

CENTROID = Opinion(1 / 3, 1 / 3, 1 / 3)


def _xy(p):
    return (p.x, p.y)


def test_vertices_map_to_the_unit_height_triangle():
    assert _xy(to_cartesian(BELIEF)) == (0.0, 0.0)
    assert _xy(to_cartesian(DISBELIEF)) == pytest.approx((1.154700538, 0.0), abs=1e-9)
    assert _xy(to_cartesian(VACUOUS)) == pytest.approx((0.577350269, 1.0), abs=1e-9)


def test_from_cartesian_examples():
    assert from_cartesian(CartesianPoint(0, 0)).isclose(BELIEF)
    assert from_cartesian(CartesianPoint(2 / SQRT3, 0)).isclose(DISBELIEF)
    assert from_cartesian(CartesianPoint(1 / SQRT3, 1 / 3)).isclose(CENTROID, 1e-12)


@pytest.mark.parametrize("xy", [(-0.1, 0.0), (1.0, 1.0), (0.5, -0.2)])
def test_points_outside_the_triangle_are_rejected(xy):
    with pytest.raises(OutOfTriangle):
        from_cartesian(CartesianPoint(*xy))


def test_cartesian_round_trip_on_many_opinions():
    rng = np.random.default_rng(7)
    for o in simplex_points(rng, 100_000):
        assert from_cartesian(to_cartesian(o)).isclose(o, 1e-9)


@given(opinions())
def test_belief_is_the_distance_to_the_du_edge(o):
    p = to_cartesian(o)
    # distance from (x, y) to the line sqrt(3) x + y - 2 = 0
    dist = abs(SQRT3 * p.x + p.y - 2.0) / 2.0
    assert dist == pytest.approx(o.b, abs=1e-12)


def test_angle_examples():
    assert angles_of(BELIEF).alpha == 0.0
    assert angles_of(DISBELIEF).beta == PI_3
    assert angles_of(CENTROID).alpha == pytest.approx(math.pi / 6, abs=1e-12)


@given(opinions())
def test_angles_of_triangle_odu_sum_to_pi(o):
    a = angles_of(o)
    assert a.gamma + a.delta + a.epsilon == pytest.approx(math.pi, abs=1e-12)
    assert 0.0 <= a.alpha <= PI_3 + 1e-12
    assert 0.0 <= a.beta <= PI_3 + 1e-12


@given(opinions(max_b=0.999))
def test_angles_match_vector_construction(o):
    # angle ODB and angle DOU measured directly from the points
    p = np.array(_xy(to_cartesian(o)))
    d, u, b = np.array(_xy(D_POINT)), np.array(_xy(U_POINT)), np.zeros(2)

    def angle(at, p1, p2):
        v1, v2 = p1 - at, p2 - at
        return math.atan2(abs(v1[0] * v2[1] - v1[1] * v2[0]), float(v1 @ v2))

    a = angles_of(o)
    # the construction degenerates when O sits on the vertex D or U
    if o.d < 0.999 and o.u < 0.999:
        assert a.beta == pytest.approx(angle(d, b, p), abs=1e-7)
        assert a.epsilon == pytest.approx(angle(p, d, u), abs=1e-7)


def test_max_vector_point_examples():
    assert _xy(max_vector_point(DISBELIEF)) == pytest.approx(_xy(D_POINT), abs=1e-12)
    assert _xy(max_vector_point(CENTROID)) == pytest.approx((SQRT3 / 2, 0.5), abs=1e-9)
    assert _xy(max_vector_point(VACUOUS)) == pytest.approx(_xy(U_POINT), abs=1e-12)
    with pytest.raises(UndefinedDirection):
        max_vector_point(BELIEF)


@given(opinions(max_b=0.999))
def test_max_vector_point_lies_on_du_and_on_the_ray(o):
    m = max_vector_point(o)
    assert m.y == pytest.approx(-SQRT3 * m.x + 2.0, abs=1e-12)
    p = to_cartesian(o)
    assert p.x * m.y - p.y * m.x == pytest.approx(0.0, abs=1e-9)


def test_radial_fraction_examples():
    assert radial_fraction(BELIEF) == 0.0
    assert radial_fraction(VACUOUS) == 1.0
    assert radial_fraction(CENTROID) == pytest.approx(2 / 3, abs=1e-12)


@given(opinions(max_b=0.999))
def test_radial_fraction_scales_the_max_vector(o):
    p, m = to_cartesian(o), max_vector_point(o)
    r = radial_fraction(o)
    assert math.hypot(p.x, p.y) == pytest.approx(r * math.hypot(m.x, m.y), abs=1e-9)
    assert r == pytest.approx(1.0 - o.b, abs=1e-12)


def test_admissible_space_examples():
    t = Opinion(0.6, 0.2, 0.2)
    assert in_admissible_space(t, t)
    assert in_admissible_space(VACUOUS, t)
    assert not in_admissible_space(Opinion(0.7, 0.2, 0.1), t)


@given(opinions(), opinions())
def test_admissible_space_is_the_band_beyond_the_parallel_to_du(x, t):
    # the region is bounded by the line through T parallel to D-U, on the side away from B
    px, pt = to_cartesian(x), to_cartesian(t)
    beyond = SQRT3 * px.x + px.y >= SQRT3 * pt.x + pt.y - 2e-9
    assert in_admissible_space(x, t) == beyond or abs(x.b - t.b) < 1e-8
