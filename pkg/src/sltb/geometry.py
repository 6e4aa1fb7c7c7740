"""Planar geometry of the opinion triangle.

The triangle B-D-U is scaled so that every height is 1 and B sits at the
origin with the x axis running towards D::

    B = (0, 0)    D = (2/sqrt(3), 0)    U = (1/sqrt(3), 1)

In this frame an opinion's belief is its distance from the D-U edge,
its disbelief the distance from the B-U edge and its uncertainty the
height ``y``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import OutOfTriangle, UndefinedDirection
from .opinion import TOL, Opinion

SQRT3 = math.sqrt(3.0)
SIN60 = math.sin(math.pi / 3.0)
COS60 = math.cos(math.pi / 3.0)
PI_3 = math.pi / 3.0


@dataclass(frozen=True, slots=True)
class CartesianPoint:
    x: float
    y: float

    def to_dict(self) -> dict[str, float]:
        return {"x": self.x, "y": self.y}


B_POINT = CartesianPoint(0.0, 0.0)
D_POINT = CartesianPoint(2.0 / SQRT3, 0.0)
U_POINT = CartesianPoint(1.0 / SQRT3, 1.0)


@dataclass(frozen=True, slots=True)
class OpinionAngles:
    """Characteristic angles of an opinion O, in radians.

    ``alpha`` is the direction of O seen from B (angle OBD), ``beta`` the
    angle ODB, and ``gamma``, ``delta``, ``epsilon`` are the angles of the
    triangle ODU at D, U and O respectively.
    """

    alpha: float
    beta: float
    gamma: float
    delta: float
    epsilon: float


def to_cartesian(o: Opinion) -> CartesianPoint:
    return CartesianPoint((o.d + o.u * COS60) / SIN60, o.u)


def from_cartesian(p: CartesianPoint) -> Opinion:
    u = p.y
    d = (SQRT3 * p.x - p.y) / 2.0
    b = 1.0 - d - u
    for name, v in (("b", b), ("d", d), ("u", u)):
        if v < -TOL or v > 1.0 + TOL:
            raise OutOfTriangle(f"point ({p.x!r}, {p.y!r}) gives {name}={v!r}")
    return Opinion(b, d, u)


def distance_to_u(o: Opinion) -> float:
    """Length of the segment from O to the vertex U."""
    return math.sqrt((1.0 + o.d - o.u) ** 2 / 3.0 + o.b**2)


def direction(o: Opinion) -> float:
    """Angle OBD, taking 0 at B itself."""
    if o.b == 1.0:
        return 0.0
    return math.atan2(o.u * SIN60, o.d + o.u * COS60)


def angles_of(o: Opinion) -> OpinionAngles:
    alpha = direction(o)
    run = 1.0 - (o.d + o.u * COS60)
    if o.d == 1.0 or run <= 0.0:
        beta = PI_3
    else:
        beta = math.atan(o.u * SIN60 / run)
    gamma = PI_3 - beta
    if o.u == 1.0:
        delta = 0.0
    else:
        # rounding can push the ratio a hair above 1 near B
        delta = math.asin(min(1.0, o.b / distance_to_u(o)))
    epsilon = math.pi - gamma - delta
    return OpinionAngles(alpha, beta, gamma, delta, epsilon)


def max_vector_point(o: Opinion) -> CartesianPoint:
    """Where the ray from B through O meets the D-U edge."""
    if o.b == 1.0:
        raise UndefinedDirection("the direction of <1, 0, 0> is undefined")
    p = to_cartesian(o)
    t = math.tan(direction(o))
    x_m = (2.0 - p.y + t * p.x) / (t + SQRT3)
    return CartesianPoint(x_m, -SQRT3 * x_m + 2.0)


def radial_fraction(o: Opinion) -> float:
    """``|BO| / |BM_O|``; equals ``1 - b`` and is 0 at B by convention."""
    if o.b == 1.0:
        return 0.0
    if o.b == 0.0:
        return 1.0
    p = to_cartesian(o)
    m = max_vector_point(o)
    r = math.hypot(p.x, p.y) / math.hypot(m.x, m.y)
    return min(1.0, max(0.0, r))


def in_admissible_space(x: Opinion, t: Opinion) -> bool:
    """True when ``x`` believes no more than ``t`` does."""
    return x.b <= t.b + TOL
