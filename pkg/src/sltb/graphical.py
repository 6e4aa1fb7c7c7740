"""Discount and fusion operators built on the opinion-triangle geometry.

A discounted opinion ``W = T o C`` is obtained by projecting ``C`` into
the region of opinions that believe no more than the trust opinion
``T``.  The projection keeps the radial fraction of ``C`` (how far it
sits from B towards the D-U edge) and maps its direction ``alpha_C``
linearly onto a direction ``alpha'`` leaving ``T``.  The three family
members differ only in that direction map.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from typing import Iterable

from .errors import AllWeightsZero, DomainError, EmptyInput
from .geometry import COS60, PI_3, SIN60, SQRT3, angles_of, direction, radial_fraction
from .opinion import Opinion

log = logging.getLogger(__name__)

ANGLE_TOL = 1e-12


class DiscountVariant(enum.Enum):
    NAIVE = "naive"
    G1 = "g1"
    G2 = "g2"
    G3 = "g3"

    @classmethod
    def parse(cls, tag: str) -> "DiscountVariant":
        try:
            return cls(tag.strip().lower())
        except ValueError:
            raise DomainError(f"unknown discount variant {tag!r}") from None

    @property
    def is_graphical(self) -> bool:
        return self is not DiscountVariant.NAIVE


ALL_VARIANTS = (DiscountVariant.NAIVE, DiscountVariant.G1, DiscountVariant.G2, DiscountVariant.G3)


@dataclass(frozen=True, slots=True)
class WeightedOpinion:
    opinion: Opinion
    weight: float

    def __post_init__(self):
        if not self.weight >= 0.0:
            raise DomainError(f"weight must be nonnegative, got {self.weight!r}")


def discount_naive(t: Opinion, c: Opinion) -> Opinion:
    """Scale ``t`` by the belief of ``c`` and add ``c``'s remaining mass."""
    return Opinion(
        c.b * t.b,
        c.b * t.d + c.d,
        c.b * t.u + c.u,
    )


def alpha_prime(variant: DiscountVariant, alpha_c: float, beta_t: float, epsilon_t: float) -> float:
    """Direction, measured from the x axis, along which ``C`` is projected out of ``T``."""
    if variant is DiscountVariant.G1:
        return alpha_c * epsilon_t / PI_3 - beta_t
    if variant is DiscountVariant.G2:
        return alpha_c * (epsilon_t - beta_t) / PI_3
    if variant is DiscountVariant.G3:
        return alpha_c * (epsilon_t / 2.0) / PI_3 + epsilon_t / 2.0 - beta_t
    raise DomainError(f"{variant} is not a member of the graphical family")


def alpha_prime_band(alpha_c: float, beta_t: float, epsilon_t: float) -> tuple[float, float]:
    return alpha_c * epsilon_t / PI_3 - beta_t, epsilon_t - beta_t


def reach_to_edge(t: Opinion, angle: float) -> float:
    """Length of the segment from ``T`` along ``angle`` to the D-U edge."""
    return _reach(t, 2.0 * PI_3 - angle)


def _reach(t: Opinion, slack: float) -> float:
    # slack is the angle between the heading and the edge direction D->U;
    # b_T is the perpendicular distance to the edge, so the reach is b_T / sin(slack)
    if abs(slack - PI_3 / 2.0) <= ANGLE_TOL:
        return 2.0 * t.b
    if abs(slack - math.pi) <= ANGLE_TOL:
        return 2.0 / SQRT3 * t.u
    if abs(slack) <= ANGLE_TOL:
        return 2.0 / SQRT3 * (1.0 - t.u)
    return t.b / math.sin(slack)


def _slack(variant: DiscountVariant, alpha_c: float, rest_c: float, ang) -> float:
    """``2pi/3 - alpha'`` without cancellation.

    ``rest_c`` is ``pi/3 - alpha_C``; the identity ``epsilon + delta = 2pi/3 + beta``
    turns every variant into a sum of nonnegative terms.
    """
    if variant is DiscountVariant.G1:
        return ang.epsilon * rest_c / PI_3 + ang.delta
    if variant is DiscountVariant.G2:
        return 2.0 * rest_c + alpha_c * ang.delta / PI_3
    if variant is DiscountVariant.G3:
        return ang.epsilon / 2.0 * rest_c / PI_3 + ang.delta
    raise DomainError(f"{variant} is not a member of the graphical family")


def discount_graphical(t: Opinion, c: Opinion, variant: DiscountVariant) -> Opinion:
    r_c = radial_fraction(c)
    if r_c == 0.0:
        return t
    ang = angles_of(t)
    alpha_c = direction(c)
    # angle between B->C and the B-U edge, exact near that edge
    rest_c = math.atan2(SQRT3 * c.d, c.d + 2.0 * c.u)
    lo, hi = alpha_prime_band(alpha_c, ang.beta, ang.epsilon)
    if lo > hi + ANGLE_TOL:
        log.warning("empty projection band [%r, %r] for T=%s C=%s", lo, hi, t, c)
    a = alpha_prime(variant, alpha_c, ang.beta, ang.epsilon)
    step = r_c * _reach(t, _slack(variant, alpha_c, rest_c, ang))
    u_w = t.u + math.sin(a) * step
    d_w = t.d + (t.u - u_w) * COS60 + math.cos(a) * SIN60 * step
    return _settle(d_w, u_w)


def _settle(d: float, u: float) -> Opinion:
    # absorb rounding so that b = 1 - d - u stays on the simplex
    d = min(1.0, max(0.0, d))
    u = min(1.0, max(0.0, u))
    b = 1.0 - d - u
    if b < 0.0:
        excess = -b
        if d >= u:
            d -= excess
        else:
            u -= excess
        b = 0.0
    return Opinion(b, d, u)


def discount(t: Opinion, c: Opinion, variant: DiscountVariant) -> Opinion:
    """Dispatch to the naive operator or a graphical family member."""
    if variant is DiscountVariant.NAIVE:
        return discount_naive(t, c)
    return discount_graphical(t, c, variant)


def fuse_weighted(items: Iterable[WeightedOpinion]) -> Opinion:
    """Weighted centroid of the opinions, componentwise.

    Parameters
    ----------
    items : iterable of WeightedOpinion
        Opinions with nonnegative weights; zero-weight items have no effect.

    Raises
    ------
    EmptyInput
        If ``items`` is empty.
    AllWeightsZero
        If no item carries positive weight.
    """
    items = list(items)
    if not items:
        raise EmptyInput("cannot fuse an empty list of opinions")
    total = math.fsum(it.weight for it in items)
    if total <= 0.0:
        raise AllWeightsZero("every fusion weight is zero")
    b = math.fsum(it.weight * it.opinion.b for it in items) / total
    d = math.fsum(it.weight * it.opinion.d for it in items) / total
    u = math.fsum(it.weight * it.opinion.u for it in items) / total
    return Opinion(b, d, u)
