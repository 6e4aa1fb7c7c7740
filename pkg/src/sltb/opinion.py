"""Binomial subjective-logic opinions with a fixed base rate of 1/2.

An opinion is a point ``(b, d, u)`` on the 2-simplex.  All three
components are stored so that a broken additivity constraint is caught
at construction rather than silently renormalised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import DomainError, SimplexViolation

TOL = 1e-9

CSV_COLUMNS = ("b", "d", "u")


def _clamp(x: float) -> float:
    if x < 0.0:
        return 0.0
    if x > 1.0:
        return 1.0
    return x


@dataclass(frozen=True, slots=True)
class Opinion:
    """Belief, disbelief and uncertainty masses summing to one."""

    b: float
    d: float
    u: float

    def __post_init__(self):
        b, d, u = float(self.b), float(self.d), float(self.u)
        for name, x in (("b", b), ("d", d), ("u", u)):
            if not math.isfinite(x):
                raise SimplexViolation(f"{name}={x!r} is not finite")
            if x < -TOL or x > 1.0 + TOL:
                raise SimplexViolation(f"{name}={x!r} outside [0, 1]")
        if abs(b + d + u - 1.0) > TOL:
            raise SimplexViolation(f"b + d + u = {b + d + u!r}, expected 1")
        object.__setattr__(self, "b", _clamp(b))
        object.__setattr__(self, "d", _clamp(d))
        object.__setattr__(self, "u", _clamp(u))

    @property
    def belief(self) -> float:
        return self.b

    @property
    def disbelief(self) -> float:
        return self.d

    @property
    def uncertainty(self) -> float:
        return self.u

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.b, self.d, self.u)

    def to_dict(self) -> dict[str, float]:
        return {"b": self.b, "d": self.d, "u": self.u}

    @classmethod
    def from_dict(cls, data: Mapping[str, float]) -> "Opinion":
        return cls(float(data["b"]), float(data["d"]), float(data["u"]))

    def to_csv_fields(self) -> list[str]:
        return [repr(self.b), repr(self.d), repr(self.u)]

    @classmethod
    def from_csv_fields(cls, fields: Sequence[str]) -> "Opinion":
        b, d, u = (float(x) for x in fields)
        return cls(b, d, u)

    def isclose(self, other: "Opinion", tol: float = TOL) -> bool:
        return (
            abs(self.b - other.b) <= tol
            and abs(self.d - other.d) <= tol
            and abs(self.u - other.u) <= tol
        )


BELIEF = Opinion(1.0, 0.0, 0.0)
DISBELIEF = Opinion(0.0, 1.0, 0.0)
VACUOUS = Opinion(0.0, 0.0, 1.0)


def make_opinion(b: float, d: float, u: float) -> Opinion:
    return Opinion(b, d, u)


def expected_value(o: Opinion) -> float:
    """Probability expectation ``b + u/2`` (base rate fixed at 1/2)."""
    return o.b + o.u / 2.0


@dataclass(frozen=True, slots=True)
class EvidenceCount:
    """Counts of truthful (``positive``) and false (``negative``) answers."""

    positive: int
    negative: int

    def __post_init__(self):
        if self.positive < 0 or self.negative < 0:
            raise DomainError("evidence counts must be nonnegative")

    @property
    def total(self) -> int:
        return self.positive + self.negative


def opinion_from_evidence(e: EvidenceCount) -> Opinion:
    """Beta-reputation mapping ``<r/(n+2), s/(n+2), 2/(n+2)>``."""
    denom = e.positive + e.negative + 2
    return Opinion(e.positive / denom, e.negative / denom, 2 / denom)


def ideal_opinion(p: float) -> Opinion:
    """The dogmatic opinion ``<p, 1-p, 0>`` of an omniscient observer."""
    if not (0.0 <= p <= 1.0):
        raise DomainError(f"probability {p!r} outside [0, 1]")
    return Opinion(p, 1.0 - p, 0.0)
