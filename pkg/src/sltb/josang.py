"""Jøsang's uncertainty-favouring discount and cumulative consensus.

Base-rate bookkeeping is omitted: every opinion carries the implicit
base rate 1/2, which both operators preserve.
"""

from __future__ import annotations

from functools import reduce
from typing import Iterable

from .errors import DomainError, EmptyInput
from .opinion import Opinion

# Below this the consensus denominator is treated as zero (dogmatic case).
CRISP_THRESHOLD = 1e-12


def discount_josang(t: Opinion, c: Opinion) -> Opinion:
    """Discount ``c`` by the trust opinion ``t`` held in its source."""
    return Opinion(
        t.b * c.b,
        t.b * c.d,
        t.d + t.u + t.b * c.u,
    )


def fuse_josang(a: Opinion, b: Opinion, crisp_weight: float = 1.0) -> Opinion:
    """Consensus of two opinions about the same proposition.

    When both operands are dogmatic (``u = 0``) the result is their
    average weighted by ``crisp_weight``, the relative weight of ``a``
    with respect to ``b``.
    """
    if crisp_weight <= 0.0:
        raise DomainError("crisp_weight must be positive")
    # the vacuous opinion is the neutral element; skip the rounding of k
    if b.u == 1.0:
        return a
    if a.u == 1.0:
        return b
    k = a.u + b.u - a.u * b.u
    if k >= CRISP_THRESHOLD:
        return Opinion(
            (a.b * b.u + b.b * a.u) / k,
            (a.d * b.u + b.d * a.u) / k,
            (a.u * b.u) / k,
        )
    g = crisp_weight
    return Opinion(
        (g * a.b + b.b) / (g + 1.0),
        (g * a.d + b.d) / (g + 1.0),
        0.0,
    )


def fuse_many_josang(opinions: Iterable[Opinion]) -> Opinion:
    """Left fold of :func:`fuse_josang`."""
    opinions = list(opinions)
    if not opinions:
        raise EmptyInput("cannot fuse an empty list of opinions")
    return reduce(fuse_josang, opinions)
