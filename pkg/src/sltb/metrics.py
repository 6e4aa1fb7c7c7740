"""Distances between opinions and the logarithmic comparison ratio."""

from __future__ import annotations

import math

from .opinion import Opinion, expected_value

# Distances are floored here before taking a ratio; exact zeros occur
# whenever a derived opinion coincides with a dogmatic ground truth.
DISTANCE_FLOOR = 1e-12


def geometric_distance(o1: Opinion, o2: Opinion) -> float:
    """Euclidean distance in (b, d, u) space."""
    return math.sqrt((o2.b - o1.b) ** 2 + (o2.d - o1.d) ** 2 + (o2.u - o1.u) ** 2)


def expected_distance(o1: Opinion, o2: Opinion) -> float:
    return abs(expected_value(o1) - expected_value(o2))


def log_ratio(d_candidate: float, d_baseline: float) -> float:
    """``ln(d_baseline / d_candidate)``: positive when the candidate is closer."""
    c = max(d_candidate, DISTANCE_FLOOR)
    b = max(d_baseline, DISTANCE_FLOOR)
    if c > b:
        return -math.log(c / b)
    return math.log(b / c)
