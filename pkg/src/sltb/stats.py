"""Paired nonparametric comparison of candidate and baseline distances."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.stats import norm, rankdata

from .errors import EmptyInput, LengthMismatch, TooFewPairs
from .metrics import log_ratio
from .records import ExplorationRecord

# Effective sample sizes up to this use the exact null distribution.
EXACT_MAX_N = 12
# The exact null is valid for any n, so only an empty comparison is refused.
MIN_PAIRS = 1


@dataclass(frozen=True)
class WilcoxonSummary:
    n_effective: int
    s_plus: float
    s_minus: float
    z: float
    p_two_sided: float
    median_candidate: float
    median_baseline: float
    increment: float

    def to_dict(self) -> dict:
        return asdict(self)


def median(values: Sequence[float]) -> float:
    xs = sorted(values)
    n = len(xs)
    if n == 0:
        raise EmptyInput("median of an empty list")
    mid = n // 2
    if n % 2:
        return float(xs[mid])
    return (xs[mid - 1] + xs[mid]) / 2.0


def _exact_p(ranks: np.ndarray, s_plus: float) -> float:
    """Two-sided p of ``s_plus`` under the sign-flip null, by counting.

    Ranks are doubled so that averaged (half-integer) tie ranks stay integral.
    """
    doubled = np.rint(2.0 * ranks).astype(int)
    total = int(doubled.sum())
    counts = np.zeros(total + 1, dtype=float)
    counts[0] = 1.0
    for r in doubled:
        shifted = np.zeros_like(counts)
        shifted[r:] = counts[: total + 1 - r]
        counts = counts + shifted
    probs = counts / counts.sum()
    s = int(round(2.0 * s_plus))
    lower = probs[: s + 1].sum()
    upper = probs[s:].sum()
    return float(min(1.0, 2.0 * min(lower, upper)))


def wilcoxon_signed_rank(candidate: Sequence[float], baseline: Sequence[float]) -> WilcoxonSummary:
    """Wilcoxon signed-rank test on paired distances.

    Differences are taken as ``baseline - candidate``, so ``s_plus``
    collects the ranks of pairs where the candidate is closer to the
    ground truth and a positive ``increment`` favours the candidate.
    Zero differences are dropped and tied magnitudes get average ranks.
    """
    cand = np.asarray(candidate, dtype=float)
    base = np.asarray(baseline, dtype=float)
    if cand.shape != base.shape:
        raise LengthMismatch(f"{cand.size} candidate values vs {base.size} baseline values")
    if cand.size < MIN_PAIRS:
        raise TooFewPairs(f"need at least {MIN_PAIRS} pairs, got {cand.size}")
    md_c, md_b = median(cand.tolist()), median(base.tolist())

    diff = base - cand
    diff = diff[diff != 0.0]
    n = int(diff.size)
    if n == 0:
        return WilcoxonSummary(0, 0.0, 0.0, 0.0, 1.0, md_c, md_b, 0.0)

    ranks = rankdata(np.abs(diff))
    s_plus = float(ranks[diff > 0].sum())
    s_minus = float(ranks[diff < 0].sum())

    mean = n * (n + 1) / 4.0
    _, tie_counts = np.unique(ranks, return_counts=True)
    var = n * (n + 1) * (2 * n + 1) / 24.0 - float((tie_counts**3 - tie_counts).sum()) / 48.0
    z = (s_plus - mean) / math.sqrt(var) if var > 0 else 0.0

    if n <= EXACT_MAX_N:
        p = _exact_p(ranks, s_plus)
    else:
        p = float(2.0 * norm.sf(abs(z)))
    increment = (s_plus - s_minus) / (s_plus + s_minus)
    return WilcoxonSummary(n, s_plus, s_minus, z, p, md_c, md_b, increment)


@dataclass(frozen=True)
class RatioAggregate:
    """Per-agent and overall mean log ratios for one experiment cell."""

    per_agent_G: dict[int, float]
    per_agent_E: dict[int, float]
    mean_G: float
    mean_E: float


def aggregate_ratios(records: Iterable[ExplorationRecord]) -> RatioAggregate:
    """Average log ratios per agent over explorations, then over agents.

    Unreachable records are skipped.  A cell with no reachable record
    averages to 0.
    """
    by_agent_g: dict[int, list[float]] = defaultdict(list)
    by_agent_e: dict[int, list[float]] = defaultdict(list)
    for rec in records:
        if not rec.reachable:
            continue
        by_agent_g[rec.agent].append(log_ratio(rec.dG_cand, rec.dG_base))
        by_agent_e[rec.agent].append(log_ratio(rec.dE_cand, rec.dE_base))
    per_g = {a: math.fsum(v) / len(v) for a, v in sorted(by_agent_g.items())}
    per_e = {a: math.fsum(v) / len(v) for a, v in sorted(by_agent_e.items())}
    mean_g = math.fsum(per_g.values()) / len(per_g) if per_g else 0.0
    mean_e = math.fsum(per_e.values()) / len(per_e) if per_e else 0.0
    return RatioAggregate(per_g, per_e, mean_g, mean_e)


def histogram(values: Sequence[float], n_bins: int) -> list[tuple[float, float, int]]:
    """Equal-width bins spanning ``[min, max]`` as ``(low, high, count)``."""
    if len(values) == 0:
        raise EmptyInput("histogram of an empty list")
    if n_bins < 1:
        raise ValueError("n_bins must be at least 1")
    counts, edges = np.histogram(np.asarray(values, dtype=float), bins=n_bins)
    return [(float(edges[i]), float(edges[i + 1]), int(counts[i])) for i in range(n_bins)]
