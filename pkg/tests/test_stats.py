import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sltb.errors import EmptyInput, LengthMismatch, TooFewPairs
from sltb.records import ExplorationRecord
from sltb.stats import aggregate_ratios, histogram, median, wilcoxon_signed_rank

from . import oracles


def test_median_examples():
    assert median([1]) == 1
    assert median([1, 2, 3, 4]) == 2.5
    with pytest.raises(EmptyInput):
        median([])


@given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=40))
def test_median_matches_numpy(xs):
    assert median(xs) == pytest.approx(float(np.median(xs)), rel=1e-12, abs=1e-12)


def test_identical_lists_have_no_effective_pairs():
    w = wilcoxon_signed_rank([0.1, 0.2, 0.3, 0.4, 0.5], [0.1, 0.2, 0.3, 0.4, 0.5])
    assert w.n_effective == 0 and w.increment == 0.0 and w.p_two_sided == 1.0


def test_uniformly_closer_candidate():
    w = wilcoxon_signed_rank([1, 2, 3], [2, 3, 4])
    assert (w.s_plus, w.s_minus, w.increment) == (6.0, 0.0, 1.0)
    assert (w.median_candidate, w.median_baseline) == (2.0, 3.0)


def test_input_errors():
    with pytest.raises(LengthMismatch):
        wilcoxon_signed_rank([1, 2, 3], [1, 2])
    with pytest.raises(TooFewPairs):
        wilcoxon_signed_rank([], [])


def test_tied_magnitudes_use_average_ranks():
    w = wilcoxon_signed_rank([0, 0, 0, 0, 0], [1, -1, 2, 2, -3])
    # |diffs| 1,1,2,2,3 -> ranks 1.5,1.5,3.5,3.5,5
    assert w.s_plus == 1.5 + 3.5 + 3.5
    assert w.s_minus == 1.5 + 5


def test_exact_p_values_match_enumeration():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 12)
        base = [rng.random() for _ in range(n)]
        # coarse grid values provoke ties and zero differences
        cand = [round(rng.random() * 4) / 4 for _ in range(n)]
        base = [round(b * 4) / 4 for b in base]
        w = wilcoxon_signed_rank(cand, base)
        expect = oracles.signed_rank_p([b - c for b, c in zip(base, cand)])
        assert w.p_two_sided == pytest.approx(expect, abs=0.005)


def test_ten_pairs_against_enumeration():
    rng = np.random.default_rng(10)
    cand, base = rng.random(10), rng.random(10)
    w = wilcoxon_signed_rank(cand, base)
    assert w.p_two_sided == pytest.approx(oracles.signed_rank_p(base - cand), abs=0.005)


def test_large_sample_uses_the_normal_approximation():
    rng = np.random.default_rng(1)
    cand = rng.random(500)
    base = cand + rng.normal(0.05, 0.2, 500)
    w = wilcoxon_signed_rank(cand, base)
    assert w.z > 0 and w.p_two_sided == pytest.approx(math.erfc(abs(w.z) / math.sqrt(2)), rel=1e-9)


pairs = st.integers(1, 40).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(0, 20).map(lambda k: k / 8), min_size=n, max_size=n),
        st.lists(st.integers(0, 20).map(lambda k: k / 8), min_size=n, max_size=n),
    )
)


@given(pairs)
def test_rank_sums_and_increment(pair):
    cand, base = pair
    w = wilcoxon_signed_rank(cand, base)
    n = w.n_effective
    assert w.s_plus + w.s_minus == pytest.approx(n * (n + 1) / 2, abs=1e-6)
    assert -1.0 <= w.increment <= 1.0
    if n:
        signs = {np.sign(b - c) for b, c in zip(base, cand) if b != c}
        assert (abs(w.increment) == 1.0) == (len(signs) == 1)


@given(pairs)
def test_swapping_roles_is_antisymmetric(pair):
    cand, base = pair
    w, v = wilcoxon_signed_rank(cand, base), wilcoxon_signed_rank(base, cand)
    assert (w.s_plus, w.s_minus) == (v.s_minus, v.s_plus)
    assert w.increment == -v.increment
    assert w.z == -v.z


@given(pairs, st.integers(-5, 5))
def test_common_shift_changes_nothing(pair, k):
    cand, base = pair
    w = wilcoxon_signed_rank(cand, base)
    v = wilcoxon_signed_rank([c + k for c in cand], [b + k for b in base])
    assert (w.s_plus, w.s_minus, w.z) == (v.s_plus, v.s_minus, v.z)


def _rec(agent, expl, g, e, reachable=True):
    return ExplorationRecord(0, 5, 2, expl, "g1", agent, reachable, *(g + e if reachable else (None,) * 4))


def test_ratio_aggregate_examples():
    assert aggregate_ratios([_rec(1, 0, (0.3, 0.3), (0.1, 0.1))]).mean_G == 0.0
    sym = aggregate_ratios([_rec(1, 0, (1.0, 0.5), (1.0, 0.5)), _rec(1, 1, (0.5, 1.0), (0.5, 1.0))])
    assert sym.mean_G == pytest.approx(0.0, abs=1e-15) and sym.mean_E == pytest.approx(0.0, abs=1e-15)


def test_ratio_aggregate_averages_per_agent_then_overall():
    ln2, ln4 = math.log(2), math.log(4)
    recs = [
        _rec(1, 0, (1.0, 0.5), (1.0, 1.0)),   # r_G = ln 2
        _rec(1, 1, (1.0, 0.25), (1.0, 1.0)),  # r_G = ln 4
        _rec(2, 0, (0.5, 1.0), (1.0, 1.0)),   # r_G = -ln 2
        _rec(3, 0, None, None, reachable=False),
    ]
    agg = aggregate_ratios(recs)
    assert agg.per_agent_G == pytest.approx({1: (ln2 + ln4) / 2, 2: -ln2})
    assert agg.mean_G == pytest.approx(((ln2 + ln4) / 2 - ln2) / 2)
    assert agg.mean_E == 0.0
    assert aggregate_ratios([]).mean_G == 0.0


def test_histogram_examples():
    assert [c for _, _, c in histogram([0, 1], 2)] == [1, 1]
    occupied = [c for _, _, c in histogram([0.4] * 7, 5) if c]
    assert occupied == [7]
    with pytest.raises(EmptyInput):
        histogram([], 3)


def test_histogram_of_uniform_samples():
    rng = np.random.default_rng(2)
    bins = histogram(rng.random(10_000).tolist(), 10)
    sigma = math.sqrt(10_000 * 0.1 * 0.9)
    assert all(abs(c - 1000) <= 3 * sigma for _, _, c in bins)
    assert sum(c for _, _, c in bins) == 10_000
    assert bins[0][0] < bins[0][1] == bins[1][0]
