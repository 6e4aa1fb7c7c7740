"""Summaries, trend aggregates and histograms computed from records."""

from __future__ import annotations

import csv
import json
import math
from collections import defaultdict
from typing import Iterable, TextIO

import numpy as np

from .graphical import DiscountVariant
from .errors import TooFewPairs
from .records import ExplorationRecord, fmt_float
from .stats import aggregate_ratios, histogram, wilcoxon_signed_rank

METRICS = {"geometric": ("dG_cand", "dG_base"), "expected": ("dE_cand", "dE_base")}
BASELINE_TAG = "josang"
HIST_BINS = 50

_ORDER = {v.value: i for i, v in enumerate(DiscountVariant)}


def _by_candidate(records: Iterable[ExplorationRecord]) -> dict[str, list[ExplorationRecord]]:
    groups: dict[str, list[ExplorationRecord]] = defaultdict(list)
    for rec in records:
        groups[rec.candidate].append(rec)
    return {k: groups[k] for k in sorted(groups, key=lambda t: (_ORDER.get(t, 99), t))}


def summarize_records(records: Iterable[ExplorationRecord]) -> dict:
    """Wilcoxon comparison per candidate and metric over reachable records."""
    out = {}
    for tag, recs in _by_candidate(records).items():
        reach = [r for r in recs if r.reachable]
        entry = {"candidate": tag, "n_records": len(recs), "n_reachable": len(reach)}
        for metric, (c_attr, b_attr) in METRICS.items():
            cand = [getattr(r, c_attr) for r in reach]
            base = [getattr(r, b_attr) for r in reach]
            try:
                entry[metric] = wilcoxon_signed_rank(cand, base).to_dict()
            except TooFewPairs:
                entry[metric] = None
        out[tag] = entry
    return {"candidates": out}


def dump_summary(summary: dict, fh: TextIO) -> None:
    json.dump(summary, fh, indent=2, sort_keys=True)
    fh.write("\n")


def table_rows(summary: dict, metric: str) -> list[dict]:
    """Rows shaped like the published tables, best increment first."""
    rows = []
    for tag, entry in summary["candidates"].items():
        w = entry[metric]
        if w is None:
            continue
        rows.append({
            "operator": tag,
            "median_candidate": w["median_candidate"],
            "median_baseline": w["median_baseline"],
            "s_minus": w["s_minus"],
            "s_plus": w["s_plus"],
            "z": w["z"],
            "p": w["p_two_sided"],
            "increment": w["increment"],
        })
    rows.sort(key=lambda r: -r["increment"])
    return rows


def format_table(summary: dict) -> str:
    lines = ["metric\toperator\tmd_cand\tmd_base\ts_minus\ts_plus\tz\tp\tincrement"]
    for metric in METRICS:
        for r in table_rows(summary, metric):
            lines.append("\t".join([
                metric, r["operator"], f"{r['median_candidate']:.3f}", f"{r['median_baseline']:.3f}",
                f"{r['s_minus']:.4g}", f"{r['s_plus']:.4g}", f"{r['z']:.3f}", f"{r['p']:.3g}",
                f"{r['increment']:+.3f}",
            ]))
    return "\n".join(lines) + "\n"


def cell_means(records: Iterable[ExplorationRecord]) -> dict[tuple, tuple[float, float]]:
    """Mean log ratios ``(r_G, r_E)`` per (run, pl, nb, candidate) cell."""
    cells: dict[tuple, list[ExplorationRecord]] = defaultdict(list)
    for rec in records:
        cells[rec.cell].append(rec)
    out = {}
    for key in sorted(cells):
        agg = aggregate_ratios(cells[key])
        out[key] = (agg.mean_G, agg.mean_E)
    return out


def aggregate_rows(records: Iterable[ExplorationRecord]) -> list[tuple]:
    """Mean and sample stddev of cell mean ratios against P^L and against #_B."""
    means = cell_means(records)
    groups: dict[tuple, list[float]] = defaultdict(list)
    for (run, pl, nb, cand), (r_g, r_e) in means.items():
        for axis, value in (("pl", pl), ("nb", nb)):
            groups[(axis, value, cand, "geometric")].append(r_g)
            groups[(axis, value, cand, "expected")].append(r_e)
    rows = []
    for key in sorted(groups, key=lambda k: (k[0] != "pl", k[1], _ORDER.get(k[2], 99), k[3])):
        vals = np.asarray(groups[key])
        std = float(vals.std(ddof=1)) if vals.size > 1 else 0.0
        rows.append((*key, math.fsum(vals.tolist()) / vals.size, std))
    return rows


def write_aggregates(rows: list[tuple], fh: TextIO) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["pl_or_nb", "axis_value", "candidate", "metric", "mean", "stddev"])
    for axis, value, cand, metric, mean, std in rows:
        w.writerow([axis, value, cand, metric, fmt_float(mean), fmt_float(std)])


def histograms(records: Iterable[ExplorationRecord], n_bins: int = HIST_BINS) -> dict[tuple[str, str], list]:
    """Distance histograms per candidate and metric, plus the shared baseline."""
    out = {}
    groups = _by_candidate(records)
    for tag, recs in groups.items():
        reach = [r for r in recs if r.reachable]
        if not reach:
            continue
        for metric, (c_attr, b_attr) in METRICS.items():
            out[(tag, metric)] = histogram([getattr(r, c_attr) for r in reach], n_bins)
            if (BASELINE_TAG, metric) not in out:
                # baselines coincide across candidates sharing a simulation pass
                out[(BASELINE_TAG, metric)] = histogram([getattr(r, b_attr) for r in reach], n_bins)
    return out


def write_histogram(bins: list, fh: TextIO) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["bin_low", "bin_high", "count"])
    for lo, hi, count in bins:
        w.writerow([fmt_float(lo), fmt_float(hi), count])
