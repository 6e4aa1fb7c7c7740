"""Command-line experiment runner.

    sltb --pl 5,10 --nb 2,5 --runs 1 --candidates g1,naive --out results/
    sltb --summarize results/records.csv --out results/

Standard output carries only the tab-separated result table; progress
goes to standard error.
"""

from __future__ import annotations

import argparse
import datetime as dt
import json
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .errors import InvariantViolation, SchemaError
from .graphical import ALL_VARIANTS, DiscountVariant
from .records import read_records, write_records
from .report import (
    aggregate_rows,
    dump_summary,
    format_table,
    histograms,
    summarize_records,
    write_aggregates,
    write_histogram,
)
from .sim import SimConfig, run_experiment

log = logging.getLogger("sltb")

EXIT_IO = 1
EXIT_INVARIANT = 2
EXIT_USAGE = 64

DEFAULTS = {
    "agents": 50,
    "pl": [5, 10, 15, 20, 25],
    "nb": list(range(2, 30, 3)),
    "runs": 10,
    "explorations": 25,
    "candidates": [v.value for v in ALL_VARIANTS],
    "seed": 20131,
    "jobs": 1,
}


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sltb", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="JSON file whose keys mirror the long flag names")
    p.add_argument("--agents", help="number of agents (default 50)")
    p.add_argument("--pl", help="comma list of connection probabilities in percent")
    p.add_argument("--nb", help="comma list of bootstrap query counts")
    p.add_argument("--runs", help="independent runs (networks per P^L value)")
    p.add_argument("--explorations", help="explorations per network")
    p.add_argument("--candidates", help="subset of naive,g1,g2,g3")
    p.add_argument("--seed", help="master seed")
    p.add_argument("--jobs", help="worker processes")
    p.add_argument("--rebootstrap", action="store_true",
                   help="re-run bootstrapping before every exploration")
    p.add_argument("--out", default="sltb-out", help="output directory (env SLTB_OUT overrides)")
    p.add_argument("--summarize", metavar="FILE", help="re-analyse an existing records.csv")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _int_list(flag: str, value) -> list[int]:
    items = value if isinstance(value, list) else str(value).split(",")
    try:
        out = [int(str(x).strip()) for x in items if str(x).strip()]
    except ValueError:
        raise UsageError(flag, f"expected comma-separated integers, got {value!r}") from None
    if not out:
        raise UsageError(flag, "empty list")
    return out


def _int(flag: str, value, minimum: int) -> int:
    try:
        v = int(value)
    except (TypeError, ValueError):
        raise UsageError(flag, f"expected an integer, got {value!r}") from None
    if v < minimum:
        raise UsageError(flag, f"must be at least {minimum}, got {v}")
    return v


def parse_config(args: argparse.Namespace, config_file: Optional[str] = None) -> list[SimConfig]:
    """Expand flags (over an optional JSON file, over defaults) into the config grid."""
    settings = dict(DEFAULTS)
    config_file = config_file or getattr(args, "config", None)
    if config_file:
        try:
            with open(config_file) as fh:
                loaded = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError("--config", str(exc)) from None
        unknown = set(loaded) - set(DEFAULTS)
        if unknown:
            raise UsageError("--config", f"unknown keys {sorted(unknown)}")
        settings.update(loaded)
    for name in DEFAULTS:
        value = getattr(args, name, None)
        if value is not None:
            settings[name] = value

    agents = _int("--agents", settings["agents"], 2)
    pls = _int_list("--pl", settings["pl"])
    for pl in pls:
        if not 0 <= pl <= 100:
            raise UsageError("--pl", f"percent {pl} outside [0, 100]")
    nbs = _int_list("--nb", settings["nb"])
    for nb in nbs:
        if nb < 1:
            raise UsageError("--nb", f"bootstrap count {nb} must be positive")
    runs = _int("--runs", settings["runs"], 1)
    explorations = _int("--explorations", settings["explorations"], 1)
    seed = _int("--seed", settings["seed"], 0)
    raw = settings["candidates"]
    tags = raw if isinstance(raw, list) else str(raw).split(",")
    try:
        candidates = [DiscountVariant(str(t).strip().lower()) for t in tags if str(t).strip()]
    except ValueError:
        raise UsageError("--candidates", f"expected a subset of naive,g1,g2,g3, got {raw!r}") from None
    if not candidates:
        raise UsageError("--candidates", "empty list")
    rebootstrap = bool(getattr(args, "rebootstrap", False))

    return [
        SimConfig(n_agents=agents, pl_percent=pl, n_bootstrap=nb, n_explorations=explorations,
                  candidate=v, master_seed=seed, run_id=run, rebootstrap=rebootstrap)
        for run in range(runs) for pl in pls for nb in nbs for v in candidates
    ]


def _write_reports(records, out: Path) -> tuple[dict, dict[str, str]]:
    paths = {}
    summary = summarize_records(records)
    paths["summary"] = str(out / "summary.json")
    with open(paths["summary"], "w") as fh:
        dump_summary(summary, fh)
    paths["aggregates"] = str(out / "aggregates.csv")
    with open(paths["aggregates"], "w") as fh:
        write_aggregates(aggregate_rows(records), fh)
    for (tag, metric), bins in histograms(records).items():
        name = f"hist_{tag}_{metric}"
        paths[name] = str(out / f"{name}.csv")
        with open(paths[name], "w") as fh:
            write_histogram(bins, fh)
    return summary, paths


def _load_records(path) -> list:
    with open(path, newline="") as fh:
        return list(read_records(fh))


def run(configs: Sequence[SimConfig], out: Path, jobs: int = 1) -> int:
    """Simulate the grid and write every artifact into ``out``."""
    started = dt.datetime.now(dt.timezone.utc).isoformat()
    out.mkdir(parents=True, exist_ok=True)

    def progress(i, total):
        log.info("cell %d/%d done", i, total)

    records_path = out / "records.csv"
    with open(records_path, "w", newline="") as fh:
        n_written = write_records(run_experiment(configs, jobs=jobs, progress=progress), fh)
    # reports are computed from the persisted file so --summarize reproduces them exactly
    records = _load_records(records_path)
    summary, paths = _write_reports(records, out)
    paths["records"] = str(records_path)

    counts: dict[str, int] = {}
    for rec in records:
        key = f"run={rec.run},pl={rec.pl},nb={rec.nb},candidate={rec.candidate}"
        counts[key] = counts.get(key, 0) + 1
    manifest = {
        "version": __version__,
        "master_seed": configs[0].master_seed,
        "started": started,
        "finished": dt.datetime.now(dt.timezone.utc).isoformat(),
        "grid": [
            {"run": c.run_id, "pl": c.pl_percent, "nb": c.n_bootstrap, "candidate": c.candidate.value,
             "agents": c.n_agents, "explorations": c.n_explorations, "rebootstrap": c.rebootstrap}
            for c in configs
        ],
        "record_count": n_written,
        "record_counts": counts,
        "files": paths,
    }
    with open(out / "manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    sys.stdout.write(format_table(summary))
    return 0


def summarize(records_path, out: Path) -> dict:
    """Recompute summary, aggregates and histograms from a records file."""
    records = _load_records(records_path)
    out.mkdir(parents=True, exist_ok=True)
    summary, _ = _write_reports(records, out)
    sys.stdout.write(format_table(summary))
    return summary


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    out = Path(os.environ.get("SLTB_OUT") or args.out)
    try:
        if args.summarize:
            summarize(args.summarize, out)
            return 0
        configs = parse_config(args)
        jobs = _int("--jobs", args.jobs if args.jobs is not None else DEFAULTS["jobs"], 1)
        return run(configs, out, jobs=jobs)
    except UsageError as exc:
        print(f"sltb: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"sltb: invariant violated at {exc.key}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except SchemaError as exc:
        print(f"sltb: bad records file: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"sltb: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
