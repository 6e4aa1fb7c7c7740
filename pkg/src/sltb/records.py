"""Exploration records and their CSV form."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, TextIO

from .errors import SchemaError

HEADER = (
    "run",
    "pl",
    "nb",
    "exploration",
    "candidate",
    "agent",
    "reachable",
    "dG_base",
    "dG_cand",
    "dE_base",
    "dE_cand",
)


def fmt_float(x: float) -> str:
    return format(x, ".17g")


@dataclass(frozen=True, slots=True)
class ExplorationRecord:
    """Paired baseline/candidate distances for one agent in one exploration."""

    run: int
    pl: int
    nb: int
    exploration: int
    candidate: str
    agent: int
    reachable: bool
    dG_base: Optional[float] = None
    dG_cand: Optional[float] = None
    dE_base: Optional[float] = None
    dE_cand: Optional[float] = None

    @property
    def key(self) -> tuple:
        return (self.run, self.pl, self.nb, self.exploration, self.candidate, self.agent)

    @property
    def cell(self) -> tuple:
        return (self.run, self.pl, self.nb, self.candidate)

    def to_row(self) -> list[str]:
        head = [str(self.run), str(self.pl), str(self.nb), str(self.exploration),
                self.candidate, str(self.agent)]
        if not self.reachable:
            return head + ["0", "", "", "", ""]
        return head + ["1"] + [fmt_float(v) for v in
                               (self.dG_base, self.dG_cand, self.dE_base, self.dE_cand)]

    @classmethod
    def from_row(cls, row: list[str]) -> "ExplorationRecord":
        if len(row) != len(HEADER):
            raise SchemaError(f"expected {len(HEADER)} fields, got {len(row)}: {row!r}")
        try:
            run, pl, nb, expl = (int(x) for x in row[:4])
            agent = int(row[5])
            if row[6] not in ("0", "1"):
                raise SchemaError(f"reachable flag must be 0 or 1: {row!r}")
            reachable = row[6] == "1"
            if reachable:
                dists = [float(x) for x in row[7:]]
            else:
                if any(row[7:]):
                    raise SchemaError(f"unreachable record carries distances: {row!r}")
                dists = [None] * 4
        except ValueError as exc:
            raise SchemaError(f"malformed record {row!r}: {exc}") from None
        return cls(run, pl, nb, expl, row[4], agent, reachable, *dists)


def write_records(records: Iterable[ExplorationRecord], fh: TextIO) -> int:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(HEADER)
    n = 0
    for rec in records:
        w.writerow(rec.to_row())
        n += 1
    return n


def read_records(fh: TextIO) -> Iterator[ExplorationRecord]:
    reader = csv.reader(fh)
    header = next(reader, None)
    if header is None or tuple(header) != HEADER:
        raise SchemaError(f"bad records header: {header!r}")
    for row in reader:
        yield ExplorationRecord.from_row(row)


def records_to_csv(records: Iterable[ExplorationRecord]) -> str:
    buf = io.StringIO()
    write_records(records, buf)
    return buf.getvalue()
