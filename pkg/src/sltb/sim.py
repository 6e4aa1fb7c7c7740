"""Seeded simulation of a trust network explored through lying agents.

Each experiment cell builds a random directed network, lets every agent
estimate its neighbours' truthfulness from repeated queries
(bootstrapping), and then has randomly chosen explorers discover the rest
of the network.  Unknown agents are assessed by discounting and fusing
the opinions reported by the explorer's connections, once with Jøsang's
operators (the baseline) and once with each candidate operator.  Both
pipelines consume the same answers.

Randomness is split into independent streams keyed by
``(phase, run, pl, nb, exploration)`` so any exploration can be
reproduced or computed in parallel without shared state.
"""

from __future__ import annotations

import itertools
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from .errors import AllWeightsZero, DomainError, InvariantViolation
from .geometry import in_admissible_space
from .graphical import DiscountVariant, WeightedOpinion, discount, fuse_weighted
from .josang import discount_josang, fuse_many_josang
from .metrics import expected_distance, geometric_distance
from .opinion import VACUOUS, EvidenceCount, Opinion, expected_value, ideal_opinion, opinion_from_evidence
from .records import ExplorationRecord

log = logging.getLogger(__name__)

PHASE_NETWORK = 1
PHASE_BOOTSTRAP = 2
PHASE_EXPLORE = 3


@dataclass(frozen=True)
class AgentSpec:
    id: int
    p_truth: float
    neighbors: frozenset[int]

    def __post_init__(self):
        if self.id in self.neighbors:
            raise DomainError(f"agent {self.id} lists itself as a neighbour")
        if not (0.0 <= self.p_truth <= 1.0):
            raise DomainError(f"p_truth {self.p_truth!r} outside [0, 1]")


@dataclass(frozen=True)
class SimConfig:
    n_agents: int = 50
    pl_percent: int = 10
    n_bootstrap: int = 2
    n_explorations: int = 25
    candidate: DiscountVariant = DiscountVariant.G1
    master_seed: int = 0
    run_id: int = 0
    rebootstrap: bool = False

    def __post_init__(self):
        if self.n_agents < 2:
            raise DomainError("need at least two agents")
        if not (0 <= self.pl_percent <= 100):
            raise DomainError(f"pl_percent {self.pl_percent} outside [0, 100]")
        if self.n_bootstrap < 1 or self.n_explorations < 1 or self.run_id < 0:
            raise DomainError("n_bootstrap and n_explorations must be positive, run_id nonnegative")

    @property
    def cell(self) -> tuple[int, int, int]:
        return (self.run_id, self.pl_percent, self.n_bootstrap)


KnowledgeBase = dict[int, Opinion]


def stream(master_seed: int, phase: int, run: int = 0, pl: int = 0, nb: int = 0, idx: int = 0) -> random.Random:
    """Independent generator for one phase of one experiment cell."""
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=(phase, run, pl, nb, idx))
    return random.Random(int.from_bytes(ss.generate_state(4, np.uint32).tobytes(), "little"))


def build_network(cfg: SimConfig, rng: random.Random) -> list[AgentSpec]:
    """Agents with uniform truthfulness and independent directed links."""
    n = cfg.n_agents
    p_link = cfg.pl_percent / 100.0
    p_truth = [rng.random() for _ in range(n)]
    agents = []
    for x in range(n):
        nbrs = frozenset(y for y in range(n) if y != x and rng.random() < p_link)
        agents.append(AgentSpec(x, p_truth[x], nbrs))
    return agents


def bootstrap(network: Sequence[AgentSpec], n_bootstrap: int, rng: random.Random) -> list[KnowledgeBase]:
    """Each agent queries each neighbour ``n_bootstrap`` times and counts lies."""
    kbs: list[KnowledgeBase] = []
    for agent in network:
        kb: KnowledgeBase = {}
        for y in sorted(agent.neighbors):
            p = network[y].p_truth
            truthful = sum(1 for _ in range(n_bootstrap) if rng.random() < p)
            kb[y] = opinion_from_evidence(EvidenceCount(truthful, n_bootstrap - truthful))
        kbs.append(kb)
    return kbs


def random_opinion(rng: random.Random) -> Opinion:
    """Uniform draw on the simplex from two sorted uniforms."""
    u1, u2 = sorted((rng.random(), rng.random()))
    return Opinion(u1, u2 - u1, 1.0 - u2)


def _reveal_connections(agent: AgentSpec, rng: random.Random) -> list[int]:
    nbrs = sorted(agent.neighbors)
    if rng.random() < agent.p_truth or not nbrs:
        return nbrs
    while True:
        subset = [y for y in nbrs if rng.random() < 0.5]
        if len(subset) < len(nbrs):
            return subset


def _answer_opinion(agent: AgentSpec, kb: KnowledgeBase, z: int, rng: random.Random) -> Opinion:
    true = kb.get(z, VACUOUS)
    if rng.random() < agent.p_truth:
        return true
    while True:
        lie = random_opinion(rng)
        if lie != true:
            return lie


@dataclass
class _Derivation:
    baseline: Opinion
    candidates: dict[DiscountVariant, Opinion] = field(default_factory=dict)


def _fuse_candidate(items: list[WeightedOpinion]) -> Opinion:
    try:
        return fuse_weighted(items)
    except AllWeightsZero:
        # every source is pure disbelief; fall back to the unweighted mean
        return fuse_weighted([WeightedOpinion(it.opinion, 1.0) for it in items])


def explore(
    network: Sequence[AgentSpec],
    kbs: Sequence[KnowledgeBase],
    explorer: int,
    candidates: Union[DiscountVariant, Sequence[DiscountVariant]],
    rng: random.Random,
    *,
    cell: tuple[int, int, int] = (0, 0, 0),
    exploration_idx: int = 0,
    max_rounds: Optional[int] = None,
) -> list[ExplorationRecord]:
    """Run one exploration from ``explorer`` and return its records.

    One record per candidate is emitted for every agent other than the
    explorer.  Direct neighbours are judged by the bootstrapped opinion,
    which both pipelines share, so their paired distances coincide.
    Agents never found get an unreachable record.
    """
    if isinstance(candidates, DiscountVariant):
        candidates = [candidates]
    candidates = list(candidates)
    n = len(network)
    if max_rounds is None:
        max_rounds = 2 * n
    run, pl, nb = cell

    known: set[int] = set(network[explorer].neighbors)
    ledger_base: KnowledgeBase = dict(kbs[explorer])
    ledger_cand = {v: dict(kbs[explorer]) for v in candidates}
    derived: dict[int, _Derivation] = {}

    quiet = 0
    rounds = 0
    while quiet < 2 and rounds < max_rounds:
        rounds += 1
        reporters: dict[int, list[int]] = {}
        for y in sorted(known):
            for z in _reveal_connections(network[y], rng):
                if z != explorer and z not in known:
                    reporters.setdefault(z, []).append(y)

        for z in sorted(reporters):
            ys = reporters[z]
            answers = [_answer_opinion(network[y], kbs[y], z, rng) for y in ys]
            base = fuse_many_josang(discount_josang(ledger_base[y], a) for y, a in zip(ys, answers))
            der = _Derivation(base)
            for v in candidates:
                ledger = ledger_cand[v]
                items = []
                for y, a in zip(ys, answers):
                    trust = ledger[y]
                    w = discount(trust, a, v)
                    if not in_admissible_space(w, trust):
                        raise InvariantViolation(
                            f"{v.value}: discounted opinion {w} believes more than trust {trust}",
                            key=(run, pl, nb, exploration_idx, v.value, z),
                        )
                    items.append(WeightedOpinion(w, expected_value(trust)))
                der.candidates[v] = _fuse_candidate(items)
            derived[z] = der

        for z, der in ((z, derived[z]) for z in reporters):
            ledger_base[z] = der.baseline
            for v in candidates:
                ledger_cand[v][z] = der.candidates[v]
        known.update(reporters)
        quiet = quiet + 1 if not reporters else 0

    records = []
    for v in candidates:
        for z in range(n):
            if z == explorer:
                continue
            key = (run, pl, nb, exploration_idx, v.value, z)
            if z in derived:
                der = derived[z]
                base, cand = der.baseline, der.candidates[v]
            elif z in kbs[explorer]:
                base = cand = kbs[explorer][z]
            else:
                records.append(ExplorationRecord(*key, reachable=False))
                continue
            ideal = ideal_opinion(network[z].p_truth)
            records.append(ExplorationRecord(
                *key,
                reachable=True,
                dG_base=geometric_distance(base, ideal),
                dG_cand=geometric_distance(cand, ideal),
                dE_base=expected_distance(base, ideal),
                dE_cand=expected_distance(cand, ideal),
            ))
    return records


@dataclass(frozen=True)
class _CellJob:
    n_agents: int
    pl: int
    nb: int
    run: int
    n_explorations: int
    master_seed: int
    rebootstrap: bool
    candidates: tuple[DiscountVariant, ...]


def _run_cell(job: _CellJob) -> list[ExplorationRecord]:
    net_cfg = SimConfig(n_agents=job.n_agents, pl_percent=job.pl, n_bootstrap=job.nb,
                        n_explorations=job.n_explorations, master_seed=job.master_seed, run_id=job.run)
    # one network per (run, pl), shared by every bootstrap length
    network = build_network(net_cfg, stream(job.master_seed, PHASE_NETWORK, job.run, job.pl))
    kbs = None
    if not job.rebootstrap:
        kbs = bootstrap(network, job.nb, stream(job.master_seed, PHASE_BOOTSTRAP, job.run, job.pl, job.nb))
    out: list[ExplorationRecord] = []
    for idx in range(job.n_explorations):
        if job.rebootstrap:
            kbs = bootstrap(network, job.nb,
                            stream(job.master_seed, PHASE_BOOTSTRAP, job.run, job.pl, job.nb, idx + 1))
        rng = stream(job.master_seed, PHASE_EXPLORE, job.run, job.pl, job.nb, idx)
        explorer = rng.randrange(job.n_agents)
        out.extend(explore(network, kbs, explorer, job.candidates, rng,
                           cell=(job.run, job.pl, job.nb), exploration_idx=idx))
    return out


def _jobs(configs: Iterable[SimConfig]) -> list[_CellJob]:
    groups: dict[tuple, set[DiscountVariant]] = {}
    for cfg in configs:
        key = (cfg.n_agents, cfg.pl_percent, cfg.n_bootstrap, cfg.run_id,
               cfg.n_explorations, cfg.master_seed, cfg.rebootstrap)
        groups.setdefault(key, set()).add(cfg.candidate)
    order = {v: i for i, v in enumerate(DiscountVariant)}
    return [_CellJob(*key, tuple(sorted(vs, key=order.__getitem__)))
            for key, vs in sorted(groups.items(), key=lambda kv: kv[0])]


def run_experiment(configs: Iterable[SimConfig], jobs: int = 1, progress=None) -> Iterator[ExplorationRecord]:
    """Simulate every configuration and yield records in key order.

    Configurations differing only in ``candidate`` share one simulation
    pass, so their baselines coincide.  Output does not depend on
    ``jobs``.
    """
    cell_jobs = _jobs(configs)
    if not cell_jobs:
        raise DomainError("empty configuration grid")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_run_cell, cell_jobs, chunksize=1)
            chunks = list(_tick(results, len(cell_jobs), progress))
    else:
        chunks = list(_tick(map(_run_cell, cell_jobs), len(cell_jobs), progress))
    yield from sorted(itertools.chain.from_iterable(chunks), key=lambda r: r.key)


def _tick(results, total, progress):
    for i, chunk in enumerate(results, 1):
        if progress is not None:
            progress(i, total)
        yield chunk
