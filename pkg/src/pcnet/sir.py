"""Discrete-time SIR epidemics on the (unweighted) topology of a graph.

One step: every infected node tries to infect each susceptible neighbour
independently with probability ``beta``; then every node that was infected at
the start of the step recovers with probability ``gamma``.  Nodes infected in
this step become infectious in the next one.  A run stops after two
consecutive steps without a new infection, or at ``max_steps``.
"""

from __future__ import annotations

import csv
from dataclasses import asdict, dataclass, field

import numpy as np
from joblib import Parallel, delayed

from .graph import Graph
from .seeding import rng_for

REPORT_STEPS = (2, 4, 6, 8, 10)


@dataclass(frozen=True)
class SirConfig:
    beta: float
    gamma: float = 0.8
    runs: int = 100
    max_steps: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if not 0 <= self.beta <= 1:
            raise ValueError("beta must be in [0, 1]")
        if not 0 <= self.gamma <= 1:
            raise ValueError("gamma must be in [0, 1]")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SirOutcome:
    per_step_new_infections: np.ndarray
    total_infected: int
    steps_elapsed: int
    truncated: bool = False
    # (steps_elapsed + 1) x 3 array of S, I, R counts; row 0 is the initial state
    compartments: np.ndarray | None = None


def _gather_neighbors(indptr: np.ndarray, indices: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    starts = indptr[nodes]
    lens = indptr[nodes + 1] - starts
    total = int(lens.sum())
    if total == 0:
        return indices[:0]
    offs = np.repeat(starts - np.cumsum(lens) + lens, lens) + np.arange(total)
    return indices[offs]


def simulate(g: Graph, seeds, cfg: SirConfig, rng: np.random.Generator, record_states: bool = False) -> SirOutcome:
    seeds = np.unique(np.asarray(seeds, dtype=np.int64))
    if seeds.size == 0:
        raise ValueError("seed set is empty")
    if seeds[0] < 0 or seeds[-1] >= g.n:
        raise ValueError("seed vertex out of range")
    indptr, indices, _ = g.csr
    n = g.n
    # 0 susceptible, 1 infected, 2 recovered
    state = np.zeros(n, dtype=np.int8)
    state[seeds] = 1
    infected = seeds
    counts: list[int] = []
    n_rec = 0
    comps = [(n - seeds.size, seeds.size, 0)] if record_states else None
    quiet = 0
    step = 0
    while quiet < 2 and step < cfg.max_steps:
        step += 1
        if infected.size and cfg.beta > 0:
            nbrs = _gather_neighbors(indptr, indices, infected)
            targets = nbrs[state[nbrs] == 0]
            hit = targets[rng.random(targets.size) < cfg.beta]
            new = np.unique(hit)
        else:
            new = infected[:0]
        if infected.size:
            rec = rng.random(infected.size) < cfg.gamma
            state[infected[rec]] = 2
            n_rec += int(rec.sum())
            infected = infected[~rec]
        state[new] = 1
        infected = np.concatenate([infected, new])
        counts.append(int(new.size))
        quiet = quiet + 1 if new.size == 0 else 0
        if record_states:
            comps.append((n - n_rec - infected.size, infected.size, n_rec))
    per_step = np.asarray(counts, dtype=np.int64)
    return SirOutcome(
        per_step_new_infections=per_step,
        total_infected=int(seeds.size + per_step.sum()),
        steps_elapsed=step,
        truncated=quiet < 2,
        compartments=np.asarray(comps, dtype=np.int64) if record_states else None,
    )


def _vertex_runs(g: Graph, v: int, cfg: SirConfig) -> list[SirOutcome]:
    return [simulate(g, [v], cfg, rng_for(cfg.seed, v, r)) for r in range(cfg.runs)]


def node_influence(g: Graph, v: int, cfg: SirConfig) -> float:
    """Mean number of ever-infected nodes over ``cfg.runs`` epidemics started at ``v``."""
    return float(np.mean([o.total_infected for o in _vertex_runs(g, v, cfg)]))


def influence_vector(g: Graph, cfg: SirConfig, jobs: int = 1) -> np.ndarray:
    """``node_influence`` for every vertex."""
    vs = list(range(g.n))
    if jobs > 1:
        vals = Parallel(n_jobs=jobs)(delayed(node_influence)(g, v, cfg) for v in vs)
    else:
        vals = [node_influence(g, v, cfg) for v in vs]
    return np.asarray(vals, dtype=np.float64)


@dataclass
class SeverityProfile:
    """Per-step mean new infections and mean total, averaged over runs then over the seed set."""

    mean_new_per_step: np.ndarray
    total: float
    vertex_totals: np.ndarray = field(repr=False)
    vertices: np.ndarray = field(repr=False)
    truncated_runs: int = 0

    def at_step(self, step: int) -> float:
        return float(self.mean_new_per_step[step - 1]) if step <= self.mean_new_per_step.size else 0.0

    def report(self, steps=REPORT_STEPS) -> dict:
        out = {f"step_{s}": self.at_step(s) for s in steps}
        out["total"] = self.total
        return out

    def to_csv(self, target) -> None:
        """``step,mean_new_infections`` rows followed by a ``total`` row."""
        close = not hasattr(target, "write")
        fh = open(target, "w", newline="", encoding="utf-8") if close else target
        try:
            w = csv.writer(fh)
            w.writerow(["step", "mean_new_infections"])
            for s, x in enumerate(self.mean_new_per_step.tolist(), start=1):
                w.writerow([s, repr(x)])
            w.writerow(["total", repr(self.total)])
        finally:
            if close:
                fh.close()


def _vertex_profile(g: Graph, v: int, cfg: SirConfig) -> tuple[np.ndarray, float, int]:
    outs = _vertex_runs(g, v, cfg)
    length = max(o.steps_elapsed for o in outs)
    acc = np.zeros(length)
    for o in outs:
        acc[: o.per_step_new_infections.size] += o.per_step_new_infections
    return acc / cfg.runs, float(np.mean([o.total_infected for o in outs])), sum(o.truncated for o in outs)


def trigger_set_severity(g: Graph, vertices, cfg: SirConfig, jobs: int = 1) -> SeverityProfile:
    vertices = np.unique(np.asarray(vertices, dtype=np.int64))
    if vertices.size == 0:
        raise ValueError("trigger set is empty")
    vs = vertices.tolist()
    if jobs > 1:
        parts = Parallel(n_jobs=jobs)(delayed(_vertex_profile)(g, v, cfg) for v in vs)
    else:
        parts = [_vertex_profile(g, v, cfg) for v in vs]
    length = max(p[0].size for p in parts)
    acc = np.zeros(length)
    for prof, _, _ in parts:
        acc[: prof.size] += prof
    totals = np.array([p[1] for p in parts])
    return SeverityProfile(
        mean_new_per_step=acc / len(parts),
        total=float(totals.mean()),
        vertex_totals=totals,
        vertices=vertices,
        truncated_runs=sum(p[2] for p in parts),
    )
