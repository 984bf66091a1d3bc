"""Perturb-and-combine scoring: score M perturbed copies of a graph and average.

Realization ``m`` (1-based) is generated from ``mix64(seed, m)`` and the
per-vertex mean is accumulated in increasing ``m``, so the result is
bit-identical for any number of workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed

from .errors import ConvergenceError, DegenerateInputError, RealizationError
from .graph import Graph
from .perturb import PerturbConfig, Perturber
from .ranking import rank_from_scores
from .scoring import SCORERS, ScoreVector, score


@dataclass(frozen=True)
class PcConfig:
    M: int
    perturb: PerturbConfig
    scorer: str = "cu"
    master_seed: int | None = None

    def __post_init__(self):
        if int(self.M) < 1:
            raise ValueError("M must be >= 1")
        if self.scorer not in SCORERS:
            raise ValueError(f"unknown scorer {self.scorer!r}")

    @property
    def seed(self) -> int:
        return self.perturb.seed if self.master_seed is None else self.master_seed

    def to_dict(self) -> dict:
        return {"M": self.M, "scorer": self.scorer, "seed": self.seed, **self.perturb.to_dict()}


def combine(rows) -> np.ndarray:
    """Per-vertex arithmetic mean of score rows, summed in row order."""
    rows = list(rows)
    if not rows:
        raise ValueError("nothing to combine")
    acc = np.zeros_like(np.asarray(rows[0], dtype=np.float64))
    for r in rows:
        acc += np.asarray(r, dtype=np.float64)
    return acc / len(rows)


def _score_chunk(g: Graph, cfg: PcConfig, indices: list[int], scorer_kw: dict) -> list[np.ndarray]:
    pert = Perturber(g, PerturbConfig(**{**cfg.perturb.to_dict(), "seed": cfg.seed}))
    out = []
    for m in indices:
        h, _ = pert.realize(m)
        try:
            out.append(score(h, cfg.scorer, **scorer_kw).values)
        except ConvergenceError as exc:
            raise RealizationError(m, exc) from exc
    return out


def realization_scores(g: Graph, cfg: PcConfig, jobs: int = 1, scorer_kw: dict | None = None) -> np.ndarray:
    """The M x n matrix of per-realization scores, row ``m-1`` for realization ``m``."""
    scorer_kw = scorer_kw or {}
    idx = list(range(1, cfg.M + 1))
    jobs = max(1, min(int(jobs), cfg.M))
    if jobs == 1:
        rows = _score_chunk(g, cfg, idx, scorer_kw)
    else:
        chunks = [idx[i::jobs] for i in range(jobs)]
        parts = Parallel(n_jobs=jobs, backend="loky")(delayed(_score_chunk)(g, cfg, c, scorer_kw) for c in chunks)
        by_m = {}
        for c, p in zip(chunks, parts):
            by_m.update(zip(c, p))
        rows = [by_m[m] for m in idx]
    return np.vstack(rows) if rows else np.zeros((0, g.n))


def pc_scores(g: Graph, cfg: PcConfig, jobs: int = 1, scorer_kw: dict | None = None) -> ScoreVector:
    return ScoreVector(cfg.scorer, combine(realization_scores(g, cfg, jobs, scorer_kw)), graph_tag="pc")


# ---------------------------------------------------------------- trigger sets

TRIGGER_KINDS = ("main_core_after_ceiling", "top_k", "top_fraction")


@dataclass(frozen=True)
class TriggerPolicy:
    kind: str = "main_core_after_ceiling"
    k: int | None = None
    fraction: float | None = None
    # "ceil" or "half_up"; only used by main_core_after_ceiling
    rounding: str = "ceil"

    def __post_init__(self):
        if self.kind not in TRIGGER_KINDS:
            raise ValueError(f"unknown trigger policy {self.kind!r}")
        if self.kind == "top_k" and (self.k is None or self.k < 1):
            raise ValueError("top_k needs k >= 1")
        if self.kind == "top_fraction" and (self.fraction is None or not 0 < self.fraction <= 1):
            raise ValueError("top_fraction needs 0 < fraction <= 1")
        if self.rounding not in ("ceil", "half_up"):
            raise ValueError("rounding must be 'ceil' or 'half_up'")

    @classmethod
    def from_dict(cls, d: dict) -> "TriggerPolicy":
        return cls(**{k: d[k] for k in ("kind", "k", "fraction", "rounding") if k in d})

    @classmethod
    def default_for(cls, scorer: str, setting: str = "social") -> "TriggerPolicy":
        if scorer in ("cu", "cw"):
            return cls("main_core_after_ceiling")
        if setting == "keywords":
            return cls("top_fraction", fraction=1 / 3)
        return cls("top_k", k=100)


def _round_scores(values: np.ndarray, rounding: str) -> np.ndarray:
    if rounding == "ceil":
        return np.ceil(values)
    return np.floor(values + 0.5)


def extract_trigger_set(scores, policy: TriggerPolicy) -> np.ndarray:
    """Vertex ids selected by ``policy``, in ascending id order."""
    values = np.asarray(getattr(scores, "values", scores), dtype=np.float64)
    n = values.size
    if n == 0:
        raise DegenerateInputError("no vertices to select from")
    if policy.kind == "main_core_after_ceiling":
        r = _round_scores(values, policy.rounding)
        return np.flatnonzero(r == r.max())
    if policy.kind == "top_k":
        k = min(policy.k, n)
    else:
        k = min(n, max(1, math.ceil(round(policy.fraction * n, 9))))
    return np.sort(rank_from_scores(values)[:k])
