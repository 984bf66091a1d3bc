"""Ranking quality, sample bias/variance, spreader overlap and keyword scores."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInputError
from .ensemble import PcConfig, combine, realization_scores
from .graph import Graph
from .perturb import PerturbConfig, Perturber
from .ranking import rank_from_scores, top_k
from .scoring import score
from .seeding import mix64
from .sir import SirConfig, influence_vector

log = logging.getLogger(__name__)

__all__ = [
    "rank_from_scores",
    "top_k",
    "dcg",
    "ndcg",
    "quantize_relevance",
    "bias_variance",
    "error_decomposition_check",
    "jensen_gap_check",
    "top_p_count",
    "top_p_overlap",
    "keyword_prf1",
    "BiasVarianceReport",
    "bias_variance_experiment",
]


def dcg(order, rel) -> float:
    """Sum over positions i = 1..n of (2**rel - 1) / log2(i + 1)."""
    gains = np.exp2(np.asarray(rel, dtype=np.float64)[np.asarray(order)]) - 1.0
    return float(np.sum(gains / np.log2(np.arange(2, gains.size + 2))))


def ndcg(ranking, rel) -> float:
    rel = np.asarray(rel, dtype=np.float64)
    ranking = np.asarray(ranking)
    if ranking.size != rel.size:
        raise ValueError("ranking and relevance lengths differ")
    if not np.any(rel > 0):
        raise DegenerateInputError("NDCG is undefined when every relevance is zero")
    ideal = np.sort(rel)[::-1]
    return dcg(ranking, rel) / dcg(np.arange(rel.size), ideal)


def quantize_relevance(influences, levels: int = 10) -> np.ndarray:
    """Map influences linearly onto integer levels ``0..levels`` (max influence -> ``levels``)."""
    x = np.asarray(influences, dtype=np.float64)
    if np.any(x < 0) or not x.max() > 0:
        raise ValueError("influences must be non-negative with a positive maximum")
    return np.floor(levels * x / x.max() + 0.5).astype(np.int64)


def _sample(values) -> np.ndarray:
    x = np.asarray(values, dtype=np.float64).ravel()
    if x.size == 0:
        raise ValueError("empty sample")
    return x


def bias_variance(sample) -> tuple[float, float]:
    """``(1 - mean, population variance)`` of goodness-of-fit values."""
    x = _sample(sample)
    mu = x.mean()
    return float(1.0 - mu), float(np.mean((x - mu) ** 2))


def error_decomposition_check(sample) -> tuple[float, float]:
    """``(bias**2 + variance, mean((x - 1)**2))``; equal up to rounding for any sample."""
    x = _sample(sample)
    b, v = bias_variance(x)
    return b * b + v, float(np.mean((x - 1.0) ** 2))


def jensen_gap_check(sample) -> tuple[float, float, float]:
    """``(mean((x-1)**2), (1-mean(x))**2, gap)``; the gap is the population variance, >= 0.

    lhs - rhs equals the variance in exact arithmetic but the float
    subtraction can dip a few ulps below zero, so the gap is computed directly.
    """
    x = _sample(sample)
    lhs = float(np.mean((x - 1.0) ** 2))
    rhs = float((1.0 - x.mean()) ** 2)
    if np.all(x == x[0]):
        return lhs, rhs, 0.0
    return lhs, rhs, float(np.mean((x - x.mean()) ** 2))


def top_p_count(p: float, n: int) -> int:
    # ceil: cut sizes round up, e.g. 169 for 0.5% of 33,696
    return int(math.ceil(round(p * n, 9)))


def top_p_overlap(candidate, truth, p: float) -> float:
    """Fraction of the top-k vertices of ``truth`` found in the top-k of ``candidate``."""
    candidate = np.asarray(candidate)
    truth = np.asarray(truth)
    if candidate.size != truth.size:
        raise ValueError("rankings must cover the same vertices")
    if not 0 < p <= 1:
        raise ValueError("p must be in (0, 1]")
    k = top_p_count(p, truth.size)
    if k == 0:
        raise DegenerateInputError("top-p cut is empty")
    return len(set(candidate[:k].tolist()) & set(truth[:k].tolist())) / k


def keyword_prf1(extracted, gold) -> tuple[float, float, float]:
    """Macro-averaged precision, recall and F1 (x100) over documents.

    Documents with an empty gold set are skipped with a warning.
    """
    if len(extracted) != len(gold):
        raise ValueError("extracted and gold must cover the same documents")
    ps, rs, fs = [], [], []
    for i, (e, g) in enumerate(zip(extracted, gold)):
        e, g = set(e), set(g)
        if not g:
            log.warning("document %d has no gold keywords; skipped", i)
            continue
        hit = len(e & g)
        p = hit / len(e) if e else 0.0
        r = hit / len(g)
        f = 2 * p * r / (p + r) if p + r > 0 else 0.0
        ps.append(p)
        rs.append(r)
        fs.append(f)
    if not ps:
        raise DegenerateInputError("no document has gold keywords")
    return 100 * float(np.mean(ps)), 100 * float(np.mean(rs)), 100 * float(np.mean(fs))


# ---------------------------------------------------------------- bias / variance experiment


@dataclass
class BiasVarianceReport:
    """NDCG samples of the original and P&C rankings over perturbed observations of a graph."""

    ndcg_original: np.ndarray
    ndcg_pc: np.ndarray
    # mean NDCG of the per-realization rankings inside each P&C run
    ndcg_pc_realizations: np.ndarray
    relevance: np.ndarray = field(repr=False)

    def rows(self) -> dict[str, dict]:
        out = {}
        for cond, sample in (
            ("original", self.ndcg_original),
            ("pc", self.ndcg_pc),
            ("pc_realization_mean", self.ndcg_pc_realizations),
        ):
            b, v = bias_variance(sample)
            lhs, rhs = error_decomposition_check(sample)
            _, _, gap = jensen_gap_check(sample)
            out[cond] = {
                "mean_ndcg": float(np.mean(sample)),
                "bias": b,
                "variance": v,
                "bias_x1e2": 100 * b,
                "variance_x1e3": 1000 * v,
                "mse_decomposed": lhs,
                "mse_direct": rhs,
                "jensen_gap": gap,
            }
        return out


def bias_variance_experiment(
    g: Graph,
    scorer: str,
    pc_cfg: PcConfig,
    sample_size: int,
    sir_cfg: SirConfig,
    levels: int = 10,
    observation_perturb: PerturbConfig | None = None,
    relevance=None,
    jobs: int = 1,
) -> BiasVarianceReport:
    """Estimate bias and variance of a scorer with and without P&C.

    SIR influence on ``g`` (quantized to ``levels``) is the relevance.  Each of
    ``sample_size`` observations is a perturbed copy of ``g`` drawn with
    ``observation_perturb`` (default: ``pc_cfg.perturb``) on a seed stream
    separate from the P&C realizations.  On each observation the base ranking
    and the P&C ranking (``pc_cfg.M`` further perturbations of the
    observation) are scored by NDCG.
    """
    if sample_size < 1:
        raise ValueError("sample_size must be >= 1")
    if relevance is None:
        relevance = quantize_relevance(influence_vector(g, sir_cfg, jobs=jobs), levels)
    relevance = np.asarray(relevance)
    obs_cfg = observation_perturb or pc_cfg.perturb
    observer = Perturber(g, obs_cfg)
    pc_cfg = PcConfig(pc_cfg.M, pc_cfg.perturb, scorer, pc_cfg.master_seed)
    orig, pc, pc_mean = [], [], []
    for i in range(1, sample_size + 1):
        # observation stream: (seed, -i) so it never collides with realization ids m >= 1
        obs, _ = observer.realize(index=-i)
        orig.append(ndcg(rank_from_scores(score(obs, scorer)), relevance))
        inner = PcConfig(pc_cfg.M, pc_cfg.perturb, scorer, master_seed=mix64(pc_cfg.seed, 0x0B5E, i))
        mat = realization_scores(obs, inner, jobs=jobs)
        pc.append(ndcg(rank_from_scores(combine(mat)), relevance))
        pc_mean.append(float(np.mean([ndcg(rank_from_scores(row), relevance) for row in mat])))
    return BiasVarianceReport(np.array(orig), np.array(pc), np.array(pc_mean), relevance)

