"""Edge-level stochastic perturbation of a graph (random edge addition / deletion).

A realization draws ``round(eps_del * m)`` deletion candidates and
``round(eps_add * m)`` addition candidates from a random-graph endpoint model,
then applies deletions followed by additions.  ``model`` picks endpoints
uniformly ("er") or proportionally to weighted degree ("cl"); pairs with equal
endpoints are redrawn.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DegenerateInputError
from .graph import Graph
from .seeding import rng_for

MODELS = ("er", "cl")


@dataclass(frozen=True)
class PerturbConfig:
    eps_add: float = 0.0
    eps_del: float = 0.0
    model: str = "er"
    weight_aware: bool = False
    seed: int = 0
    # "pairs": deletion candidates are drawn over all vertex pairs and miss when
    # the pair is not an edge. "edges": drawn among existing edges only.
    deletion_sampling: str = "pairs"

    def __post_init__(self):
        if not 0.0 <= self.eps_add <= 1.0:
            raise ValueError(f"eps_add must be in [0, 1], got {self.eps_add}")
        if not 0.0 <= self.eps_del <= 1.0:
            raise ValueError(f"eps_del must be in [0, 1], got {self.eps_del}")
        model = str(self.model).lower()
        if model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}, got {self.model!r}")
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "weight_aware", bool(int(self.weight_aware)))
        if self.deletion_sampling not in ("pairs", "edges"):
            raise ValueError("deletion_sampling must be 'pairs' or 'edges'")

    @property
    def is_identity(self) -> bool:
        return self.eps_add == 0 and self.eps_del == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["weight_aware"] = int(self.weight_aware)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "PerturbConfig":
        keys = {"eps_add", "eps_del", "model", "weight_aware", "seed", "deletion_sampling"}
        return cls(**{k: v for k, v in d.items() if k in keys})


@dataclass
class PerturbationRealization:
    added: list = field(default_factory=list)
    deleted: list = field(default_factory=list)
    incremented: list = field(default_factory=list)
    decremented: list = field(default_factory=list)


def candidate_count(eps: float, m: int) -> int:
    return int(math.floor(eps * m + 0.5))


def endpoint_distribution(g: Graph, model: str) -> np.ndarray | None:
    """Vertex sampling probabilities, or ``None`` for the uniform model."""
    if model == "er":
        return None
    if model == "cl":
        wd = g.weighted_degree
        total = wd.sum()
        if not total > 0:
            raise DegenerateInputError("Chung-Lu sampling needs a positive total weighted degree")
        return wd / total
    raise ValueError(f"unknown model {model!r}")


def _draw_vertices(n: int, cdf: np.ndarray | None, rng: np.random.Generator, size: int) -> np.ndarray:
    if cdf is None:
        return rng.integers(0, n, size=size)
    idx = np.searchsorted(cdf, rng.random(size), side="right")
    return np.minimum(idx, n - 1)


def sample_endpoint_pairs(n: int, cdf: np.ndarray | None, rng: np.random.Generator, size: int) -> tuple[np.ndarray, np.ndarray]:
    """``size`` independent non-self pairs; both endpoints are redrawn whenever u == v."""
    if n < 2:
        raise DegenerateInputError("need at least two vertices to sample a pair")
    u = _draw_vertices(n, cdf, rng, size)
    v = _draw_vertices(n, cdf, rng, size)
    bad = np.flatnonzero(u == v)
    while bad.size:
        u[bad] = _draw_vertices(n, cdf, rng, bad.size)
        v[bad] = _draw_vertices(n, cdf, rng, bad.size)
        bad = bad[u[bad] == v[bad]]
    return u, v


def _cdf(p: np.ndarray | None) -> np.ndarray | None:
    if p is None:
        return None
    c = np.cumsum(p)
    return c / c[-1]


def sample_endpoint_pair(g: Graph, model: str, rng: np.random.Generator) -> tuple[int, int]:
    u, v = sample_endpoint_pairs(g.n, _cdf(endpoint_distribution(g, model)), rng, 1)
    return int(u[0]), int(v[0])


def sample_new_edge_weight(g: Graph, u: int, v: int, rng: np.random.Generator) -> float:
    """Draw uniformly from the weights of original edges incident to ``u`` or ``v``.

    Falls back to the mean edge weight when both endpoints are isolated.
    """
    if g.m == 0:
        raise DegenerateInputError("cannot sample a new edge weight from a graph without edges")
    wu = g.incident_weights(u)
    wv = g.incident_weights(v)
    nbrs_u = g.neighbors(u)
    # an original {u, v} edge is listed under both endpoints; count it once
    shared = np.flatnonzero(nbrs_u == v)
    total = wu.size + wv.size - shared.size
    if total == 0:
        return float(g.weight.mean())
    k = int(rng.integers(total))
    if k < wu.size:
        return float(wu[k])
    k -= wu.size
    if shared.size:
        nbrs_v = g.neighbors(v)
        skip = int(np.flatnonzero(nbrs_v == u)[0])
        if k >= skip:
            k += 1
    return float(wv[k])


class Perturber:
    """Precomputed sampling state for one source graph and configuration.

    Quantities that describe the source graph (weight standard deviation,
    endpoint distribution, incident weights) are computed once and shared by
    every realization.
    """

    def __init__(self, g: Graph, cfg: PerturbConfig):
        self.g = g
        self.cfg = cfg
        self.sigma_w = float(g.weight.std()) if g.m else 0.0
        self.k_add = candidate_count(cfg.eps_add, g.m)
        self.k_del = candidate_count(cfg.eps_del, g.m)
        self._cdf = None
        self._edge_cdf = None
        if not cfg.is_identity:
            if g.n < 2:
                raise DegenerateInputError("need at least two vertices to perturb")
            p = endpoint_distribution(g, cfg.model)
            self._cdf = _cdf(p)
            if cfg.deletion_sampling == "edges" and g.m:
                if p is None:
                    pe = np.ones(g.m)
                else:
                    pe = p[g.src] * p[g.dst]
                self._edge_cdf = _cdf(pe)

    def rng(self, index: int) -> np.random.Generator:
        return rng_for(self.cfg.seed, index)

    def realize(self, index: int = 0, rng: np.random.Generator | None = None, record: bool = False):
        """Return ``(perturbed_graph, realization_or_None)`` for realization ``index``."""
        g, cfg = self.g, self.cfg
        if cfg.is_identity or (self.k_add == 0 and self.k_del == 0):
            return g, (PerturbationRealization() if record else None)
        rng = self.rng(index) if rng is None else rng
        n = g.n

        if cfg.deletion_sampling == "edges":
            if g.m:
                idx = np.minimum(np.searchsorted(self._edge_cdf, rng.random(self.k_del), side="right"), g.m - 1)
                du, dv = g.src[idx], g.dst[idx]
            else:
                du = dv = np.zeros(0, dtype=np.int64)
        else:
            du, dv = sample_endpoint_pairs(n, self._cdf, rng, self.k_del)
        au, av = sample_endpoint_pairs(n, self._cdf, rng, self.k_add)

        edges = dict(zip(g.edge_keys().tolist(), g.weight.tolist()))
        rec = PerturbationRealization() if record else None
        sigma = self.sigma_w

        for u, v in zip(np.minimum(du, dv).tolist(), np.maximum(du, dv).tolist()):
            key = u * n + v
            w = edges.get(key)
            if w is None:
                continue
            if cfg.weight_aware:
                w -= sigma
                if w <= 0:
                    del edges[key]
                    if rec is not None:
                        rec.deleted.append((u, v))
                else:
                    edges[key] = w
                    if rec is not None:
                        rec.decremented.append((u, v, sigma))
            else:
                del edges[key]
                if rec is not None:
                    rec.deleted.append((u, v))

        for u, v in zip(np.minimum(au, av).tolist(), np.maximum(au, av).tolist()):
            key = u * n + v
            w = edges.get(key)
            if w is None:
                nw = sample_new_edge_weight(g, u, v, rng)
                edges[key] = nw
                if rec is not None:
                    rec.added.append((u, v, nw))
            elif cfg.weight_aware:
                edges[key] = w + sigma
                if rec is not None:
                    rec.incremented.append((u, v, sigma))

        keys = np.fromiter(edges.keys(), dtype=np.int64, count=len(edges))
        ws = np.fromiter(edges.values(), dtype=np.float64, count=len(edges))
        order = np.argsort(keys, kind="stable")
        keys, ws = keys[order], ws[order]
        return Graph(n, keys // n, keys % n, ws, labels=g.labels), rec


def perturb(g: Graph, cfg: PerturbConfig, index: int = 0, rng: np.random.Generator | None = None) -> Graph:
    """One perturbed copy of ``g``; seeded from ``(cfg.seed, index)`` unless ``rng`` is given."""
    return Perturber(g, cfg).realize(index, rng=rng)[0]
