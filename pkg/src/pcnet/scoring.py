"""Vertex scoring functions: k-core, generalized (weighted) k-core, weighted PageRank."""

from __future__ import annotations

import csv
import heapq
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import ConvergenceError
from .graph import Graph

SCORERS = ("cu", "cw", "pr")

PAGERANK_DAMPING = 0.85
PAGERANK_TOL = 1e-10
PAGERANK_MAX_ITER = 200
PAGERANK_TOTAL = 100.0


@dataclass
class ScoreVector:
    scorer: str
    values: np.ndarray
    graph_tag: str = ""

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)

    def __len__(self) -> int:
        return self.values.size

    def to_csv(self, target, labels=None) -> None:
        """Rows of ``node_id,score,scorer,graph_tag``."""
        close = not hasattr(target, "write")
        fh = open(target, "w", newline="", encoding="utf-8") if close else target
        try:
            w = csv.writer(fh)
            w.writerow(["node_id", "score", "scorer", "graph_tag"])
            for i, s in enumerate(self.values.tolist()):
                w.writerow([labels[i] if labels is not None else i, repr(s), self.scorer, self.graph_tag])
        finally:
            if close:
                fh.close()

    @classmethod
    def from_csv(cls, source) -> "ScoreVector":
        close = not hasattr(source, "read")
        fh = open(source, newline="", encoding="utf-8") if close else source
        try:
            rows = list(csv.DictReader(fh))
        finally:
            if close:
                fh.close()
        if not rows:
            raise ValueError("empty score file")
        return cls(rows[0]["scorer"], [float(r["score"]) for r in rows], rows[0]["graph_tag"])


def core_unweighted(g: Graph) -> ScoreVector:
    """Core numbers by bucketed minimum-degree peeling (Batagelj & Zaversnik), O(m)."""
    n = g.n
    indptr, indices, _ = g.csr
    indptr = indptr.tolist()
    indices = indices.tolist()
    deg = g.degree.tolist()
    md = max(deg) if n else 0

    # bin sort vertices by degree; pos/vert give the sorted order, bin_start the bucket heads
    bin_start = [0] * (md + 1)
    for d in deg:
        bin_start[d] += 1
    start = 0
    for d in range(md + 1):
        cnt = bin_start[d]
        bin_start[d] = start
        start += cnt
    pos = [0] * n
    vert = [0] * n
    for v in range(n):
        pos[v] = bin_start[deg[v]]
        vert[pos[v]] = v
        bin_start[deg[v]] += 1
    for d in range(md, 0, -1):
        bin_start[d] = bin_start[d - 1]
    if md >= 0 and n:
        bin_start[0] = 0

    for i in range(n):
        v = vert[i]
        dv = deg[v]
        for k in range(indptr[v], indptr[v + 1]):
            u = indices[k]
            du = deg[u]
            if du > dv:
                pu = pos[u]
                pw = bin_start[du]
                w = vert[pw]
                if u != w:
                    pos[u], pos[w] = pw, pu
                    vert[pu], vert[pw] = w, u
                bin_start[du] += 1
                deg[u] = du - 1
    return ScoreVector("cu", np.array(deg, dtype=np.float64))


def core_generalized(g: Graph) -> ScoreVector:
    """Generalized core numbers under the weighted-degree vertex property.

    Repeatedly removes the vertex of minimum remaining weighted degree (lowest id
    on ties); its core value is the running maximum of the property at removal.
    Heap with lazy invalidation, O(m log n).

    Weights are float64, hence dyadic rationals: they are scaled by a common
    power of two and peeled as Python integers, so every property value is
    exact and the returned floats are correctly rounded, independent of the
    order in which neighbours were removed.
    """
    n = g.n
    indptr, indices, ws = g.csr
    indptr = indptr.tolist()
    indices = indices.tolist()
    ratios = [w.as_integer_ratio() for w in ws.tolist()]
    den = max((d for _, d in ratios), default=1)
    ws = [a * (den // d) for a, d in ratios]
    prop = [sum(ws[indptr[v] : indptr[v + 1]]) for v in range(n)]
    heap = [(p, v) for v, p in enumerate(prop)]
    heapq.heapify(heap)
    removed = [False] * n
    core = [0] * n
    current = 0
    while heap:
        p, v = heapq.heappop(heap)
        if removed[v] or p != prop[v]:
            continue
        removed[v] = True
        if p > current:
            current = p
        core[v] = current
        for k in range(indptr[v], indptr[v + 1]):
            u = indices[k]
            if not removed[u]:
                prop[u] -= ws[k]
                heapq.heappush(heap, (prop[u], u))
    return ScoreVector("cw", np.array([c / den for c in core], dtype=np.float64))


def transition_matrix(g: Graph) -> sp.csr_matrix:
    """Row-stochastic weighted random-walk matrix; rows of isolated vertices are zero."""
    a = g.adjacency(weighted=True)
    wd = np.asarray(a.sum(axis=1)).ravel()
    inv = np.divide(1.0, wd, out=np.zeros_like(wd), where=wd > 0)
    return sp.diags(inv) @ a


def pagerank_weighted(
    g: Graph,
    damping: float = PAGERANK_DAMPING,
    tol: float = PAGERANK_TOL,
    max_iter: int = PAGERANK_MAX_ITER,
) -> ScoreVector:
    """Weighted PageRank by power iteration, scaled to sum to 100.

    Walkers at isolated vertices teleport uniformly.  Converged when the L1
    change between iterates drops below ``tol``, measured on the sum-100
    scale of the returned scores (the error is then at most about
    ``tol * d / (1 - d)`` in those units).
    """
    if not 0 < damping < 1:
        raise ValueError("damping must be in (0, 1)")
    n = g.n
    if n == 0:
        return ScoreVector("pr", np.zeros(0))
    pt = transition_matrix(g).T.tocsr()
    dangling = g.weighted_degree == 0
    x = np.full(n, PAGERANK_TOTAL / n)
    err = np.inf
    for _ in range(max_iter):
        x_new = damping * (pt @ x + x[dangling].sum() / n) + (1.0 - damping) * PAGERANK_TOTAL / n
        err = float(np.abs(x_new - x).sum())
        x = x_new
        if err < tol:
            return ScoreVector("pr", PAGERANK_TOTAL * x / x.sum())
    raise ConvergenceError("PageRank did not converge", err, max_iter)


def score(g: Graph, scorer: str, **kw) -> ScoreVector:
    if scorer == "cu":
        return core_unweighted(g)
    if scorer == "cw":
        return core_generalized(g)
    if scorer == "pr":
        return pagerank_weighted(g, **kw)
    raise ValueError(f"unknown scorer {scorer!r}; expected one of {SCORERS}")
