"""Undirected weighted simple graphs, edge-list ingestion and global statistics."""

from __future__ import annotations

import gzip
import io
import math
import os
from dataclasses import dataclass, asdict
from functools import cached_property
from typing import Iterable, TextIO

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from .errors import ConvergenceError, DegenerateInputError, ParseError


class Graph:
    """Immutable undirected graph on vertices ``0..n-1`` with positive edge weights.

    Each edge is stored once as ``(src[i], dst[i], weight[i])`` with
    ``src < dst``; records are sorted by ``(src, dst)``.  ``labels`` optionally
    maps vertex ids to strings (original dataset ids or terms).
    """

    def __init__(self, n: int, src, dst, weight, labels=None):
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        weight = np.asarray(weight, dtype=np.float64)
        if not (src.shape == dst.shape == weight.shape) or src.ndim != 1:
            raise ValueError("src, dst and weight must be 1-d arrays of equal length")
        if n < 0:
            raise ValueError("n must be non-negative")
        if src.size:
            if src.min() < 0 or dst.max() >= n:
                raise ValueError("vertex id out of range")
            if np.any(src >= dst):
                raise ValueError("edges must be stored with src < dst (no self-loops)")
            if not np.all(weight > 0) or not np.all(np.isfinite(weight)):
                raise ValueError("edge weights must be finite and positive")
            keys = src * n + dst
            if np.any(np.diff(keys) <= 0):
                raise ValueError("edges must be sorted and unique")
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise ValueError("labels must have length n")
        for a in (src, dst, weight):
            a.flags.writeable = False
        self.n = int(n)
        self.src = src
        self.dst = dst
        self.weight = weight
        self.labels = labels

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, labels=None) -> "Graph":
        """Build from ``(u, v)`` or ``(u, v, w)`` tuples; repeated pairs have weights summed."""
        us, vs, ws = [], [], []
        for e in edges:
            if len(e) == 2:
                u, v = e
                w = 1.0
            else:
                u, v, w = e
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            us.append(u)
            vs.append(v)
            ws.append(w)
        return cls.from_arrays(n, us, vs, ws, labels=labels)

    @classmethod
    def from_arrays(cls, n: int, u, v, w=None, labels=None) -> "Graph":
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        w = np.ones(u.size) if w is None else np.asarray(w, dtype=np.float64)
        if np.any(u == v):
            raise ValueError("self-loops are not allowed")
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        keys = lo * n + hi
        uniq, inv = np.unique(keys, return_inverse=True)
        wsum = np.bincount(inv, weights=w, minlength=uniq.size) if uniq.size else np.zeros(0)
        return cls(n, uniq // n if n else uniq, uniq % n if n else uniq, wsum, labels=labels)

    @property
    def m(self) -> int:
        return int(self.src.size)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.src, other.src)
            and np.array_equal(self.dst, other.dst)
            and np.array_equal(self.weight, other.weight)
            and self.labels == other.labels
        )

    __hash__ = None

    @cached_property
    def degree(self) -> np.ndarray:
        d = np.bincount(self.src, minlength=self.n) + np.bincount(self.dst, minlength=self.n)
        d.flags.writeable = False
        return d

    @cached_property
    def weighted_degree(self) -> np.ndarray:
        d = np.bincount(self.src, weights=self.weight, minlength=self.n) + np.bincount(
            self.dst, weights=self.weight, minlength=self.n
        )
        d.flags.writeable = False
        return d

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Symmetric adjacency as ``(indptr, indices, weights)``, neighbours sorted by id."""
        rows = np.concatenate([self.src, self.dst])
        cols = np.concatenate([self.dst, self.src])
        ws = np.concatenate([self.weight, self.weight])
        order = np.lexsort((cols, rows))
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=self.n), out=indptr[1:])
        out = (indptr, cols[order], ws[order])
        for a in out:
            a.flags.writeable = False
        return out

    def adjacency(self, weighted: bool = True) -> sp.csr_matrix:
        indptr, indices, ws = self.csr
        data = ws if weighted else np.ones_like(ws)
        return sp.csr_matrix((data, indices, indptr), shape=(self.n, self.n))

    def neighbors(self, v: int) -> np.ndarray:
        indptr, indices, _ = self.csr
        return indices[indptr[v] : indptr[v + 1]]

    def incident_weights(self, v: int) -> np.ndarray:
        indptr, _, ws = self.csr
        return ws[indptr[v] : indptr[v + 1]]

    def edge_keys(self) -> np.ndarray:
        return self.src * self.n + self.dst

    def edge_weight(self, u: int, v: int) -> float | None:
        if u == v:
            return None
        lo, hi = (u, v) if u < v else (v, u)
        keys = self.edge_keys()
        i = int(np.searchsorted(keys, lo * self.n + hi))
        if i < keys.size and keys[i] == lo * self.n + hi:
            return float(self.weight[i])
        return None

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_weight(u, v) is not None

    def edges(self):
        """Iterate ``(u, v, w)`` with ``u < v``."""
        return zip(self.src.tolist(), self.dst.tolist(), self.weight.tolist())

    def with_weights(self, weight) -> "Graph":
        return Graph(self.n, self.src, self.dst, weight, labels=self.labels)

    def subgraph(self, vertices) -> "Graph":
        """Induced subgraph; kept vertices are renumbered in increasing id order."""
        keep = np.zeros(self.n, dtype=bool)
        keep[np.asarray(vertices, dtype=np.int64)] = True
        new_id = np.cumsum(keep) - 1
        mask = keep[self.src] & keep[self.dst]
        labels = None
        if self.labels is not None:
            labels = [lab for lab, k in zip(self.labels, keep) if k]
        return Graph(
            int(keep.sum()), new_id[self.src[mask]], new_id[self.dst[mask]], self.weight[mask], labels=labels
        )

    def components(self) -> np.ndarray:
        _, comp = csgraph.connected_components(self.adjacency(weighted=False), directed=False)
        return comp

    def largest_component(self) -> "Graph":
        """Largest connected component; size ties go to the component holding the lowest id."""
        if self.n == 0:
            return self
        comp = self.components()
        sizes = np.bincount(comp)
        # component labels are assigned in order of lowest vertex, so argmax picks the lowest on ties
        best = int(np.argmax(sizes))
        if sizes[best] == self.n:
            return self
        return self.subgraph(np.flatnonzero(comp == best))


# ---------------------------------------------------------------- ingestion


def _open_text(source) -> TextIO:
    if isinstance(source, (str, os.PathLike)):
        path = os.fspath(source)
        if path.endswith(".gz"):
            return io.TextIOWrapper(gzip.open(path, "rb"), encoding="utf-8")
        return open(path, "r", encoding="utf-8")
    return source


def _sort_ids(ids):
    try:
        return sorted(ids, key=int)
    except ValueError:
        return sorted(ids)


def load_edge_list(
    source,
    symmetrize: bool = True,
    drop_self_loops: bool = True,
    keep_largest_component: bool = False,
) -> Graph:
    """Parse a whitespace-separated ``u v [w]`` edge list (``#`` starts a comment line).

    Vertex ids may be any tokens; they are renumbered ``0..n-1`` in sorted order
    (numeric when every id is an integer) and kept as ``Graph.labels``.

    Records of the same oriented pair are summed.  With ``symmetrize`` the input
    is read as directed arcs and ``u->v`` / ``v->u`` collapse into one edge whose
    weight is the larger of the two orientation totals, so a listing that
    repeats each undirected edge in both directions is not double counted.
    Without it every record of an unordered pair is summed.
    """
    oriented: dict[tuple[str, str], float] = {}
    close = isinstance(source, (str, os.PathLike))
    fh = _open_text(source)
    try:
        for line_no, line in enumerate(fh, start=1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            parts = s.split()
            if len(parts) not in (2, 3):
                raise ParseError(f"expected 'u v' or 'u v w', got {s!r}", line_no)
            u, v = parts[0], parts[1]
            w = 1.0
            if len(parts) == 3:
                try:
                    w = float(parts[2])
                except ValueError:
                    raise ParseError(f"bad weight {parts[2]!r}", line_no) from None
                if not (w > 0) or not math.isfinite(w):
                    raise ParseError(f"weight must be positive and finite, got {parts[2]}", line_no)
            if u == v:
                if drop_self_loops:
                    continue
                raise ParseError(f"self-loop on {u!r}", line_no)
            oriented[(u, v)] = oriented.get((u, v), 0.0) + w
    finally:
        if close:
            fh.close()

    merged: dict[tuple[str, str], float] = {}
    if symmetrize:
        for (u, v), w in oriented.items():
            key = (u, v) if u < v else (v, u)
            merged[key] = max(merged.get(key, 0.0), w)
    else:
        for (u, v), w in oriented.items():
            key = (u, v) if u < v else (v, u)
            merged[key] = merged.get(key, 0.0) + w

    ids = set()
    for u, v in merged:
        ids.add(u)
        ids.add(v)
    labels = _sort_ids(ids)
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    us = np.fromiter((index[u] for u, _ in merged), dtype=np.int64, count=len(merged))
    vs = np.fromiter((index[v] for _, v in merged), dtype=np.int64, count=len(merged))
    ws = np.fromiter(merged.values(), dtype=np.float64, count=len(merged))
    g = Graph.from_arrays(n, us, vs, ws, labels=labels)
    if keep_largest_component:
        g = g.largest_component()
    return g


def write_edge_list(g: Graph, target, use_labels: bool = True) -> None:
    """Write ``u v w`` lines; weights use shortest round-tripping repr."""
    close = isinstance(target, (str, os.PathLike))
    fh = open(target, "w", encoding="utf-8") if close else target
    try:
        fh.write(f"# n={g.n} m={g.m}\n")
        names = g.labels if (use_labels and g.labels is not None) else None
        for u, v, w in g.edges():
            a, b = (names[u], names[v]) if names else (u, v)
            fh.write(f"{a} {b} {_fmt_weight(w)}\n")
    finally:
        if close:
            fh.close()


def _fmt_weight(w: float) -> str:
    return str(int(w)) if float(w).is_integer() and abs(w) < 2**53 else repr(float(w))


def assign_default_weights(g: Graph) -> Graph:
    """Weight each edge by the larger unweighted degree of its endpoints."""
    deg = g.degree
    return g.with_weights(np.maximum(deg[g.src], deg[g.dst]).astype(np.float64))


# ---------------------------------------------------------------- statistics


@dataclass(frozen=True)
class DiameterPolicy:
    exact_cutoff: int = 20_000
    sweeps: int = 4


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    diameter: int
    diameter_exact: bool
    lambda1: float
    tau: float
    cu_max: int
    cw_max: float
    pr_max: float

    CSV_HEADER = ("graph", "V", "E", "d", "d_exact", "cu_max", "cw_max", "pr_max", "tau_x1e2", "lambda1")

    def csv_row(self, name: str = "") -> list:
        return [
            name,
            self.n,
            self.m,
            self.diameter,
            int(self.diameter_exact),
            self.cu_max,
            _fmt_weight(self.cw_max),
            f"{self.pr_max:.2f}",
            f"{100 * self.tau:.2f}",
            f"{self.lambda1:.6f}",
        ]

    def to_dict(self) -> dict:
        return asdict(self)


def largest_eigenvalue(g: Graph, tol: float = 1e-9, max_iter: int = 100_000) -> float:
    """Largest eigenvalue of the unweighted 0/1 adjacency matrix by power iteration.

    Iterates on ``A + I`` so that bipartite graphs (spectrum symmetric about 0)
    still converge; stops when the Rayleigh quotient changes by less than ``tol``.
    """
    if g.m == 0:
        return 0.0
    a = g.adjacency(weighted=False)
    x = np.ones(g.n) / math.sqrt(g.n)
    rq_prev = math.inf
    diff = math.inf
    for it in range(1, max_iter + 1):
        ax = a @ x
        rq = float(x @ ax)
        diff = abs(rq - rq_prev)
        if diff < tol:
            return rq
        rq_prev = rq
        y = ax + x
        x = y / np.linalg.norm(y)
    raise ConvergenceError("power iteration for lambda1 did not converge", diff, max_iter)


def _bfs_ecc(adj: sp.csr_matrix, source: int) -> tuple[int, int]:
    order, pred = csgraph.breadth_first_order(adj, source, directed=False, return_predecessors=True)
    dist = np.zeros(adj.shape[0], dtype=np.int64)
    for v in order[1:]:
        dist[v] = dist[pred[v]] + 1
    far = int(order[np.argmax(dist[order])])
    return int(dist[far]), far


def diameter(g: Graph, policy: DiameterPolicy = DiameterPolicy()) -> tuple[int, bool]:
    """Diameter of the largest component and whether it is exact (else a double-sweep lower bound)."""
    h = g.largest_component()
    if h.n <= 1:
        return 0, True
    adj = h.adjacency(weighted=False)
    if h.n <= policy.exact_cutoff:
        best = 0
        chunk = max(1, min(h.n, 4_000_000 // h.n))
        for start in range(0, h.n, chunk):
            d = csgraph.shortest_path(adj, directed=False, unweighted=True, indices=np.arange(start, min(h.n, start + chunk)))
            best = max(best, int(d.max()))
        return best, True
    src = int(np.argmax(h.degree))
    best = 0
    for _ in range(policy.sweeps):
        _, far = _bfs_ecc(adj, src)
        ecc, src = _bfs_ecc(adj, far)
        best = max(best, ecc)
    return best, False


def graph_stats(g: Graph, diameter_policy: DiameterPolicy = DiameterPolicy(), pagerank_kw: dict | None = None) -> GraphStats:
    """Table-style summary: size, diameter, spectral threshold and maximum scores."""
    from .scoring import core_generalized, core_unweighted, pagerank_weighted

    if g.n == 0:
        raise DegenerateInputError("empty graph")
    lam = largest_eigenvalue(g)
    d, exact = diameter(g, diameter_policy)
    cu = core_unweighted(g).values
    cw = core_generalized(g).values
    pr = pagerank_weighted(g, **(pagerank_kw or {})).values
    return GraphStats(
        n=g.n,
        m=g.m,
        diameter=d,
        diameter_exact=exact,
        lambda1=lam,
        tau=1.0 / lam if lam > 0 else math.inf,
        cu_max=int(cu.max()),
        cw_max=float(cw.max()),
        pr_max=float(pr.max()),
    )
