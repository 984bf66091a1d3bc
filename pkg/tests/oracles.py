"""Slow, obviously-correct reference implementations used as test oracles.

None of these import the package under test except for ``Graph`` accessors
that only expose raw edge lists.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import numpy as np


def edge_list(g):
    return [(int(u), int(v), float(w)) for u, v, w in zip(g.src, g.dst, g.weight)]


def peel_oracle(n, edges, weighted=True):
    """Generalized core numbers by repeated from-scratch minimum search.

    Each round recomputes the property (sum of weights to surviving
    neighbours, or neighbour count) of every surviving vertex, removes the
    minimum (lowest id on ties) and records max(property, running max).
    Arithmetic is exact (Fraction); results are rounded to float once at the end.
    """
    alive = set(range(n))
    core = [Fraction(0)] * n
    running = None
    while alive:
        prop = {v: Fraction(0) for v in alive}
        for a, b, w in edges:
            if a in alive and b in alive:
                prop[a] += Fraction(w if weighted else 1)
                prop[b] += Fraction(w if weighted else 1)
        v = min(alive, key=lambda x: (prop[x], x))
        running = prop[v] if running is None else max(running, prop[v])
        core[v] = running
        alive.remove(v)
    return [float(c) for c in core]


def pagerank_dense(n, edges, damping=0.85):
    """Solve (I - d P^T) x = (1 - d)/n directly; dangling rows teleport uniformly. Sum scaled to 100."""
    W = np.zeros((n, n))
    for a, b, w in edges:
        W[a, b] += w
        W[b, a] += w
    P = np.empty((n, n))
    for i in range(n):
        s = W[i].sum()
        P[i] = W[i] / s if s > 0 else 1.0 / n
    x = np.linalg.solve(np.eye(n) - damping * P.T, np.full(n, (1 - damping) / n))
    return 100.0 * x / x.sum()


def unordered_pair_distribution(p):
    """Exact law of the unordered pair {u, v} when u, v ~ p i.i.d. and self pairs are redrawn."""
    p = np.asarray(p, dtype=float)
    n = p.size
    z = 1.0 - float(np.sum(p * p))
    return {(i, j): 2 * p[i] * p[j] / z for i, j in itertools.combinations(range(n), 2)}


def expected_distinct_hits(n, edges, k, p=None):
    """Expected number of distinct existing edges hit by k independent non-self pair draws."""
    if p is None:
        p = np.full(n, 1.0 / n)
    law = unordered_pair_distribution(p)
    return sum(1.0 - (1.0 - law[(min(a, b), max(a, b))]) ** k for a, b, _ in edges)


def new_weight_distribution(edges, u, v):
    """Law of the weight of a new edge {u, v}: uniform over original edges incident to u or v."""
    pool = [w for a, b, w in edges if a in (u, v) or b in (u, v)]
    if not pool:
        return None
    out = {}
    for w in pool:
        out[w] = out.get(w, 0.0) + 1.0 / len(pool)
    return out


def sir_run(n, edges, seed_vertex, beta, gamma, rnd: random.Random, max_steps=10_000):
    """One SIR epidemic with plain Python sets.

    Per step: every infected node tries each susceptible neighbour with
    probability beta, then every node infected at the start of the step
    recovers with probability gamma.  Stops after two quiet steps.
    """
    nbrs = [[] for _ in range(n)]
    for a, b, _ in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    S = set(range(n)) - {seed_vertex}
    I = {seed_vertex}
    R = set()
    total = 1
    quiet = 0
    steps = 0
    while quiet < 2 and steps < max_steps:
        steps += 1
        new = set()
        for u in sorted(I):
            for v in nbrs[u]:
                if v in S and v not in new and rnd.random() < beta:
                    new.add(v)
        for u in sorted(I):
            if rnd.random() < gamma:
                R.add(u)
        I -= R
        S -= new
        I |= new
        total += len(new)
        quiet = quiet + 1 if not new else 0
    return total


def dcg_by_hand(order, rel):
    return sum((2 ** rel[v] - 1) / math.log2(i + 2) for i, v in enumerate(order))
