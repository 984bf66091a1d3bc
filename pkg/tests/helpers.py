import numpy as np
from hypothesis import strategies as st

from pcnet.graph import Graph


def random_graph(rng, n, density, weights="int"):
    """Erdos-Renyi style graph; weights are small integers, dyadic, unit or arbitrary floats."""
    us, vs, ws = [], [], []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                us.append(u)
                vs.append(v)
                if weights == "int":
                    ws.append(float(rng.integers(1, 10)))
                elif weights == "dyadic":
                    ws.append(float(rng.integers(1, 64)) / 8.0)
                elif weights == "unit":
                    ws.append(1.0)
                else:
                    ws.append(float(rng.uniform(0.05, 5.0)))
    return Graph.from_arrays(n, us, vs, ws)


@st.composite
def graphs(draw, min_n=1, max_n=12, weighted=True):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    if weighted:
        ws = draw(st.lists(st.integers(1, 20), min_size=len(chosen), max_size=len(chosen)))
    else:
        ws = [1] * len(chosen)
    return Graph.from_edges(n, [(u, v, float(w)) for (u, v), w in zip(chosen, ws)])




def path(n, w=None):
    w = w or [1.0] * (n - 1)
    return Graph.from_edges(n, [(i, i + 1, w[i]) for i in range(n - 1)])


def star(k, w=1.0):
    return Graph.from_edges(k + 1, [(0, i, w) for i in range(1, k + 1)])


def complete(n, w=1.0):
    return Graph.from_edges(n, [(u, v, w) for u in range(n) for v in range(u + 1, n)])
