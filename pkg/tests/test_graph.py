import gzip
import io
import math

import numpy as np
import pytest
from hypothesis import given, settings

from pcnet.errors import ParseError
from pcnet.graph import (
    DiameterPolicy,
    Graph,
    GraphStats,
    assign_default_weights,
    diameter,
    graph_stats,
    largest_eigenvalue,
    load_edge_list,
    write_edge_list,
)

from .helpers import complete, graphs, path, random_graph, star


def test_two_line_file():
    g = load_edge_list(io.StringIO("0 1\n1 2\n"))
    assert (g.n, g.m) == (3, 2)


def test_symmetrize_and_self_loop():
    g = load_edge_list(io.StringIO("0 1\n1 0\n0 0\n"), symmetrize=True, drop_self_loops=True)
    assert (g.n, g.m) == (2, 1)
    assert g.edge_weight(0, 1) == 1.0


def test_comments_blank_lines_and_string_ids():
    g = load_edge_list(io.StringIO("# header\n\nalice bob\nbob carol 2.5\n"))
    assert g.labels == ("alice", "bob", "carol")
    assert g.edge_weight(1, 2) == 2.5


def test_numeric_ids_sorted_numerically():
    g = load_edge_list(io.StringIO("10 2\n2 7\n"))
    assert g.labels == ("2", "7", "10")


def test_repeated_records_summed():
    g = load_edge_list(io.StringIO("0 1 2\n0 1 3\n"))
    assert g.edge_weight(0, 1) == 5.0
    g = load_edge_list(io.StringIO("0 1 2\n1 0 3\n"), symmetrize=False)
    assert g.edge_weight(0, 1) == 5.0


@pytest.mark.parametrize("text,line", [("0 1\n0\n", 2), ("0 1\n1 2 x\n", 2), ("0 1 -1\n", 1), ("0 1 0\n", 1), ("1 2 3 4\n", 1)])
def test_parse_errors_carry_line_number(text, line):
    with pytest.raises(ParseError) as ei:
        load_edge_list(io.StringIO(text))
    assert ei.value.line_no == line


def test_gzip_and_largest_component(tmp_path):
    p = tmp_path / "g.txt.gz"
    with gzip.open(p, "wt") as fh:
        fh.write("1 2\n2 3\n3 1\n7 8\n")
    g = load_edge_list(p, keep_largest_component=True)
    assert (g.n, g.m) == (3, 3)
    assert g.labels == ("1", "2", "3")


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=10))
def test_round_trip(g):
    g = g.subgraph(np.flatnonzero(g.degree > 0))
    buf = io.StringIO()
    write_edge_list(g, buf, use_labels=False)
    h = load_edge_list(io.StringIO(buf.getvalue()))
    buf2 = io.StringIO()
    write_edge_list(h, buf2)
    k = load_edge_list(io.StringIO(buf2.getvalue()))
    assert h == k
    assert np.array_equal(h.weight, g.weight) and h.m == g.m


def test_default_weights_examples():
    assert assign_default_weights(path(3)).weight.tolist() == [2.0, 2.0]
    assert assign_default_weights(star(4)).weight.tolist() == [4.0] * 4
    assert assign_default_weights(complete(3)).weight.tolist() == [2.0] * 3


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=10))
def test_default_weights_idempotent_topology(g):
    a = assign_default_weights(g)
    b = assign_default_weights(a)
    assert a == b
    assert np.array_equal(a.src, g.src) and np.array_equal(a.dst, g.dst)


def test_eigenvalue_examples():
    assert largest_eigenvalue(complete(4)) == pytest.approx(3.0, abs=1e-6)
    assert largest_eigenvalue(star(9)) == pytest.approx(3.0, abs=1e-6)
    st = graph_stats(complete(4))
    assert st.tau == pytest.approx(1 / 3, abs=1e-6)


def test_eigenvalue_ignores_weights():
    g = complete(5, w=7.0)
    assert largest_eigenvalue(g) == pytest.approx(4.0, abs=1e-6)


def test_eigenvalue_spectral_bounds():
    rng = np.random.default_rng(3)
    for _ in range(30):
        g = random_graph(rng, int(rng.integers(2, 25)), float(rng.uniform(0.1, 0.8)))
        if g.m == 0:
            continue
        lam = largest_eigenvalue(g)
        dense = np.linalg.eigvalsh(g.adjacency(weighted=False).toarray()).max()
        assert lam == pytest.approx(dense, abs=1e-4)
        assert lam >= g.degree.mean() - 1e-6
        assert lam >= math.sqrt(g.degree.max()) - 1e-6


def test_diameter_exact_and_bound():
    assert diameter(path(10)) == (9, True)
    d, exact = diameter(path(10), DiameterPolicy(exact_cutoff=2))
    assert not exact and d == 9  # double sweep is exact on trees
    rng = np.random.default_rng(5)
    g = random_graph(rng, 40, 0.08).largest_component()
    d_exact, _ = diameter(g)
    d_lb, _ = diameter(g, DiameterPolicy(exact_cutoff=1))
    assert 1 <= d_lb <= d_exact


def test_stats_invariants():
    rng = np.random.default_rng(8)
    g = assign_default_weights(random_graph(rng, 30, 0.2).largest_component())
    st = graph_stats(g)
    assert st.tau > 0
    assert st.cu_max <= g.degree.max()
    assert st.diameter >= 1
    row = st.csv_row("toy")
    assert len(row) == len(GraphStats.CSV_HEADER)


def test_graph_rejects_bad_records():
    with pytest.raises(ValueError):
        Graph(2, [1], [0], [1.0])
    with pytest.raises(ValueError):
        Graph(2, [0], [1], [0.0])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(1, 1)])
