import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from pcnet.errors import DegenerateInputError
from pcnet.graph import Graph
from pcnet.perturb import (
    PerturbConfig,
    Perturber,
    candidate_count,
    endpoint_distribution,
    perturb,
    sample_endpoint_pair,
    sample_endpoint_pairs,
    sample_new_edge_weight,
)
from pcnet.perturb import _cdf
from pcnet.seeding import mix64, splitmix64

from . import oracles
from .helpers import complete, graphs, path, random_graph, star


def test_splitmix_reference_vector():
    # first output of the reference SplitMix64 generator started from state 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert mix64(0) == splitmix64(0)
    assert mix64(1, 2) == splitmix64(splitmix64(1) ^ 2)


def test_config_validation():
    with pytest.raises(ValueError):
        PerturbConfig(1.5, 0.0)
    with pytest.raises(ValueError):
        PerturbConfig(0.1, -0.1)
    with pytest.raises(ValueError):
        PerturbConfig(0.1, 0.1, model="ba")
    c = PerturbConfig(0.1, 0.2, "CL", True, 7)
    assert c.model == "cl"
    assert PerturbConfig.from_dict(c.to_dict()) == c
    assert set(c.to_dict()) >= {"eps_add", "eps_del", "model", "weight_aware", "seed"}


def test_candidate_count_rounds_half_up():
    assert candidate_count(0.2, 100) == 20
    assert candidate_count(0.05, 10) == 1
    assert candidate_count(0.0, 1000) == 0


def test_er_two_vertices_always_the_pair(rng):
    g = path(2)
    for _ in range(200):
        assert set(sample_endpoint_pair(g, "er", rng)) == {0, 1}


def _pair_counts(u, v, n):
    c = {}
    for a, b in zip(np.minimum(u, v).tolist(), np.maximum(u, v).tolist()):
        c[(a, b)] = c.get((a, b), 0) + 1
    return c


def _chi2_ok(counts, law, draws):
    keys = sorted(law)
    obs = np.array([counts.get(k, 0) for k in keys], dtype=float)
    exp = np.array([law[k] * draws for k in keys])
    _, p = stats.chisquare(obs, exp)
    return p


def test_er_pair_frequencies_uniform():
    rng = np.random.default_rng(101)
    draws = 100_000
    u, v = sample_endpoint_pairs(4, None, rng, draws)
    assert not np.any(u == v)
    counts = _pair_counts(u, v, 4)
    law = oracles.unordered_pair_distribution(np.full(4, 0.25))
    assert all(x == pytest.approx(1 / 6) for x in law.values())
    for k, p in law.items():
        sd = math.sqrt(draws * p * (1 - p))
        assert abs(counts[k] - draws * p) < 3 * sd
    assert _chi2_ok(counts, law, draws) > 1e-3


def test_cl_star_center_share():
    g = Graph.from_edges(6, [(0, i, 10.0) for i in range(1, 6)] + [(1, 2, 1.0)])
    p = endpoint_distribution(g, "cl")
    np.testing.assert_allclose(p, g.weighted_degree / g.weighted_degree.sum())
    rng = np.random.default_rng(202)
    draws = 100_000
    u, v = sample_endpoint_pairs(g.n, _cdf(p), rng, draws)
    law = oracles.unordered_pair_distribution(p)
    counts = _pair_counts(u, v, g.n)
    centre = sum(c for (a, b), c in counts.items() if a == 0)
    pc = sum(q for (a, b), q in law.items() if a == 0)
    assert abs(centre - draws * pc) < 3 * math.sqrt(draws * pc * (1 - pc))
    assert _chi2_ok(counts, law, draws) > 1e-3


def test_cl_needs_weight():
    with pytest.raises(DegenerateInputError):
        endpoint_distribution(Graph(3, [], [], []), "cl")


def test_new_weight_singleton_and_fallback(rng):
    g = Graph.from_edges(4, [(0, 1, 5.0)])
    assert sample_new_edge_weight(g, 0, 1, rng) == 5.0
    h = Graph.from_edges(6, [(0, 1, 2.0), (2, 3, 3.0)])
    assert sample_new_edge_weight(h, 4, 5, rng) == 2.5
    with pytest.raises(DegenerateInputError):
        sample_new_edge_weight(Graph(3, [], [], []), 0, 1, rng)


def test_new_weight_multinomial():
    # incident multiset of {0, 3} is {1, 1, 3}
    g = Graph.from_edges(5, [(0, 1, 1.0), (0, 2, 1.0), (3, 4, 3.0), (1, 2, 100.0)])
    law = oracles.new_weight_distribution(oracles.edge_list(g), 0, 3)
    assert law == {1.0: pytest.approx(2 / 3), 3.0: pytest.approx(1 / 3)}
    rng = np.random.default_rng(303)
    draws = 10_000
    ws = [sample_new_edge_weight(g, 0, 3, rng) for _ in range(draws)]
    ones = ws.count(1.0)
    assert set(ws) == {1.0, 3.0}
    assert abs(ones - draws * 2 / 3) < 3 * math.sqrt(draws * 2 / 9)


def test_new_weight_shared_edge_counted_once():
    g = Graph.from_edges(4, [(0, 1, 4.0), (0, 2, 1.0), (1, 3, 1.0)])
    law = oracles.new_weight_distribution(oracles.edge_list(g), 0, 1)
    assert law == {4.0: pytest.approx(1 / 3), 1.0: pytest.approx(2 / 3)}
    rng = np.random.default_rng(9)
    ws = [sample_new_edge_weight(g, 0, 1, rng) for _ in range(20_000)]
    assert abs(ws.count(4.0) / 20_000 - 1 / 3) < 3 * math.sqrt(2 / 9 / 20_000)


def test_identity_config_returns_input():
    g = random_graph(np.random.default_rng(1), 20, 0.3)
    assert perturb(g, PerturbConfig(0.0, 0.0, seed=5), index=3) == g


def test_expected_deletions_match_enumeration():
    rng0 = np.random.default_rng(77)
    pairs = [(u, v) for u in range(20) for v in range(u + 1, 20)]
    pick = rng0.choice(len(pairs), size=100, replace=False)
    g = Graph.from_edges(20, [(*pairs[i], 1.0) for i in pick])
    cfg = PerturbConfig(0.0, 0.2, "er", False, seed=42)
    pert = Perturber(g, cfg)
    assert pert.k_del == 20
    lost = np.array([g.m - pert.realize(m)[0].m for m in range(1, 1001)], dtype=float)
    expect = oracles.expected_distinct_hits(20, oracles.edge_list(g), 20)
    se = lost.std() / math.sqrt(lost.size)
    assert abs(lost.mean() - expect) < 3 * se


def test_weight_aware_increment():
    g = Graph.from_edges(2, [(0, 1, 4.0)])
    cfg = PerturbConfig(1.0, 0.0, "er", True, seed=1)
    h, rec = Perturber(g, cfg).realize(1, record=True)
    # population std of a single weight is 0, so the increment is 0 here
    assert h.edge_weight(0, 1) == 4.0
    g = Graph.from_edges(3, [(0, 1, 2.0), (1, 2, 4.0)])
    sigma = float(np.std([2.0, 4.0]))
    cfg = PerturbConfig(0.5, 0.0, "er", True, seed=3)
    p = Perturber(g, cfg)
    assert p.sigma_w == sigma and p.k_add == 1
    for m in range(1, 50):
        h, rec = p.realize(m, record=True)
        if rec.incremented:
            (u, v, d), = rec.incremented
            assert d == sigma
            assert h.edge_weight(u, v) == g.edge_weight(u, v) + sigma
            assert np.array_equal(h.src, g.src) and np.array_equal(h.dst, g.dst)
            break
    else:
        pytest.fail("no increment drawn")


def test_weight_aware_decrement_removes_nonpositive():
    # sigma = 4 exceeds the lighter weight, so one decrement removes it
    g = Graph.from_edges(3, [(0, 1, 1.0), (1, 2, 9.0)])
    cfg = PerturbConfig(0.0, 1.0, "er", True, seed=4)
    p = Perturber(g, cfg)
    assert p.sigma_w == 4.0
    for m in range(1, 100):
        h, rec = p.realize(m, record=True)
        assert np.all(h.weight > 0)
        for u, v in rec.deleted:
            assert not h.has_edge(u, v)


def _check_invariants(g, cfg, m):
    h, rec = Perturber(g, cfg).realize(m, record=True)
    assert h.n == g.n
    assert np.all(h.src < h.dst)
    assert np.all(h.weight > 0)
    for u, v, _ in rec.added:
        assert u != v
    if not cfg.weight_aware:
        # an edge deleted and then re-drawn as an addition is a new edge with a fresh weight
        redrawn = set(rec.deleted) & {(u, v) for u, v, _ in rec.added}
        for u, v, w in h.edges():
            ow = g.edge_weight(u, v)
            if ow is not None and (u, v) not in redrawn:
                assert w == ow
    h2, _ = Perturber(g, cfg).realize(m)
    assert h == h2


@settings(max_examples=80, deadline=None)
@given(
    graphs(min_n=2, max_n=12),
    st.sampled_from([0.0, 0.05, 0.1, 0.2, 0.3, 1.0]),
    st.sampled_from([0.0, 0.05, 0.1, 0.2, 0.3, 1.0]),
    st.sampled_from(["er", "cl"]),
    st.booleans(),
    st.integers(0, 2**64 - 1),
    st.integers(1, 100),
)
def test_perturb_invariants(g, ea, ed, model, wa, seed, m):
    if g.m == 0:
        return
    _check_invariants(g, PerturbConfig(ea, ed, model, wa, seed), m)


def test_edges_deletion_sampling_hits_edges():
    g = random_graph(np.random.default_rng(2), 200, 0.02)
    p = Perturber(g, PerturbConfig(0.0, 0.2, "er", False, seed=1, deletion_sampling="edges"))
    h, rec = p.realize(1, record=True)
    assert len(rec.deleted) > 0.8 * p.k_del
    assert all(g.has_edge(u, v) for u, v in rec.deleted)


def test_deleted_then_redrawn_edge_gets_fresh_weight():
    g = Graph.from_edges(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (1, 2, 1.0), (1, 3, 1.0), (2, 3, 2.0)])
    pert = Perturber(g, PerturbConfig(0.5, 0.5, "er", False, seed=3))
    hits = 0
    for m in range(1, 300):
        h, rec = pert.realize(m, record=True)
        redrawn = set(rec.deleted) & {(u, v) for u, v, _ in rec.added}
        for u, v, w in rec.added:
            if (u, v) in redrawn:
                hits += 1
                assert h.edge_weight(u, v) == w
                assert w in (1.0, 2.0)
        for u, v, w in h.edges():
            if (u, v) not in redrawn:
                assert w == g.edge_weight(u, v)
    assert hits > 0
