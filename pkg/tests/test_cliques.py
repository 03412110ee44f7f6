import itertools

import numpy as np
import pytest

from cliquegen.cliques import (
    CliqueLimitError,
    brute_force_maximal_cliques,
    degeneracy_order,
    enumerate_maximal_cliques,
)
from cliquegen.graph import Graph, ring_of_cliques

from conftest import random_graph, small_random_graphs


def test_triangle():
    cs = enumerate_maximal_cliques(Graph.complete(3))
    assert cs.cliques == ((0, 1, 2),)
    assert cs.edge_multiplicity == {(0, 1): 1, (0, 2): 1, (1, 2): 1}


def test_path():
    assert enumerate_maximal_cliques(Graph(3, [(0, 1), (1, 2)])).cliques == ((0, 1), (1, 2))


def test_k4_brute_force():
    assert brute_force_maximal_cliques(Graph.complete(4)).cliques == ((0, 1, 2, 3),)


def test_isolated_nodes_have_no_cliques():
    assert len(brute_force_maximal_cliques(Graph.empty(3))) == 0
    assert len(enumerate_maximal_cliques(Graph.empty(3))) == 0
    assert enumerate_maximal_cliques(Graph(4, [(1, 2)])).cliques == ((1, 2),)


def test_ring_of_cliques_against_oracle():
    g = ring_of_cliques(10, 10)
    cs = enumerate_maximal_cliques(g)
    assert len(cs) == 20
    assert sorted(len(c) for c in cs) == [2] * 10 + [10] * 10
    # the oracle cannot take n = 100; check a ring small enough for it
    small = ring_of_cliques(4, 4)
    assert enumerate_maximal_cliques(small) == brute_force_maximal_cliques(small)


def test_oracle_equivalence_gnp_10():
    rng = np.random.default_rng(5)
    for _ in range(50):
        g = random_graph(10, 0.4, rng)
        assert enumerate_maximal_cliques(g) == brute_force_maximal_cliques(g)


def test_oracle_equivalence_mixed_densities():
    for g in small_random_graphs():
        assert enumerate_maximal_cliques(g) == brute_force_maximal_cliques(g)


def _is_clique(g, c):
    return all(g.has_edge(a, b) for a, b in itertools.combinations(c, 2))


@pytest.mark.parametrize("seed", range(5))
def test_clique_set_invariants(seed):
    rng = np.random.default_rng(seed)
    g = random_graph(30, 0.3, rng)
    cs = enumerate_maximal_cliques(g)
    assert len(set(cs.cliques)) == len(cs)
    assert list(cs.cliques) == sorted(cs.cliques)
    covered = set()
    recount = {}
    for c in cs:
        assert list(c) == sorted(c)
        assert _is_clique(g, c)
        members = set(c)
        assert not any(_is_clique(g, members | {w}) for w in range(g.n) if w not in members)
        for pair in itertools.combinations(c, 2):
            covered.add(pair)
            recount[pair] = recount.get(pair, 0) + 1
    assert covered == {tuple(e) for e in g.edges.tolist()}
    assert recount == cs.edge_multiplicity
    assert all(m >= 1 for m in cs.edge_multiplicity.values())


def test_layout_matches_cliques():
    g = Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (2, 4)])
    cs = enumerate_maximal_cliques(g)
    lay = cs.layout
    assert lay.members.tolist() == [v for c in cs for v in c]
    keys = sorted(lay.pair_keys.tolist())
    expected = sorted(a * 5 + b for c in cs for a, b in itertools.combinations(c, 2))
    assert keys == expected


def test_clique_cap():
    g = Graph(6, [(0, 1), (2, 3), (4, 5)])
    with pytest.raises(CliqueLimitError):
        enumerate_maximal_cliques(g, max_cliques=2)


def test_brute_force_guard():
    with pytest.raises(ValueError):
        brute_force_maximal_cliques(Graph.empty(21))


def test_degeneracy_order_is_permutation(lesmis):
    order = degeneracy_order(lesmis.neighbor_sets())
    assert sorted(order) == list(range(lesmis.n))
