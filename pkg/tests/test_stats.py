import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cliquegen.graph import Graph, ring_of_cliques
from cliquegen.stats import (
    StatsReport,
    brute_force_four_clique_count,
    brute_force_four_cycle_count,
    brute_force_triangle_count,
    characteristic_path_length,
    component_sizes,
    four_clique_count,
    four_cycle_count,
    fraction_connected_pairs,
    pcc,
    stats_report,
    transitivity,
    triangle_count,
    triangle_sequence,
)

from conftest import random_graph, small_random_graphs


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges.tolist())
    return h


def test_small_examples(k4):
    assert triangle_count(Graph.complete(3)) == 1
    assert four_cycle_count(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])) == 1
    assert (triangle_count(k4), four_clique_count(k4), four_cycle_count(k4)) == (4, 1, 3)
    assert triangle_sequence(k4).tolist() == [3, 3, 3, 3]


def test_counts_against_oracles_gnp_10():
    rng = np.random.default_rng(11)
    for _ in range(50):
        g = random_graph(10, 0.5, rng)
        assert triangle_count(g) == brute_force_triangle_count(g)
        assert four_clique_count(g) == brute_force_four_clique_count(g)
        assert four_cycle_count(g) == brute_force_four_cycle_count(g)


def test_counts_against_oracles_mixed():
    for g in small_random_graphs(seed=7):
        assert triangle_count(g) == brute_force_triangle_count(g)
        assert four_clique_count(g) == brute_force_four_clique_count(g)
        assert four_cycle_count(g) == brute_force_four_cycle_count(g)


def test_against_networkx(lesmis):
    h = to_nx(lesmis)
    tri = nx.triangles(h)
    assert triangle_sequence(lesmis).tolist() == [tri[i] for i in range(lesmis.n)]
    assert transitivity(lesmis) == pytest.approx(nx.transitivity(h))
    assert characteristic_path_length(lesmis) == pytest.approx(nx.average_shortest_path_length(h))


def test_pcc():
    assert pcc([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0)
    assert pcc([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0)
    assert math.isnan(pcc([1, 1, 1], [1, 2, 3]))
    with pytest.raises(ValueError):
        pcc([1, 2], [1, 2, 3])
    with pytest.raises(ValueError):
        pcc([1], [1])


def test_transitivity_edge_cases():
    assert transitivity(Graph.complete(5)) == pytest.approx(1.0)
    assert math.isnan(transitivity(Graph(2, [(0, 1)])))
    assert transitivity(Graph(4, [(0, 1), (0, 2), (0, 3)])) == 0.0


def test_connectivity():
    g = Graph(5, [(0, 1), (1, 2), (3, 4)])
    assert sorted(component_sizes(g).tolist()) == [2, 3]
    assert fraction_connected_pairs(g) == pytest.approx(4 / 10)
    # connected pairs only: 1, 1, 2 within {0,1,2} and 1 for {3,4}
    assert characteristic_path_length(g) == pytest.approx(5 / 4)
    assert fraction_connected_pairs(Graph.complete(6)) == 1.0
    assert math.isnan(characteristic_path_length(Graph.empty(4)))
    assert math.isnan(fraction_connected_pairs(Graph.empty(1)))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(3, 25), st.floats(0.0, 0.5))
def test_fraction_connected_pairs_monotone(seed, n, density):
    rng = np.random.default_rng(seed)
    g = random_graph(n, density, rng)
    i, j = sorted(rng.choice(n, size=2, replace=False).tolist())
    bigger = Graph.from_keys(n, np.union1d(g.edge_keys, [i * n + j]))
    assert fraction_connected_pairs(bigger) >= fraction_connected_pairs(g)


def test_report_against_itself(lesmis):
    rep = stats_report(lesmis, reference=lesmis)
    assert rep.triangles == 467
    for col in ("degree_pcc", "triangle_pcc", "normalized_triangles",
                "normalized_four_cliques", "normalized_four_cycles"):
        assert getattr(rep, col) == pytest.approx(1.0)
    assert StatsReport.columns()[:3] == ["n", "edges", "max_degree"]


def test_report_without_reference():
    rep = stats_report(Graph.complete(4))
    assert math.isnan(rep.degree_pcc) and math.isnan(rep.normalized_triangles)
    assert rep.max_degree == 3 and rep.edges == 6


def test_report_normalization_ratio():
    ref = Graph.complete(5)
    rep = stats_report(Graph(5, Graph.complete(4).edges), reference=ref)
    assert rep.normalized_triangles == pytest.approx(4 / 10)
    assert rep.normalized_four_cliques == pytest.approx(1 / 5)
    assert rep.normalized_four_cycles == pytest.approx(3 / 15)


def test_ring_triangle_pcc_undefined():
    g = ring_of_cliques(10, 10)
    rep = stats_report(g, reference=g)
    assert math.isnan(rep.triangle_pcc)
    assert rep.transitivity == pytest.approx(nx.transitivity(to_nx(g)))
    assert rep.four_cliques == 10 * math.comb(10, 4)
    assert rep.four_cycles == 10 * 3 * math.comb(10, 4)


def test_reference_size_mismatch():
    with pytest.raises(ValueError):
        stats_report(Graph.complete(3), reference=Graph.complete(4))
