import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cliquegen.graph import (
    EdgeListParseError,
    Graph,
    degree_sequence,
    les_miserables_names,
    parse_edge_list,
    read_graph,
    read_id_map,
    ring_of_cliques,
    write_edge_list,
    write_graph,
    write_id_map,
)
from cliquegen.stats import triangle_count


def test_parse_triangle():
    g, loops, id_map = parse_edge_list("0 1\n1 2\n2 0")
    assert (g.n, g.m, loops, id_map) == (3, 3, 0, None)


def test_parse_dedup_and_self_loops():
    g, loops, _ = parse_edge_list(b"0 1\n1 0\n0 0")
    assert (g.n, g.m) == (2, 1)
    assert loops == 1


def test_parse_comments_blank_and_extra_columns():
    g = parse_edge_list("# header\n% other\n\n0 1 0.5\n  3 1\n").graph
    assert g.n == 4
    assert g.edges.tolist() == [[0, 1], [1, 3]]


def test_parse_empty():
    g = parse_edge_list("").graph
    assert (g.n, g.m) == (0, 0)


@pytest.mark.parametrize("text, line", [("0 1\n1 x\n", 2), ("0 1\n\n2\n", 3), ("1.5 2\n", 1), ("-1 2\n", 1)])
def test_parse_errors_carry_line_number(text, line):
    with pytest.raises(EdgeListParseError) as exc:
        parse_edge_list(text)
    assert exc.value.lineno == line
    assert f"line {line}" in str(exc.value)


def test_relabel_and_id_map_sidecar(tmp_path):
    parsed = parse_edge_list("10 40\n40 7\n", relabel=True)
    assert parsed.id_map == {7: 0, 10: 1, 40: 2}
    assert parsed.graph.edges.tolist() == [[0, 2], [1, 2]]
    path = tmp_path / "g.idmap"
    write_id_map(parsed.id_map, path)
    assert path.read_text() == "7 0\n10 1\n40 2\n"
    assert read_id_map(path) == {"7": 0, "10": 1, "40": 2}


def test_write_edge_list_bit_exact():
    g = Graph(3, [(1, 2), (2, 0), (0, 1)])
    assert write_edge_list(g) == b"0 1\n0 2\n1 2\n"
    assert write_edge_list(Graph.empty(5)) == b""


def test_les_miserables_table_values(lesmis):
    assert (lesmis.n, lesmis.m) == (77, 254)
    assert int(degree_sequence(lesmis).sum()) == 508
    assert triangle_count(lesmis) == 467
    assert len(les_miserables_names()) == 77


def test_round_trip_file(tmp_path, lesmis):
    path = tmp_path / "lesmis.txt"
    write_graph(lesmis, path)
    again = read_graph(path).graph
    assert again == lesmis
    assert write_edge_list(again) == path.read_bytes()


@st.composite
def graphs(draw, max_n=15):
    n = draw(st.integers(0, max_n))
    if n < 2:
        return Graph(n)
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=40))
    return Graph(n, [(a, b) for a, b in pairs if a != b])


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_parse_write_fixed_point(g):
    g.check_invariants()
    text = write_edge_list(g)
    back = parse_edge_list(text).graph
    # isolated trailing nodes are not representable in an edge list
    assert back.edges.tolist() == g.edges.tolist()
    assert write_edge_list(back) == text
    assert parse_edge_list(write_edge_list(back)).graph == back


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_adjacency_invariants(g):
    a = g.dense()
    assert np.array_equal(a, a.T)
    assert np.all(np.diag(a) == 0)
    assert g.degrees.sum() == 2 * g.m
    for i in range(g.n):
        nb = g.neighbors(i)
        assert list(nb) == sorted(nb)
        for j in nb:
            assert g.has_edge(i, j) and g.has_edge(j, i)


def test_degree_sequences(k4):
    assert degree_sequence(Graph.complete(3)).tolist() == [2, 2, 2]
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    assert degree_sequence(star).tolist() == [3, 1, 1, 1]


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 3)])
    with pytest.raises(ValueError):
        Graph(-1)


def test_graph_is_immutable(k4):
    with pytest.raises(ValueError):
        k4.edges[0, 0] = 3
    with pytest.raises(ValueError):
        k4.edge_keys[0] = 3


def test_ring_of_cliques_ten_by_ten():
    g = ring_of_cliques(10, 10)
    g.check_invariants()
    assert (g.n, g.m) == (100, 10 * 45 + 10)
    assert triangle_count(g) == 1200


def test_ring_of_cliques_smallest():
    g = ring_of_cliques(3, 2)
    assert (g.n, g.m) == (6, 6)
    assert g.degrees.tolist() == [2] * 6
    assert triangle_count(g) == 0


@pytest.mark.parametrize("c, s", [(3, 3), (4, 5), (7, 4), (5, 6)])
def test_ring_of_cliques_triangles(c, s):
    from math import comb

    assert triangle_count(ring_of_cliques(c, s)) == c * comb(s, 3)


@pytest.mark.parametrize("c, s", [(2, 5), (5, 1)])
def test_ring_of_cliques_range(c, s):
    with pytest.raises(ValueError):
        ring_of_cliques(c, s)
