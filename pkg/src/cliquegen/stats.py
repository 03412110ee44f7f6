"""Graph statistics for comparing generated graphs against an input graph.

Undefined values (zero-variance correlations, no wedges, no connected
pairs) are reported as ``nan``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, fields

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from .graph import Graph
from .validation import check_graph

NAN = float("nan")


def _common_neighbors(g: Graph) -> sp.csr_matrix:
    a = g.adjacency_matrix
    return a @ a


def triangle_sequence(g: Graph) -> np.ndarray:
    """Number of triangles incident to each node."""
    check_graph(g)
    a = g.adjacency_matrix
    closed = _common_neighbors(g).multiply(a)
    return np.asarray(closed.sum(axis=1)).ravel().astype(np.int64) // 2


def triangle_count(g: Graph) -> int:
    return int(triangle_sequence(g).sum()) // 3


def four_cycle_count(g: Graph) -> int:
    """Number of distinct 4-cycles (squares).

    A square has two diagonals, and for a node pair with ``c`` common
    neighbours there are ``C(c, 2)`` squares using that pair as a diagonal, so
    summing ``C(c, 2)`` over unordered pairs counts every square twice.
    """
    check_graph(g)
    c = sp.triu(_common_neighbors(g), k=1).data
    return int((c * (c - 1) // 2).sum()) // 2


def four_clique_count(g: Graph) -> int:
    """Number of K4 subgraphs, by listing over a degree-ordered orientation."""
    check_graph(g)
    deg = g.degrees
    rank = np.lexsort((np.arange(g.n), deg))
    pos = np.empty(g.n, dtype=np.int64)
    pos[rank] = np.arange(g.n)
    out: list[set[int]] = [set() for _ in range(g.n)]
    for i, j in g.edges.tolist():
        if pos[i] < pos[j]:
            out[i].add(j)
        else:
            out[j].add(i)
    total = 0
    for u in range(g.n):
        ou = out[u]
        for v in ou:
            common = ou & out[v]
            if len(common) < 2:
                continue
            for w in common:
                total += len(out[w] & common)
    return total


def pcc(a, b) -> float:
    """Pearson correlation; ``nan`` if either input has zero variance."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"pcc needs equal-length vectors, got {a.shape} and {b.shape}")
    if a.size < 2:
        raise ValueError("pcc needs at least two entries")
    da = a - a.mean()
    db = b - b.mean()
    sa = math.sqrt(float(da @ da))
    sb = math.sqrt(float(db @ db))
    if sa == 0.0 or sb == 0.0:
        return NAN
    r = float(da @ db) / (sa * sb)
    return min(1.0, max(-1.0, r))


def wedge_count(g: Graph) -> int:
    d = g.degrees
    return int((d * (d - 1) // 2).sum())


def transitivity(g: Graph) -> float:
    wedges = wedge_count(g)
    if wedges == 0:
        return NAN
    return 3.0 * triangle_count(g) / wedges


def component_sizes(g: Graph) -> np.ndarray:
    _, labels = csgraph.connected_components(g.adjacency_matrix, directed=False)
    return np.bincount(labels, minlength=1) if g.n else np.zeros(0, dtype=np.int64)


def fraction_connected_pairs(g: Graph) -> float:
    check_graph(g)
    if g.n < 2:
        return NAN
    s = component_sizes(g).astype(np.int64)
    return float((s * (s - 1) // 2).sum()) / (g.n * (g.n - 1) // 2)


def characteristic_path_length(g: Graph) -> float:
    """Mean shortest-path length over connected, unordered node pairs."""
    check_graph(g)
    if g.m == 0:
        return NAN
    dist = csgraph.shortest_path(g.adjacency_matrix, method="D", directed=False, unweighted=True)
    iu = np.triu_indices(g.n, k=1)
    d = dist[iu]
    d = d[np.isfinite(d)]
    return float(d.mean()) if d.size else NAN


@dataclass(frozen=True)
class StatsReport:
    n: int
    edges: int
    max_degree: int
    degree_pcc: float
    triangle_pcc: float
    triangles: int
    four_cliques: int
    four_cycles: int
    fraction_connected_pairs: float
    char_path_length: float
    transitivity: float
    normalized_triangles: float = NAN
    normalized_four_cliques: float = NAN
    normalized_four_cycles: float = NAN

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def as_dict(self) -> dict:
        return asdict(self)


def _ratio(num: int, den: int) -> float:
    return NAN if den == 0 else num / den


def stats_report(g: Graph, reference: Graph | None = None) -> StatsReport:
    """All statistics of ``g``.

    With a ``reference`` graph on the same node set, the degree and triangle
    correlations are taken between node-aligned sequences of ``g`` and the
    reference, and the subgraph counts are also reported as ratios to the
    reference's counts. Without one, those fields are ``nan``.
    """
    check_graph(g)
    tri_seq = triangle_sequence(g)
    tri = int(tri_seq.sum()) // 3
    k4 = four_clique_count(g)
    c4 = four_cycle_count(g)
    wedges = wedge_count(g)
    extra = {}
    deg_pcc = tri_pcc = NAN
    if reference is not None:
        check_graph(reference)
        if reference.n != g.n:
            raise ValueError(f"reference has {reference.n} nodes, graph has {g.n}")
        if g.n >= 2:
            deg_pcc = pcc(g.degrees, reference.degrees)
            tri_pcc = pcc(tri_seq, triangle_sequence(reference))
        extra = dict(
            normalized_triangles=_ratio(tri, triangle_count(reference)),
            normalized_four_cliques=_ratio(k4, four_clique_count(reference)),
            normalized_four_cycles=_ratio(c4, four_cycle_count(reference)),
        )
    return StatsReport(
        n=g.n,
        edges=g.m,
        max_degree=int(g.degrees.max(initial=0)),
        degree_pcc=deg_pcc,
        triangle_pcc=tri_pcc,
        triangles=tri,
        four_cliques=k4,
        four_cycles=c4,
        fraction_connected_pairs=fraction_connected_pairs(g),
        char_path_length=characteristic_path_length(g),
        transitivity=NAN if wedges == 0 else 3.0 * tri / wedges,
        **extra,
    )


# Exhaustive oracles for small graphs.

def brute_force_triangle_count(g: Graph) -> int:
    a = g.dense()
    return sum(1 for i, j, k in itertools.combinations(range(g.n), 3) if a[i, j] and a[j, k] and a[i, k])


def brute_force_four_clique_count(g: Graph) -> int:
    a = g.dense()
    return sum(
        1 for q in itertools.combinations(range(g.n), 4)
        if all(a[x, y] for x, y in itertools.combinations(q, 2))
    )


def brute_force_four_cycle_count(g: Graph) -> int:
    """Closed non-backtracking walks over ordered distinct 4-tuples, divided by 8."""
    a = g.dense()
    walks = sum(
        1 for i, j, k, l in itertools.permutations(range(g.n), 4)
        if a[i, j] and a[j, k] and a[k, l] and a[l, i]
    )
    assert walks % 8 == 0
    return walks // 8
