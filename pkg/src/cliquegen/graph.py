"""Immutable simple undirected graphs and edge-list I/O."""
from __future__ import annotations

import io
import os
from functools import cached_property
from importlib import resources
from typing import Iterable, NamedTuple

import numpy as np
import scipy.sparse as sp


class EdgeListParseError(ValueError):
    def __init__(self, lineno: int, line: str, reason: str):
        super().__init__(f"line {lineno}: {reason}: {line.strip()!r}")
        self.lineno = lineno


class Graph:
    """Simple undirected graph on nodes ``0 .. n-1``.

    Edges are stored once, as pairs ``(i, j)`` with ``i < j`` in ascending
    lexicographic order. Instances are immutable; samplers always build new
    graphs.

    Parameters
    ----------
    n : int
        Number of nodes.
    edges : iterable of pairs, optional
        Unordered node pairs. Duplicates and reversed duplicates collapse.
        Self-loops and out-of-range ids raise ``ValueError``.
    """

    def __init__(self, n: int, edges: Iterable = ()):
        n = int(n)
        if n < 0:
            raise ValueError("node count must be non-negative")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("edges must be a sequence of node pairs")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError(f"edge endpoint outside [0, {n})")
        if np.any(arr[:, 0] == arr[:, 1]):
            raise ValueError("self-loops are not allowed")
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        self._n = n
        self._keys = _freeze(np.unique(lo * n + hi))

    @classmethod
    def from_keys(cls, n: int, keys: np.ndarray) -> "Graph":
        """Build from encoded pair keys ``i * n + j`` (``i < j``), which must be sorted and unique."""
        g = cls.__new__(cls)
        g._n = int(n)
        g._keys = _freeze(np.asarray(keys, dtype=np.int64))
        return g

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls.from_keys(n, np.empty(0, dtype=np.int64))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        i, j = np.triu_indices(n, k=1)
        return cls.from_keys(n, i.astype(np.int64) * n + j)

    @classmethod
    def from_adjacency(cls, a) -> "Graph":
        """Graph from the upper triangle of a square 0/1 matrix (diagonal ignored)."""
        upper = sp.triu(sp.csr_matrix(a), k=1).tocoo()
        n = upper.shape[0]
        nz = upper.data != 0
        keys = upper.row[nz].astype(np.int64) * n + upper.col[nz]
        return cls.from_keys(n, np.unique(keys))

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return int(self._keys.size)

    @property
    def edge_keys(self) -> np.ndarray:
        """Sorted int64 keys ``i * n + j`` of the edges, ``i < j``."""
        return self._keys

    @cached_property
    def edges(self) -> np.ndarray:
        if self._n == 0:
            return _freeze(np.empty((0, 2), dtype=np.int64))
        return _freeze(np.column_stack((self._keys // self._n, self._keys % self._n)))

    @cached_property
    def adjacency_matrix(self) -> sp.csr_matrix:
        """Symmetric 0/1 CSR adjacency matrix (int64 data)."""
        e = self.edges
        rows = np.concatenate((e[:, 0], e[:, 1]))
        cols = np.concatenate((e[:, 1], e[:, 0]))
        data = np.ones(rows.size, dtype=np.int64)
        a = sp.csr_matrix((data, (rows, cols)), shape=(self._n, self._n))
        a.sort_indices()
        return a

    @cached_property
    def degrees(self) -> np.ndarray:
        return _freeze(np.bincount(self.edges.ravel(), minlength=self._n).astype(np.int64))

    @cached_property
    def _edge_set(self) -> frozenset:
        return frozenset(self._keys.tolist())

    def neighbors(self, i: int) -> np.ndarray:
        a = self.adjacency_matrix
        return a.indices[a.indptr[i]:a.indptr[i + 1]]

    def has_edge(self, i: int, j: int) -> bool:
        if i == j:
            return False
        i, j = (i, j) if i < j else (j, i)
        return i * self._n + j in self._edge_set

    def neighbor_sets(self) -> list[set[int]]:
        return [set(self.neighbors(i).tolist()) for i in range(self._n)]

    def dense(self) -> np.ndarray:
        return self.adjacency_matrix.toarray()

    def check_invariants(self) -> None:
        """Assert the structural invariants; raises ``AssertionError`` on violation."""
        e = self.edges
        assert np.all(e[:, 0] < e[:, 1]), "edge not stored as i < j"
        assert np.all(np.diff(self._keys) > 0), "edges unsorted or duplicated"
        a = self.adjacency_matrix
        assert (a != a.T).nnz == 0, "adjacency not symmetric"
        assert a.diagonal().sum() == 0, "self-loop present"
        assert int(self.degrees.sum()) == 2 * self.m, "degree sum != 2m"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and np.array_equal(self._keys, other._keys)

    def __hash__(self) -> int:
        return hash((self._n, self._keys.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class ParsedEdgeList(NamedTuple):
    graph: Graph
    self_loops: int
    id_map: dict[int, int] | None


def parse_edge_list(text, relabel: bool = False) -> ParsedEdgeList:
    """Parse a whitespace-separated edge list.

    Lines starting with ``#`` or ``%`` and blank lines are skipped. Extra
    columns (weights, timestamps) are ignored. Self-loops are dropped and
    counted, but their ids still count as nodes. Without ``relabel`` the node
    count is ``1 + max id``; with it, ids are compacted to ``0 .. k-1`` in
    ascending order of original id and the mapping ``original -> new`` is
    returned.
    """
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    us, vs = [], []
    seen = set()
    loops = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s[0] in "#%":
            continue
        tok = s.split()
        if len(tok) < 2:
            raise EdgeListParseError(lineno, line, "expected two node ids")
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise EdgeListParseError(lineno, line, "node id is not an integer") from None
        if u < 0 or v < 0:
            raise EdgeListParseError(lineno, line, "negative node id")
        seen.add(u)
        seen.add(v)
        if u == v:
            loops += 1
            continue
        us.append(u)
        vs.append(v)
    id_map = None
    if relabel:
        id_map = {o: i for i, o in enumerate(sorted(seen))}
        us = [id_map[u] for u in us]
        vs = [id_map[v] for v in vs]
        n = len(seen)
    else:
        n = max(seen) + 1 if seen else 0
    g = Graph(n, np.column_stack((us, vs)) if us else ())
    return ParsedEdgeList(g, loops, id_map)


def write_edge_list(g: Graph) -> bytes:
    buf = io.StringIO()
    for i, j in g.edges.tolist():
        buf.write("%d %d\n" % (i, j))
    return buf.getvalue().encode("ascii")


def read_graph(path: str | os.PathLike, relabel: bool = False) -> ParsedEdgeList:
    with open(path, "rb") as fh:
        return parse_edge_list(fh.read(), relabel=relabel)


def write_graph(g: Graph, path: str | os.PathLike) -> None:
    with open(path, "wb") as fh:
        fh.write(write_edge_list(g))


def write_id_map(id_map: dict, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for orig, new in sorted(id_map.items(), key=lambda kv: kv[1]):
            fh.write(f"{orig} {new}\n")


def read_id_map(path: str | os.PathLike) -> dict[str, int]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                orig, new = line.split()
                out[orig] = int(new)
    return out


def degree_sequence(g: Graph) -> np.ndarray:
    return g.degrees.copy()


def ring_of_cliques(num_cliques: int, clique_size: int) -> Graph:
    """``num_cliques`` disjoint cliques joined in a ring by single edges.

    Clique ``c`` occupies nodes ``c*s .. c*s + s-1``; its last node is wired
    to the first node of clique ``c+1`` (mod ``num_cliques``).
    """
    if int(num_cliques) < 3:
        raise ValueError("num_cliques must be >= 3")
    if int(clique_size) < 2:
        raise ValueError("clique_size must be >= 2")
    c, s = int(num_cliques), int(clique_size)
    edges = []
    for b in range(c):
        base = b * s
        edges.extend((base + i, base + j) for i in range(s) for j in range(i + 1, s))
        edges.append((base + s - 1, ((b + 1) % c) * s))
    return Graph(c * s, edges)


def load_les_miserables() -> Graph:
    """The bundled Les Miserables co-appearance network (77 nodes, 254 edges)."""
    data = resources.files("cliquegen").joinpath("data/lesmis.txt").read_bytes()
    return parse_edge_list(data).graph


def les_miserables_names() -> dict[str, int]:
    text = resources.files("cliquegen").joinpath("data/lesmis.idmap").read_text("utf-8")
    return {name: int(i) for name, i in (ln.split() for ln in text.splitlines() if ln.strip())}
