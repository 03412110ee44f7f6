"""Maximal clique enumeration and per-edge clique multiplicity."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .graph import Graph
from .validation import check_graph

DEFAULT_MAX_CLIQUES = 10**7
BRUTE_FORCE_MAX_N = 20


class CliqueLimitError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class CliqueSet:
    """Maximal cliques (size >= 2) of a graph in canonical order.

    Each clique is a sorted tuple of node ids and the list is sorted
    lexicographically, so iteration order is stable across runs.
    """

    n: int
    cliques: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.cliques)

    def __iter__(self):
        return iter(self.cliques)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CliqueSet):
            return NotImplemented
        return self.n == other.n and self.cliques == other.cliques

    def __hash__(self) -> int:
        return hash((self.n, self.cliques))

    @property
    def max_size(self) -> int:
        return max((len(c) for c in self.cliques), default=0)

    @cached_property
    def layout(self) -> "CliqueLayout":
        return CliqueLayout.build(self)

    @cached_property
    def edge_multiplicity(self) -> dict[tuple[int, int], int]:
        """``{(i, j): m_ij}`` for every pair (``i < j``) covered by some clique."""
        keys, counts = np.unique(self.layout.pair_keys, return_counts=True)
        n = self.n
        return {(int(k // n), int(k % n)): int(c) for k, c in zip(keys, counts)}

    def multiplicity_keys(self) -> tuple[np.ndarray, np.ndarray]:
        """Sorted pair keys and their clique multiplicities, as arrays."""
        return np.unique(self.layout.pair_keys, return_counts=True)


@dataclass(frozen=True)
class CliqueLayout:
    """Flat arrays describing every (clique, member) slot and (clique, pair) entry.

    ``members[slot]`` is the node held by a slot and ``slot_clique[slot]`` its
    clique. Pair entry ``t`` joins slots ``pair_a[t] < pair_b[t]`` of clique
    ``pair_clique[t]``; ``pair_keys[t]`` is the encoded node pair.
    """

    members: np.ndarray
    slot_clique: np.ndarray
    pair_a: np.ndarray
    pair_b: np.ndarray
    pair_clique: np.ndarray
    pair_keys: np.ndarray

    @classmethod
    def build(cls, cs: CliqueSet) -> "CliqueLayout":
        sizes = np.fromiter((len(c) for c in cs.cliques), dtype=np.int64, count=len(cs.cliques))
        members = (np.fromiter((v for c in cs.cliques for v in c), dtype=np.int64, count=int(sizes.sum()))
                   if len(sizes) else np.empty(0, dtype=np.int64))
        offsets = np.concatenate(([0], np.cumsum(sizes)))
        slot_clique = np.repeat(np.arange(len(sizes), dtype=np.int64), sizes)
        pa, pb, pc = [], [], []
        for s in np.unique(sizes):
            iu, ju = np.triu_indices(int(s), k=1)
            starts = offsets[:-1][sizes == s]
            pa.append((starts[:, None] + iu[None, :]).ravel())
            pb.append((starts[:, None] + ju[None, :]).ravel())
            pc.append(np.repeat(np.flatnonzero(sizes == s), iu.size))
        if pa:
            pair_a, pair_b, pair_clique = (np.concatenate(x) for x in (pa, pb, pc))
            order = np.lexsort((pair_b, pair_a))
            pair_a, pair_b, pair_clique = pair_a[order], pair_b[order], pair_clique[order]
        else:
            pair_a = pair_b = pair_clique = np.empty(0, dtype=np.int64)
        # members are sorted within a clique, so slot a < slot b gives node a < node b
        pair_keys = members[pair_a] * cs.n + members[pair_b]
        return cls(members, slot_clique, pair_a, pair_b, pair_clique, pair_keys)


def _canonical(n: int, found) -> CliqueSet:
    return CliqueSet(n, tuple(sorted(tuple(sorted(c)) for c in found)))


def degeneracy_order(adj: list[set[int]]) -> list[int]:
    """Repeatedly remove a minimum-degree vertex (ties by smallest id)."""
    n = len(adj)
    deg = [len(a) for a in adj]
    maxdeg = max(deg, default=0)
    buckets = [set() for _ in range(maxdeg + 1)]
    for v, d in enumerate(deg):
        buckets[d].add(v)
    removed = [False] * n
    order = []
    d = 0
    for _ in range(n):
        d = max(d - 1, 0)
        while not buckets[d]:
            d += 1
        v = min(buckets[d])
        buckets[d].remove(v)
        removed[v] = True
        order.append(v)
        for u in adj[v]:
            if not removed[u]:
                buckets[deg[u]].remove(u)
                deg[u] -= 1
                buckets[deg[u]].add(u)
    return order


def enumerate_maximal_cliques(g: Graph, max_cliques: int = DEFAULT_MAX_CLIQUES) -> CliqueSet:
    """All maximal cliques of size >= 2.

    Bron-Kerbosch with Tomita pivoting, with the outer level run in a
    degeneracy ordering (Eppstein, Loffler and Strash). Raises
    ``CliqueLimitError`` once more than ``max_cliques`` cliques are found.
    """
    check_graph(g)
    adj = g.neighbor_sets()
    found: list[list[int]] = []

    def expand(r: list[int], p: set[int], x: set[int]) -> None:
        if not p:
            if not x and len(r) >= 2:
                found.append(r)
                if len(found) > max_cliques:
                    raise CliqueLimitError(f"more than {max_cliques} maximal cliques")
            return
        pivot = max(p | x, key=lambda u: len(p & adj[u]))
        for v in sorted(p - adj[pivot]):
            nv = adj[v]
            expand(r + [v], p & nv, x & nv)
            p.remove(v)
            x.add(v)

    order = degeneracy_order(adj)
    rank = {v: i for i, v in enumerate(order)}
    for v in order:
        later = {u for u in adj[v] if rank[u] > rank[v]}
        earlier = adj[v] - later
        expand([v], later, earlier)
    return _canonical(g.n, found)


def brute_force_maximal_cliques(g: Graph) -> CliqueSet:
    """Exhaustive subset enumeration; a test oracle for graphs with n <= 20."""
    check_graph(g)
    n = g.n
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    nbr = [0] * n
    for i, j in g.edges.tolist():
        nbr[i] |= 1 << j
        nbr[j] |= 1 << i
    full = 1 << n
    is_clique = bytearray(full)
    is_clique[0] = 1
    for s in range(1, full):
        low = (s & -s).bit_length() - 1
        rest = s & (s - 1)
        is_clique[s] = is_clique[rest] and (rest & ~nbr[low]) == 0
    found = []
    for s in range(1, full):
        if not is_clique[s] or s & (s - 1) == 0:
            continue
        extendable = any(not (s >> w) & 1 and (s & ~nbr[w]) == 0 for w in range(n))
        if not extendable:
            found.append([v for v in range(n) if (s >> v) & 1])
    return _canonical(n, found)
