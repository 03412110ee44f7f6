"""Upper bounds on expected triangle and k-cycle counts in terms of overlap.

For a model on ``n`` nodes with overlap ``ov``, the expected number of
k-cycles is at most::

    ei:  n**k * ov**k       / (2k)
    ni:  n**k * ov**(k / 2) / (2k)
    fd:  n**k * ov          / 2

At ``k = 3`` these read ``n^3 ov^3 / 6``, ``n^3 ov^1.5 / 6`` and
``n^3 ov / 2``. The ``ni`` constant is the geometric mean of the number of
possible k-cycle slots (at most ``n^k / (2k)``) and the ``ei`` bound.

:func:`verify_bound` checks a bound against Monte-Carlo estimates, using the
overlap measured from the same samples rather than a nominal parameter.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields

import numpy as np

from .graph import Graph
from .overlap import draw_samples, overlap_from_samples
from .rng import stream
from .stats import four_cycle_count, triangle_count
from .validation import check_kind

CONSTANT_CONVENTION = "ei:1/(2k)*(n*ov)^k; ni:1/(2k)*n^k*ov^(k/2); fd:1/2*n^k*ov"
SE_MARGIN = 3.0


def _check_overlap(overlap: float) -> float:
    overlap = float(overlap)
    if not 0.0 <= overlap <= 1.0:
        raise ValueError(f"overlap must lie in [0, 1], got {overlap}")
    return overlap


def kcycle_bound(kind: str, n: int, k: int, overlap: float) -> float:
    kind = check_kind(kind)
    if int(k) < 3:
        raise ValueError("cycle length k must be >= 3")
    if int(n) < 1:
        raise ValueError("n must be >= 1")
    ov = _check_overlap(overlap)
    k = int(k)
    nk = float(n) ** k
    if kind == "ei":
        return nk * ov**k / (2 * k)
    if kind == "ni":
        return nk * ov ** (k / 2) / (2 * k)
    return nk * ov / 2.0


def triangle_bound(kind: str, n: int, overlap: float) -> float:
    return kcycle_bound(kind, n, 3, overlap)


def volume_bound(n: int, overlap: float) -> float:
    """Largest expected edge count compatible with ``overlap``: ``C(n, 2) * overlap``."""
    return math.comb(int(n), 2) * _check_overlap(overlap)


def cycle_count(g: Graph, k: int) -> int:
    """Number of distinct k-cycles (as subgraphs)."""
    if k == 3:
        return triangle_count(g)
    if k == 4:
        return four_cycle_count(g)
    if k < 3:
        raise ValueError("cycle length k must be >= 3")
    return _cycles_by_search(g, k)


def _cycles_by_search(g: Graph, k: int) -> int:
    # each cycle is rooted at its smallest node and walked in both directions
    adj = g.neighbor_sets()
    total = 0

    def extend(root, path, on_path):
        nonlocal total
        last = path[-1]
        if len(path) == k:
            if root in adj[last]:
                total += 1
            return
        for v in adj[last]:
            if v > root and v not in on_path:
                on_path.add(v)
                path.append(v)
                extend(root, path, on_path)
                path.pop()
                on_path.remove(v)

    for r in range(g.n):
        extend(r, [r], {r})
    return total // 2


@dataclass(frozen=True)
class BoundReport:
    model: str
    kind: str
    k: int
    n: int
    num_samples: int
    overlap: float
    overlap_se: float
    volume: float
    volume_bound: float
    mean_count: float
    mean_se: float
    bound: float
    passed: bool
    tightness: float
    degenerate: bool
    constants: str = CONSTANT_CONVENTION

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def as_dict(self) -> dict:
        return asdict(self)


def verify_bound(
    model,
    kind: str | None = None,
    k: int = 3,
    num_samples: int = 10_000,
    seed: int = 0,
    pairing: str = "all",
    n_bootstrap: int = 200,
    name: str | None = None,
    n_jobs: int | None = None,
) -> BoundReport:
    """Compare a sampler's mean k-cycle count with the bound for ``kind``.

    ``model`` needs ``draw(rng)`` and ``n_nodes``; ``kind`` defaults to the
    model's own ``level``. The check passes when the sample mean is at most
    the bound at the estimated overlap plus three standard errors of the
    mean. ``tightness`` is mean / bound.
    """
    kind = check_kind(kind if kind is not None else model.level)
    if int(num_samples) < 2:
        raise ValueError("num_samples must be >= 2")
    n = int(model.n_nodes)
    samples = draw_samples(model, int(num_samples), seed, n_jobs=n_jobs)
    counts = np.array([cycle_count(g, k) for g in samples], dtype=float)
    est = overlap_from_samples(samples, pairing, n_bootstrap, stream(seed, 1, 0xB0))
    mean = float(counts.mean())
    se = float(counts.std(ddof=1) / math.sqrt(counts.size))
    label = name or type(model).__name__
    if not est.defined:
        return BoundReport(label, kind, k, n, counts.size, est.overlap, est.std_error, est.volume,
                           float("nan"), mean, se, float("nan"), False, float("nan"), True)
    ov = min(est.overlap, 1.0)
    bound = kcycle_bound(kind, n, k, ov)
    return BoundReport(
        model=label,
        kind=kind,
        k=int(k),
        n=n,
        num_samples=counts.size,
        overlap=est.overlap,
        overlap_se=est.std_error,
        volume=est.volume,
        volume_bound=volume_bound(n, ov),
        mean_count=mean,
        mean_se=se,
        bound=bound,
        passed=mean <= bound + SE_MARGIN * se,
        tightness=mean / bound if bound > 0 else float("nan"),
        degenerate=False,
    )
