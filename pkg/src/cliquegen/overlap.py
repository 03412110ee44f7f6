"""Overlap and volume of graph generative models.

For a distribution over graphs, the volume is the expected edge count of a
sample and the overlap is the expected number of edges shared by two
independent samples divided by the volume.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.sparse as sp

from .graph import Graph
from .models import EdgeProbabilityMatrix
from .rng import check_random_state, default_threads, stream

BOOTSTRAP_KEY = (0, 0xB007)
DEFAULT_BOOTSTRAP = 1000
_CHUNK = 100


@dataclass(frozen=True)
class OverlapEstimate:
    overlap: float
    volume: float
    std_error: float
    pairs_used: int
    mean_shared: float
    pairing: str = "disjoint"

    @property
    def defined(self) -> bool:
        return bool(np.isfinite(self.overlap))


def _as_sampler(sampler) -> Callable[[np.random.Generator], Graph]:
    return sampler.draw if hasattr(sampler, "draw") else sampler


def draw_samples(sampler, count: int, seed: int, prefix: tuple = (), n_jobs: int | None = None) -> list[Graph]:
    """Samples ``0 .. count-1``; sample ``k`` is drawn from ``stream(seed, *prefix, k)``."""
    fn = _as_sampler(sampler)
    n_jobs = default_threads() if n_jobs is None else n_jobs

    def one(k):
        return fn(stream(seed, *prefix, k))

    if n_jobs <= 1:
        return [one(k) for k in range(count)]
    with ThreadPoolExecutor(max_workers=n_jobs) as ex:
        return list(ex.map(one, range(count)))


def shared_edges(a: Graph, b: Graph) -> int:
    return int(np.intersect1d(a.edge_keys, b.edge_keys, assume_unique=True).size)


def overlap_from_samples(
    samples: Sequence[Graph],
    pairing: str = "disjoint",
    n_bootstrap: int = DEFAULT_BOOTSTRAP,
    random_state=None,
) -> OverlapEstimate:
    """Estimate overlap and volume from i.i.d. samples of one model.

    ``pairing="disjoint"`` pairs samples ``(2k, 2k+1)``; the standard error is
    a bootstrap over pairs. ``pairing="all"`` averages shared edges over every
    pair of distinct samples (a U-statistic with the same expectation and
    lower variance); its standard error is a bootstrap over samples that
    ignores pairs of a sample with its own copy. Volume is the mean edge
    count over all samples either way.
    """
    if len(samples) < 2:
        raise ValueError("need at least two samples")
    rng = check_random_state(random_state)
    sizes = np.array([g.m for g in samples], dtype=float)
    if pairing == "disjoint":
        npairs = len(samples) // 2
        shared = np.array([shared_edges(samples[2 * k], samples[2 * k + 1]) for k in range(npairs)], dtype=float)
        size_pairs = sizes[: 2 * npairs].reshape(npairs, 2).sum(axis=1)
        volume = float(sizes.mean())
        mean_shared = float(shared.mean())
        boot = []
        for start in range(0, n_bootstrap, _CHUNK):
            idx = rng.integers(0, npairs, size=(min(_CHUNK, n_bootstrap - start), npairs))
            vol_b = size_pairs[idx].mean(axis=1) / 2.0
            with np.errstate(invalid="ignore", divide="ignore"):
                boot.append(shared[idx].mean(axis=1) / vol_b)
        used = npairs
    elif pairing == "all":
        N = len(samples)
        keys = np.concatenate([g.edge_keys for g in samples])
        _, col = np.unique(keys, return_inverse=True)
        row = np.repeat(np.arange(N), sizes.astype(np.int64))
        inc = sp.csr_matrix((np.ones(keys.size), (row, col.ravel())), shape=(N, int(col.max(initial=-1)) + 1))
        counts = np.asarray(inc.sum(axis=0)).ravel()
        volume = float(sizes.mean())
        mean_shared = float((counts * (counts - 1)).sum()) / (N * (N - 1))
        boot = []
        inc_t = inc.T.tocsr()
        for start in range(0, n_bootstrap, _CHUNK):
            b = min(_CHUNK, n_bootstrap - start)
            w = rng.multinomial(N, np.full(N, 1.0 / N), size=b).astype(float)
            cw = (inc_t @ w.T).T
            pair_shared = (cw ** 2).sum(axis=1) - (w ** 2 * sizes).sum(axis=1)
            npair = N * N - (w ** 2).sum(axis=1)
            vol_b = (w * sizes).sum(axis=1) / N
            with np.errstate(invalid="ignore", divide="ignore"):
                boot.append(pair_shared / npair / vol_b)
        used = N * (N - 1) // 2
    else:
        raise ValueError(f"pairing must be 'disjoint' or 'all', got {pairing!r}")
    if volume == 0.0:
        return OverlapEstimate(float("nan"), 0.0, float("nan"), used, mean_shared, pairing)
    boot = np.concatenate(boot) if boot else np.empty(0)
    se = float(np.nanstd(boot, ddof=1)) if np.isfinite(boot).sum() > 1 else float("nan")
    return OverlapEstimate(mean_shared / volume, volume, se, used, mean_shared, pairing)


def estimate_overlap(
    sampler,
    num_pairs: int,
    seed: int,
    pairing: str = "disjoint",
    n_bootstrap: int = DEFAULT_BOOTSTRAP,
    prefix: tuple = (),
    n_jobs: int | None = None,
) -> OverlapEstimate:
    """Monte-Carlo overlap of a sampler from ``2 * num_pairs`` seeded samples.

    ``sampler`` is either a callable taking a ``numpy.random.Generator`` and
    returning a :class:`Graph`, or an object with such a ``draw`` method.
    """
    if int(num_pairs) < 1:
        raise ValueError("num_pairs must be >= 1")
    samples = draw_samples(sampler, 2 * int(num_pairs), seed, prefix, n_jobs=n_jobs)
    return overlap_from_samples(samples, pairing, n_bootstrap, stream(seed, *prefix, *BOOTSTRAP_KEY))


def exact_overlap_ei(P: EdgeProbabilityMatrix | np.ndarray) -> tuple[float, float]:
    """Closed-form ``(overlap, volume)`` of an edge-independent model.

    ``overlap = sum P_ij^2 / sum P_ij`` over pairs ``i < j``; ``nan`` when the
    volume is zero.
    """
    if not isinstance(P, EdgeProbabilityMatrix):
        P = EdgeProbabilityMatrix(P)
    u = P.upper()
    volume = float(u.sum())
    if volume == 0.0:
        return float("nan"), 0.0
    return float((u * u).sum()) / volume, volume


def edge_overlap_vs_input(sample: Graph, input_graph: Graph) -> float:
    """Fraction of the input's edges that also appear in ``sample``."""
    if sample.n != input_graph.n:
        raise ValueError(f"node counts differ: {sample.n} vs {input_graph.n}")
    if input_graph.m == 0:
        return float("nan")
    return shared_edges(sample, input_graph) / input_graph.m
