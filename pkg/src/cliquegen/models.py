"""Max-clique planted samplers, the odds-product residual fit, and reference models.

Planted sampling walks the maximal cliques of an input graph and adds their
edges with a planting probability ``p``:

``ei``
    every (clique, edge) entry is an independent ``Bernoulli(p)`` coin, so an
    edge in several cliques gets several chances;
``ni``
    every (clique, member) slot is active with probability ``sqrt(p)`` and a
    clique contributes the edges between its active members;
``fd``
    every clique contributes all of its edges with probability ``p``.

In all three cases an edge covered by ``m`` cliques is present with
probability ``1 - (1 - p) ** m``. A residual edge-independent graph with
odds-product probabilities ``sigmoid(l_i + l_j)`` is fitted so that the union
of both samples matches the input degrees in expectation.
"""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg
from scipy.special import expit

from .cliques import CliqueSet, enumerate_maximal_cliques
from .graph import Graph
from .rng import check_random_state
from .validation import check_degrees, check_graph, check_kind, check_probability

logger = logging.getLogger(__name__)

LOGIT_CLAMP = 30.0
RESIDUAL_FLOOR = 1e-6
MAX_HALVINGS = 20


@lru_cache(maxsize=8)
def _triu(n: int) -> tuple[np.ndarray, np.ndarray]:
    i, j = np.triu_indices(n, k=1)
    return i, j


@dataclass(frozen=True, eq=False)
class EdgeProbabilityMatrix:
    """Symmetric ``n x n`` edge probabilities with a zero diagonal."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.array(self.probs, dtype=float)
        if p.ndim != 2 or p.shape[0] != p.shape[1]:
            raise ValueError("probability matrix must be square")
        if not np.all(np.isfinite(p)) or p.min(initial=0.0) < 0.0 or p.max(initial=0.0) > 1.0:
            raise ValueError("probabilities must lie in [0, 1]")
        if not np.allclose(p, p.T, rtol=0.0, atol=1e-12):
            raise ValueError("probability matrix must be symmetric")
        if np.any(np.diag(p) != 0.0):
            raise ValueError("probability matrix must have a zero diagonal")
        p = (p + p.T) / 2.0
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @classmethod
    def zeros(cls, n: int) -> "EdgeProbabilityMatrix":
        return cls(np.zeros((n, n)))

    @classmethod
    def constant(cls, n: int, p: float) -> "EdgeProbabilityMatrix":
        m = np.full((n, n), check_probability(p))
        np.fill_diagonal(m, 0.0)
        return cls(m)

    @property
    def n(self) -> int:
        return self.probs.shape[0]

    def upper(self) -> np.ndarray:
        """Entries above the diagonal in row-major order."""
        return self.probs[_triu(self.n)]

    def expected_degrees(self) -> np.ndarray:
        return self.probs.sum(axis=1)

    def volume(self) -> float:
        return float(self.upper().sum())


def sample_edge_independent(P: EdgeProbabilityMatrix | np.ndarray, random_state=None) -> Graph:
    """One draw from the edge-independent model with probabilities ``P``."""
    probs = P.probs if isinstance(P, EdgeProbabilityMatrix) else np.asarray(P, dtype=float)
    n = probs.shape[0]
    rng = check_random_state(random_state)
    i, j = _triu(n)
    hit = rng.random(i.size) < probs[i, j]
    # row-major upper-triangle order is already key order
    return Graph.from_keys(n, i[hit].astype(np.int64) * n + j[hit])


@dataclass(frozen=True, eq=False)
class PlantedModel:
    input: Graph
    cliques: CliqueSet
    p: float
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "p", check_probability(self.p))
        object.__setattr__(self, "kind", check_kind(self.kind))
        if self.cliques.n != self.input.n:
            raise ValueError("clique set does not belong to the input graph")

    @classmethod
    def from_graph(cls, g: Graph, p: float, kind: str, cliques: CliqueSet | None = None) -> "PlantedModel":
        check_graph(g)
        return cls(g, cliques if cliques is not None else enumerate_maximal_cliques(g), p, kind)


def sample_planted(m: PlantedModel, random_state=None) -> Graph:
    """Draw the planted graph. Random draws per sample are fixed in number and order."""
    rng = check_random_state(random_state)
    lay = m.cliques.layout
    if m.kind == "ei":
        keep = rng.random(lay.pair_keys.size) < m.p
    elif m.kind == "fd":
        fire = rng.random(len(m.cliques)) < m.p
        keep = fire[lay.pair_clique]
    else:
        active = rng.random(lay.members.size) < math.sqrt(m.p)
        keep = active[lay.pair_a] & active[lay.pair_b]
    return Graph.from_keys(m.input.n, np.unique(lay.pair_keys[keep]))


def compute_planted_marginals(m: PlantedModel) -> EdgeProbabilityMatrix:
    """Per-pair probability ``1 - (1 - p) ** m_ij`` of appearing in the planted graph."""
    n = m.input.n
    keys, mult = m.cliques.multiplicity_keys()
    probs = np.zeros((n, n))
    vals = 1.0 - (1.0 - m.p) ** mult
    i, j = keys // n, keys % n
    probs[i, j] = vals
    probs[j, i] = vals
    return EdgeProbabilityMatrix(probs)


@dataclass(frozen=True, eq=False)
class OddsProductModel:
    """Fitted residual model; ``residual_marginals[i, j] = sigmoid(l_i + l_j)`` off the diagonal."""

    logits: np.ndarray
    planted_marginals: EdgeProbabilityMatrix
    residual_marginals: EdgeProbabilityMatrix
    target_degrees: np.ndarray
    converged: bool
    final_error: float
    n_iter: int

    @property
    def n(self) -> int:
        return self.logits.size

    def union_marginals(self) -> np.ndarray:
        return 1.0 - (1.0 - self.planted_marginals.probs) * (1.0 - self.residual_marginals.probs)

    def expected_degrees(self) -> np.ndarray:
        return self.union_marginals().sum(axis=1)


def _residual_probs(logits: np.ndarray) -> np.ndarray:
    r = expit(logits[:, None] + logits[None, :])
    np.fill_diagonal(r, 0.0)
    return r


def _newton_direction(jac: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    with warnings.catch_warnings():
        warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
        try:
            step = scipy.linalg.solve(jac, rhs, assume_a="sym")
            if np.all(np.isfinite(step)):
                return step
        except (np.linalg.LinAlgError, scipy.linalg.LinAlgWarning, ValueError):
            pass
    return scipy.linalg.lstsq(jac, rhs)[0]


def fit_residual(
    degrees,
    planted: EdgeProbabilityMatrix,
    epsilon: float = 1e-8,
    max_iter: int = 100,
) -> OddsProductModel:
    """Fit odds-product logits so the union with the planted graph matches ``degrees`` in expectation.

    Newton-Raphson on ``l`` from ``l = 0``. The Jacobian of the expected
    union degrees is ``J = B + diag(B 1)`` with
    ``B = E[A_r] * (1 - E[A_u])``; each step solves ``J s = d_hat - d``.
    Steps that do not reduce ``||d_hat - d||`` are halved up to 20 times,
    after which the fit stops with ``converged=False``. Logits are clamped to
    ``[-30, 30]``.
    """
    if not isinstance(planted, EdgeProbabilityMatrix):
        planted = EdgeProbabilityMatrix(planted)
    n = planted.n
    d = check_degrees(degrees, n)
    pp = planted.probs
    keep_out = 1.0 - pp

    def evaluate(logits):
        r = _residual_probs(logits)
        u = 1.0 - keep_out * (1.0 - r)
        res = u.sum(axis=1) - d
        return r, u, res, float(np.linalg.norm(res))

    logits = np.zeros(n)
    r, u, res, err = evaluate(logits)
    it = 0
    converged = err <= epsilon
    while not converged and it < max_iter:
        b = r * (1.0 - u)
        jac = b + np.diag(b.sum(axis=1))
        step = _newton_direction(jac, res)
        t = 1.0
        for _ in range(MAX_HALVINGS + 1):
            cand = np.clip(logits - t * step, -LOGIT_CLAMP, LOGIT_CLAMP)
            r2, u2, res2, err2 = evaluate(cand)
            if err2 < err:
                break
            t *= 0.5
        else:
            logger.warning("newton step failed to reduce the degree error (%.3g) at iteration %d", err, it)
            break
        logits, r, u, res, err = cand, r2, u2, res2, err2
        it += 1
        converged = err <= epsilon
    if not converged:
        logger.warning("odds-product fit did not converge: error %.3g after %d iterations", err, it)
    logits.setflags(write=False)
    return OddsProductModel(
        logits=logits,
        planted_marginals=planted,
        residual_marginals=EdgeProbabilityMatrix(r),
        target_degrees=d,
        converged=converged,
        final_error=err,
        n_iter=it,
    )


def sample_union(m: PlantedModel, fitted: OddsProductModel, random_state=None) -> Graph:
    """Union of a planted sample and a residual sample.

    Residual probabilities below ``1e-6`` are treated as zero, which makes the
    ``p = 1`` model return the input graph with probability one.
    """
    if fitted.n != m.input.n:
        raise ValueError("fitted residual model does not match the planted model")
    rng = check_random_state(random_state)
    planted = sample_planted(m, rng)
    r = np.where(fitted.residual_marginals.probs < RESIDUAL_FLOOR, 0.0, fitted.residual_marginals.probs)
    residual = sample_edge_independent(r, rng)
    return Graph.from_keys(m.input.n, np.union1d(planted.edge_keys, residual.edge_keys))


# Reference models: one tight instance per dependency level.

def gnp(n: int, p: float, random_state=None) -> Graph:
    """Erdos-Renyi ``G(n, p)``."""
    p = check_probability(p)
    return sample_edge_independent(EdgeProbabilityMatrix.constant(int(n), p), random_state)


def complete_or_empty(n: int, p: float, random_state=None) -> Graph:
    """``K_n`` with probability ``p``, otherwise the empty graph."""
    p = check_probability(p)
    rng = check_random_state(random_state)
    return Graph.complete(int(n)) if rng.random() < p else Graph.empty(int(n))


def active_nodes(n: int, p: float, random_state=None) -> Graph:
    """Each node is active with probability ``sqrt(p)``; all active pairs are joined."""
    p = check_probability(p)
    rng = check_random_state(random_state)
    n = int(n)
    act = np.flatnonzero(rng.random(n) < math.sqrt(p)).astype(np.int64)
    i, j = _triu(act.size)
    return Graph.from_keys(n, act[i] * n + act[j])
