"""scikit-learn style wrappers around the samplers in :mod:`cliquegen.models`."""
from __future__ import annotations

from numbers import Integral

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from . import models
from .cliques import DEFAULT_MAX_CLIQUES, enumerate_maximal_cliques
from .graph import Graph
from .rng import check_random_state, stream
from .validation import check_kind, check_positive_int, check_probability


def as_graph(X) -> Graph:
    """Accept a Graph or a square (dense or sparse) adjacency matrix."""
    if isinstance(X, Graph):
        return X
    shape = getattr(X, "shape", None)
    if shape is None or len(shape) != 2 or shape[0] != shape[1]:
        raise ValueError("expected a Graph or a square adjacency matrix")
    return Graph.from_adjacency(X)


class SamplerMixin:
    """``sample`` on top of a single-draw ``draw(rng)`` method.

    With an integer ``random_state`` sample ``k`` is drawn from
    ``stream(random_state, k)``, so any prefix of a run is reproducible on
    its own.
    """

    def draw(self, random_state=None) -> Graph:
        raise NotImplementedError

    def sample(self, n_samples: int = 1, random_state=None) -> list[Graph]:
        n_samples = check_positive_int(n_samples, "n_samples")
        if isinstance(random_state, (Integral, np.integer)):
            return [self.draw(stream(int(random_state), k)) for k in range(n_samples)]
        rng = check_random_state(random_state)
        return [self.draw(rng) for _ in range(n_samples)]

    def __call__(self, random_state=None) -> Graph:
        return self.draw(random_state)


class MaxCliqueGraphModel(SamplerMixin, BaseEstimator):
    """Planted max-clique model with an odds-product residual.

    Parameters
    ----------
    kind : {"ei", "ni", "fd"}
        Dependency level of the planted stage.
    p : float
        Planting probability. ``p = 1`` reproduces the input graph.
    epsilon : float
        Target L2 error between expected and input degrees.
    max_iter : int
        Newton iteration cap for the residual fit.
    residual : bool
        If False, samples are the planted graph alone.
    max_cliques : int
        Abort clique enumeration beyond this many maximal cliques.

    Attributes
    ----------
    input_ : Graph
    cliques_ : CliqueSet
    planted_model_ : PlantedModel
    planted_marginals_ : EdgeProbabilityMatrix
    residual_ : OddsProductModel
    """

    def __init__(self, kind="fd", p=0.5, epsilon=1e-8, max_iter=100, residual=True,
                 max_cliques=DEFAULT_MAX_CLIQUES):
        self.kind = kind
        self.p = p
        self.epsilon = epsilon
        self.max_iter = max_iter
        self.residual = residual
        self.max_cliques = max_cliques

    def fit(self, X, y=None, cliques=None):
        g = as_graph(X)
        kind = check_kind(self.kind)
        p = check_probability(self.p)
        check_positive_int(self.max_iter, "max_iter", minimum=0)
        self.input_ = g
        self.cliques_ = cliques if cliques is not None else enumerate_maximal_cliques(g, self.max_cliques)
        self.planted_model_ = models.PlantedModel(g, self.cliques_, p, kind)
        self.planted_marginals_ = models.compute_planted_marginals(self.planted_model_)
        self.residual_ = models.fit_residual(g.degrees, self.planted_marginals_,
                                             epsilon=self.epsilon, max_iter=self.max_iter)
        return self

    @property
    def level(self) -> str:
        return check_kind(self.kind)

    @property
    def n_nodes(self) -> int:
        check_is_fitted(self, "input_")
        return self.input_.n

    def draw(self, random_state=None) -> Graph:
        check_is_fitted(self, "residual_")
        if not self.residual:
            return models.sample_planted(self.planted_model_, random_state)
        return models.sample_union(self.planted_model_, self.residual_, random_state)

    def expected_degrees(self) -> np.ndarray:
        check_is_fitted(self, "residual_")
        if not self.residual:
            return self.planted_marginals_.expected_degrees()
        return self.residual_.expected_degrees()


class _ReferenceModel(SamplerMixin, BaseEstimator):
    level = ""

    def __init__(self, n_nodes=40, p=0.5):
        self.n_nodes = n_nodes
        self.p = p

    def fit(self, X=None, y=None):
        """Nothing to learn; takes the node count from ``X`` when given."""
        if X is not None:
            self.n_nodes = as_graph(X).n
        return self


class ErdosRenyi(_ReferenceModel):
    """``G(n, p)``: the edge-independent tight instance."""

    level = "ei"

    def draw(self, random_state=None) -> Graph:
        return models.gnp(self.n_nodes, self.p, random_state)


class ActiveNodes(_ReferenceModel):
    """Clique on a random ``sqrt(p)``-thinned node subset: the node-independent tight instance."""

    level = "ni"

    def draw(self, random_state=None) -> Graph:
        return models.active_nodes(self.n_nodes, self.p, random_state)


class CompleteOrEmpty(_ReferenceModel):
    """``K_n`` with probability ``p``: the fully dependent tight instance."""

    level = "fd"

    def draw(self, random_state=None) -> Graph:
        return models.complete_or_empty(self.n_nodes, self.p, random_state)


REFERENCE_MODELS = {
    "gnp": ErdosRenyi,
    "active-nodes": ActiveNodes,
    "complete-or-empty": CompleteOrEmpty,
}
PLANTED_MODELS = {"mcei": "ei", "mcni": "ni", "mcfd": "fd"}
MODEL_NAMES = tuple(PLANTED_MODELS) + tuple(REFERENCE_MODELS)


def make_model(name: str, p: float, n_nodes: int | None = None, graph: Graph | None = None, **fit_params):
    """Build (and fit, for planted models) a sampler by its command-line name."""
    name = name.lower()
    if name in REFERENCE_MODELS:
        if n_nodes is None:
            if graph is None:
                raise ValueError(f"model {name!r} needs a node count")
            n_nodes = graph.n
        return REFERENCE_MODELS[name](n_nodes=int(n_nodes), p=p)
    if name in PLANTED_MODELS:
        if graph is None:
            raise ValueError(f"model {name!r} needs an input graph")
        return MaxCliqueGraphModel(kind=PLANTED_MODELS[name], p=p, **fit_params).fit(graph)
    raise ValueError(f"unknown model {name!r}; choose from {', '.join(MODEL_NAMES)}")
