import math

import numpy as np
import pytest

from cliquegen.bounds import volume_bound
from cliquegen.estimators import ActiveNodes, CompleteOrEmpty, ErdosRenyi, MaxCliqueGraphModel
from cliquegen.graph import Graph
from cliquegen.models import EdgeProbabilityMatrix, sample_edge_independent
from cliquegen.overlap import (
    draw_samples,
    edge_overlap_vs_input,
    estimate_overlap,
    exact_overlap_ei,
    overlap_from_samples,
    shared_edges,
)


def test_point_mass_sampler():
    g = Graph(6, [(0, 1), (2, 3), (1, 5)])
    for pairs in (1, 3, 40):
        for pairing in ("disjoint", "all"):
            est = estimate_overlap(lambda rng: g, pairs, seed=0, pairing=pairing, n_bootstrap=50)
            assert est.overlap == 1.0
            assert est.volume == 3.0


def test_zero_volume_is_undefined():
    est = estimate_overlap(lambda rng: Graph.empty(4), 5, seed=0)
    assert not est.defined
    assert est.volume == 0.0


@pytest.mark.parametrize("pairing", ["disjoint", "all"])
def test_gnp_overlap(pairing):
    est = estimate_overlap(ErdosRenyi(50, 0.3), 500, seed=3, pairing=pairing, n_bootstrap=200)
    assert est.overlap == pytest.approx(0.3, abs=0.02)
    assert est.volume == pytest.approx(0.3 * math.comb(50, 2), rel=0.02)
    assert 0 < est.std_error < 0.01


def test_exact_overlap_ei_examples():
    assert exact_overlap_ei(EdgeProbabilityMatrix.constant(7, 0.35))[0] == pytest.approx(0.35)
    P = np.zeros((4, 4))
    P[1, 3] = P[3, 1] = 1.0
    assert exact_overlap_ei(P) == (1.0, 1.0)
    ov, vol = exact_overlap_ei(np.zeros((3, 3)))
    assert math.isnan(ov) and vol == 0.0


@pytest.mark.parametrize("pairing", ["disjoint", "all"])
def test_exact_overlap_ei_vs_monte_carlo(pairing):
    rng = np.random.default_rng(17)
    P = np.triu(rng.random((8, 8)), 1)
    P = P + P.T
    exact, vol = exact_overlap_ei(P)
    est = estimate_overlap(lambda r: sample_edge_independent(P, r), 5000, seed=1, pairing=pairing, n_bootstrap=300)
    assert abs(est.overlap - exact) <= 3 * est.std_error
    assert est.volume == pytest.approx(vol, rel=0.02)


def test_all_pairs_matches_pair_loop():
    samples = draw_samples(ErdosRenyi(9, 0.4), 12, seed=5)
    est = overlap_from_samples(samples, "all", n_bootstrap=20, random_state=0)
    pair_mean = np.mean([shared_edges(a, b) for i, a in enumerate(samples) for b in samples[i + 1:]])
    assert est.mean_shared == pytest.approx(pair_mean)
    assert est.pairs_used == 66


def test_overlap_estimate_is_seeded():
    a = estimate_overlap(ActiveNodes(30, 0.3), 50, seed=8)
    b = estimate_overlap(ActiveNodes(30, 0.3), 50, seed=8)
    assert a == b


def test_draw_samples_threads_match_serial():
    model = ErdosRenyi(20, 0.5)
    assert draw_samples(model, 16, 4, n_jobs=1) == draw_samples(model, 16, 4, n_jobs=4)


def test_bad_pairing():
    with pytest.raises(ValueError):
        overlap_from_samples([Graph.complete(3)] * 2, pairing="some")
    with pytest.raises(ValueError):
        overlap_from_samples([Graph.complete(3)])


def test_vs_input():
    g = Graph(4, [(0, 1), (1, 2)])
    assert edge_overlap_vs_input(g, g) == 1.0
    assert edge_overlap_vs_input(Graph(4, [(2, 3)]), g) == 0.0
    assert math.isnan(edge_overlap_vs_input(g, Graph.empty(4)))
    with pytest.raises(ValueError):
        edge_overlap_vs_input(Graph.empty(3), g)


def test_vs_input_mcfd_p_one(lesmis):
    est = MaxCliqueGraphModel(kind="fd", p=1.0).fit(lesmis)
    assert edge_overlap_vs_input(est.draw(3), lesmis) == 1.0
    assert estimate_overlap(est, 5, seed=0).overlap == 1.0


@pytest.mark.parametrize("model", [ErdosRenyi(30, 0.2), ActiveNodes(30, 0.2), CompleteOrEmpty(30, 0.2)])
def test_volume_bound_holds(model):
    est = estimate_overlap(model, 300, seed=2, n_bootstrap=200)
    assert est.volume <= volume_bound(30, est.overlap) + 3 * est.std_error * math.comb(30, 2)


def test_volume_bound_holds_planted(lesmis):
    est = estimate_overlap(MaxCliqueGraphModel(kind="ni", p=0.5).fit(lesmis), 100, seed=2, n_bootstrap=200)
    assert est.volume <= volume_bound(77, est.overlap)
