"""Overlap sweep: statistics of max-clique model samples across a grid of ``p``.

For each planting probability the residual is fitted once, samples are
drawn, and every sample is compared against the input graph. One CSV row
is emitted per grid point, in grid order. The column set is fixed by
:data:`SWEEP_COLUMNS`.
"""
from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .cliques import enumerate_maximal_cliques
from .estimators import MaxCliqueGraphModel
from .graph import Graph, read_graph
from .overlap import draw_samples, edge_overlap_vs_input, estimate_overlap
from .stats import stats_report
from .validation import check_kind, check_positive_int, check_probability

logger = logging.getLogger(__name__)

SWEEP_STATS = (
    "max_degree",
    "degree_pcc",
    "triangle_pcc",
    "normalized_triangles",
    "normalized_four_cliques",
    "normalized_four_cycles",
    "fraction_connected_pairs",
    "char_path_length",
    "transitivity",
)

SWEEP_COLUMNS = (
    "p",
    "kind",
    "fit_status",
    "fit_error",
    "fit_iterations",
    "overlap_pairwise",
    "overlap_pairwise_se",
    "volume",
    "overlap_vs_input_mean",
    "overlap_vs_input_p05",
    "overlap_vs_input_p95",
) + tuple(f"{s}_{a}" for s in SWEEP_STATS for a in ("mean", "p05", "p95"))


def make_grid(points: int = 10, square: bool = False) -> tuple[float, ...]:
    """``points`` evenly spaced values in [0, 1], optionally squared."""
    points = check_positive_int(points, "grid points", minimum=1)
    grid = np.linspace(0.0, 1.0, points) if points > 1 else np.array([1.0])
    if square:
        grid = grid**2
    return tuple(float(x) for x in grid)


@dataclass(frozen=True)
class SweepConfig:
    input_path: str | None
    kind: str = "fd"
    p_grid: tuple[float, ...] = field(default_factory=make_grid)
    samples_per_point: int = 10
    pairs_for_overlap: int = 100
    seed: int = 0
    output_path: str | None = None
    epsilon: float = 1e-8
    max_iter: int = 100

    def __post_init__(self):
        object.__setattr__(self, "kind", check_kind(self.kind))
        grid = tuple(check_probability(p, "grid value") for p in self.p_grid)
        if list(grid) != sorted(grid):
            raise ValueError("p_grid must be sorted ascending")
        object.__setattr__(self, "p_grid", grid)
        check_positive_int(self.samples_per_point, "samples_per_point", minimum=2)
        check_positive_int(self.pairs_for_overlap, "pairs_for_overlap", minimum=1)


def _summary(values) -> tuple[float, float, float]:
    v = np.asarray(values, dtype=float)
    v = v[np.isfinite(v)]
    if v.size == 0:
        return (math.nan,) * 3
    lo, hi = np.percentile(v, [5, 95])
    return float(v.mean()), float(lo), float(hi)


def sweep_point(graph: Graph, model: MaxCliqueGraphModel, index: int, cfg: SweepConfig) -> dict:
    fit = model.residual_
    row = {
        "p": model.p,
        "kind": cfg.kind,
        "fit_status": "converged" if fit.converged else "not_converged",
        "fit_error": fit.final_error,
        "fit_iterations": fit.n_iter,
    }
    samples = draw_samples(model, cfg.samples_per_point, cfg.seed, prefix=(index, 0))
    reports = [stats_report(g, reference=graph) for g in samples]
    est = estimate_overlap(model, cfg.pairs_for_overlap, cfg.seed, prefix=(index, 1))
    row["overlap_pairwise"] = est.overlap
    row["overlap_pairwise_se"] = est.std_error
    row["volume"] = est.volume
    vs_input = [edge_overlap_vs_input(g, graph) for g in samples]
    for suffix, value in zip(("mean", "p05", "p95"), _summary(vs_input)):
        row[f"overlap_vs_input_{suffix}"] = value
    for stat in SWEEP_STATS:
        for suffix, value in zip(("mean", "p05", "p95"), _summary([getattr(r, stat) for r in reports])):
            row[f"{stat}_{suffix}"] = value
    return row


def run_sweep(cfg: SweepConfig, graph: Graph | None = None) -> list[dict]:
    """Rows of the sweep table, one per grid value, in grid order."""
    if graph is None:
        if cfg.input_path is None:
            raise ValueError("sweep needs an input graph or input_path")
        graph = read_graph(cfg.input_path).graph
    cliques = enumerate_maximal_cliques(graph)
    rows = []
    for i, p in enumerate(cfg.p_grid):
        model = MaxCliqueGraphModel(kind=cfg.kind, p=p, epsilon=cfg.epsilon, max_iter=cfg.max_iter)
        try:
            model.fit(graph, cliques=cliques)
        except Exception as exc:  # recorded in the row, never dropped
            logger.error("fit failed at p=%g: %s", p, exc)
            rows.append({"p": p, "kind": cfg.kind, "fit_status": f"failed: {exc}"})
            continue
        rows.append(sweep_point(graph, model, i, cfg))
    return rows


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "" if not math.isfinite(v) else "%.10g" % v
    return str(v)


def write_csv(rows, columns, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([format_value(row.get(c)) for c in columns])


def sweep_csv(rows) -> str:
    buf = io.StringIO()
    write_csv(rows, SWEEP_COLUMNS, buf)
    return buf.getvalue()
