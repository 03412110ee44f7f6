"""Max-clique graph generative models, overlap estimation and edge-dependency bounds."""
from .bounds import BoundReport, kcycle_bound, triangle_bound, verify_bound, volume_bound
from .cliques import CliqueSet, brute_force_maximal_cliques, enumerate_maximal_cliques
from .estimators import ActiveNodes, CompleteOrEmpty, ErdosRenyi, MaxCliqueGraphModel, make_model
from .graph import (
    Graph,
    degree_sequence,
    load_les_miserables,
    parse_edge_list,
    read_graph,
    ring_of_cliques,
    write_edge_list,
)
from .models import (
    EdgeProbabilityMatrix,
    OddsProductModel,
    PlantedModel,
    active_nodes,
    complete_or_empty,
    compute_planted_marginals,
    fit_residual,
    gnp,
    sample_planted,
    sample_union,
)
from .overlap import OverlapEstimate, edge_overlap_vs_input, estimate_overlap, exact_overlap_ei
from .stats import StatsReport, stats_report

__version__ = "0.1.0"
