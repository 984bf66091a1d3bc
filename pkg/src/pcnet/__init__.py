"""Perturb-and-combine vertex scoring for influential spreader detection."""

__version__ = "0.1.0"

from .ensemble import PcConfig, TriggerPolicy, combine, extract_trigger_set, pc_scores
from .graph import Graph, GraphStats, assign_default_weights, graph_stats, load_edge_list, write_edge_list
from .perturb import PerturbConfig, perturb
from .scoring import ScoreVector, core_generalized, core_unweighted, pagerank_weighted
from .sir import SirConfig, node_influence, simulate, trigger_set_severity

__all__ = [
    "Graph",
    "GraphStats",
    "PcConfig",
    "PerturbConfig",
    "ScoreVector",
    "SirConfig",
    "TriggerPolicy",
    "assign_default_weights",
    "combine",
    "core_generalized",
    "core_unweighted",
    "extract_trigger_set",
    "graph_stats",
    "load_edge_list",
    "node_influence",
    "pagerank_weighted",
    "pc_scores",
    "perturb",
    "simulate",
    "trigger_set_severity",
    "write_edge_list",
]
