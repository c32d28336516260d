"""Make graphs (k, l)-anonymous by adding as few edges as possible."""

from ._kanon import (
    EdgePlan,
    Graph,
    KanonError,
    anonymize,
    anonymize_strong_21,
    anonymize_weak_21,
    common_neighbor_count,
    complete_graph,
    cycle_graph,
    format_edge_list,
    is_anonymous,
    is_strong_transformation,
    oracle,
    parse_edge_list,
    path_graph,
    random_graph,
    reduction_graph,
    residual,
    sharers,
    star_graph,
    strong_any,
    strong_greedy,
    strong_greedy_kl,
    strong_residual,
    two_neighborhood,
    weak_any,
    weak_expander,
    weak_greedy,
)

__all__ = [name for name in dir() if not name.startswith("_")]
