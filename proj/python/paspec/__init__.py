"""Spectra of preferential attachment graphs."""

from ._core import (
    ConfigError,
    Graph,
    adjacency,
    count_subgraphs,
    edge_law,
    eigenvalues,
    enumerated_probability,
    exact_probability,
    from_pairs,
    generate,
    interval_distance,
    limit_moment,
    localization,
    moment_table,
    parse_edge_list,
    psi,
    reconstruct_density,
    run_experiment,
    top_eigenpairs,
    trace_power,
)

__all__ = [
    "ConfigError",
    "Graph",
    "adjacency",
    "count_subgraphs",
    "edge_law",
    "eigenvalues",
    "enumerated_probability",
    "exact_probability",
    "from_pairs",
    "generate",
    "interval_distance",
    "limit_moment",
    "localization",
    "moment_table",
    "parse_edge_list",
    "psi",
    "reconstruct_density",
    "run_experiment",
    "top_eigenpairs",
    "trace_power",
]
