"""Exact toolkit for graph domination, clique covers, restraining sets,
and Cartesian-product domination bounds."""

from .graphs import (
    CliquePartition,
    Graph,
    Graph6Error,
    GraphError,
    SizeCapError,
    cartesian_product,
    closed_neighborhood,
    complement,
    emit_graph6,
    generate,
    parse_graph6,
    parse_graph_spec,
    validate_partition,
)
from .solvers import (
    Budget,
    DominationCertificate,
    brute_force_gamma,
    brute_force_theta,
    clique_cover_number,
    domination_number,
    enumerate_min_dominating_sets,
    external_domination,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
