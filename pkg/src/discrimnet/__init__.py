"""Discriminative distance-based network indices and link prediction."""

from discrimnet.graph import (
    EdgeListError,
    Graph,
    TemporalEdgeList,
    from_edges,
    largest_connected_component,
    load_edge_list,
    load_temporal_edge_list,
)
from discrimnet.sssp import SsspResult, UnreachablePolicy, discriminative_distance, shortest_path_dag

__version__ = "0.1.0"
