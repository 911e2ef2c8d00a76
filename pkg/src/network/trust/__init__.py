"""Confianza parcial y redundancia efectiva."""

from .redundancy import (
    GraphRedundancy,
    RedundancyResult,
    TrustContext,
    TrustRadius,
    build_flow_network,
    cut_disconnects,
    effective_redundancy,
    graph_redundancy,
    min_vertex_cut,
    redundancy_profile,
    redundancy_record,
    trust_boundary,
    trust_context,
    trusted_neighborhood,
)

__all__ = [
    "GraphRedundancy",
    "RedundancyResult",
    "TrustContext",
    "TrustRadius",
    "build_flow_network",
    "cut_disconnects",
    "effective_redundancy",
    "graph_redundancy",
    "min_vertex_cut",
    "redundancy_profile",
    "redundancy_record",
    "trust_boundary",
    "trust_context",
    "trusted_neighborhood",
]
