"""Topología: mariposa envolvente y grafos genéricos."""

from .butterfly import (
    EDGE_DOWN,
    EDGE_DOWNRIGHT,
    Automorphism,
    ButterflyGraph,
    ButterflyParams,
    NodeId,
    ReverseAutomorphism,
    build_butterfly,
    canonicalize,
    describe,
    distance,
    out_neighbors,
    reverse_automorphism,
    undirected_neighbors,
)
from .generic_graph import GenericGraph, load_graph, load_graph_file

__all__ = [
    "EDGE_DOWN",
    "EDGE_DOWNRIGHT",
    "Automorphism",
    "ButterflyGraph",
    "ButterflyParams",
    "GenericGraph",
    "NodeId",
    "ReverseAutomorphism",
    "build_butterfly",
    "canonicalize",
    "describe",
    "distance",
    "load_graph",
    "load_graph_file",
    "out_neighbors",
    "reverse_automorphism",
    "undirected_neighbors",
]
