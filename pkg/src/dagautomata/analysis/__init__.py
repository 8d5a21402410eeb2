"""Graph services: isomorphism, planarity, path languages, edge-label encoding, rewiring."""

from .canon import are_isomorphic, canonical_dag, canonical_encoding, canonical_form
from .planarity import is_planar, underlying_simple_graph
from .structure import RewireResult, encode_edge_labels, path_language, rewire

__all__ = [
    "are_isomorphic",
    "canonical_dag",
    "canonical_encoding",
    "canonical_form",
    "encode_edge_labels",
    "is_planar",
    "path_language",
    "rewire",
    "RewireResult",
    "underlying_simple_graph",
]
