"""Generation, recognition and weighting of DAG languages defined by DAG automata."""

from .core import (
    AutomatonError,
    Dag,
    DagAutomaton,
    DagError,
    Edge,
    Multiset,
    Node,
    Run,
    Transition,
    WeightedDagAutomaton,
    contains_sub_multiset,
    in_edges,
    out_edges,
    roots_and_leaves,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "AutomatonError",
    "Dag",
    "DagAutomaton",
    "DagError",
    "Edge",
    "Multiset",
    "Node",
    "Run",
    "Transition",
    "WeightedDagAutomaton",
    "contains_sub_multiset",
    "in_edges",
    "out_edges",
    "roots_and_leaves",
    "validate",
]
