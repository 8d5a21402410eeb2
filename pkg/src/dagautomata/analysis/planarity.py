from __future__ import annotations

import networkx as nx

from ..core import Dag


def underlying_simple_graph(g: Dag) -> nx.Graph:
    """Undirected simple graph: directions dropped, parallel edges merged."""
    h = nx.Graph()
    h.add_nodes_from(g.node_ids)
    h.add_edges_from((e.src, e.tar) for e in g.edges if e.src != e.tar)
    return h


def is_planar(g: Dag) -> bool:
    # left-right planarity test
    planar, _ = nx.check_planarity(underlying_simple_graph(g))
    return planar
