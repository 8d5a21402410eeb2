from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from ..core import AutomatonError, Dag, DagError, Edge, Node, Run, require_valid, roots_and_leaves, topological_order
from .canon import canonical_form


def path_language(g: Dag) -> set[str]:
    """Node-label strings of every root-to-leaf path."""
    require_valid(g)
    roots, leaves = roots_and_leaves(g)
    order = topological_order(g)
    # strings from each node down to a leaf, computed leaves-first
    below: dict[int, set[str]] = {}
    for v in reversed(order):
        lab = g.label_of[v]
        succ = [g.edge_by_id[e].tar for e in g.out_edges(v)]
        if not succ:
            below[v] = {lab}
        else:
            below[v] = {lab + s for u in set(succ) for s in below[u]}
    out = set()
    for r in roots:
        out |= below[r]
    return out


def encode_edge_labels(g: Dag) -> Dag:
    """Replace every labelled edge u->v by u->x->v where x carries the edge label."""
    missing = [e.id for e in g.edges if e.label is None]
    if missing:
        raise DagError(f"edge {missing[0]} has no label")
    nodes = list(g.nodes)
    next_node = max(g.node_ids, default=-1) + 1
    edges = []
    for e in g.edges:
        mid = next_node
        next_node += 1
        nodes.append(Node(mid, e.label))
        edges.append(Edge(len(edges), e.src, mid))
        edges.append(Edge(len(edges), mid, e.tar))
    return Dag(tuple(nodes), tuple(edges))


@dataclass
class RewireResult:
    dags: list[Dag] = field(default_factory=list)
    permutations_tried: int = 0
    cyclic_discarded: int = 0


def rewire(g: Dag, run: Run, edges: Iterable[int], automaton=None) -> RewireResult:
    """Permute the target nodes of ``edges`` (all carrying the same run state).

    Returns the distinct resulting DAGs up to isomorphism, in canonical-form
    order. Permutations that would create a directed cycle are dropped and
    counted. If ``automaton`` is given the run is first checked to be accepting.
    """
    edges = sorted(set(edges))
    run.check_total(g)
    for e in edges:
        if e not in g.edge_by_id:
            raise DagError(f"unknown edge id {e}")
    states = {run[e] for e in edges}
    if len(states) > 1:
        raise AutomatonError(f"edges carry mixed states {sorted(states)}")
    if automaton is not None:
        from ..recognition import run_is_accepting

        if not run_is_accepting(automaton, g, run):
            raise AutomatonError("run is not accepting")

    targets = [g.edge_by_id[e].tar for e in edges]
    result = RewireResult()
    found: dict[bytes, Dag] = {}
    for perm in itertools.permutations(range(len(edges))):
        result.permutations_tried += 1
        new_tar = {edges[i]: targets[j] for i, j in enumerate(perm)}
        h = Dag(
            g.nodes,
            tuple(Edge(e.id, e.src, new_tar.get(e.id, e.tar), e.label) for e in g.edges),
        )
        if topological_order(h) is None:
            result.cyclic_discarded += 1
            continue
        found.setdefault(canonical_form(h), h)
    result.dags = [found[k] for k in sorted(found)]
    return result
