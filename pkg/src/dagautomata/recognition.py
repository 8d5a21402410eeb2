"""Membership and accepting runs, by backtracking over edge-state assignments.

Nodes are visited in topological order. When a node is reached all of its
incoming edges already carry states, so only transitions indexed under
(label, in-state multiset) are candidates, and each candidate's right-hand
side is distributed over the node's outgoing edges in every distinct way.
Worst-case cost is exponential in the number of edges.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .core import AutomatonError, Dag, DagAutomaton, Multiset, Run, require_valid, topological_order


def node_transition(a: DagAutomaton, g: Dag, r: Run, v: int) -> Optional[int]:
    """Index of the transition matching node v under run r, or None."""
    key = (r.states_of(g.in_edges(v)), g.label_of[v], r.states_of(g.out_edges(v)))
    return a.by_key.get(key)


def run_is_accepting(a: DagAutomaton, g: Dag, r: Run) -> bool:
    r.check_total(g)
    return all(node_transition(a, g, r, v) is not None for v in g.node_ids)


def _distributions(slots, states: Multiset, twins=None, floor=None) -> Iterator[list[tuple[int, str]]]:
    """Every distinct way of assigning the multiset ``states`` to ``slots``.

    ``twins[i]`` is true when slot i is parallel to slot i-1; such a slot may
    not take a state smaller than its predecessor's, so permutations within a
    bundle of parallel edges are produced once.
    """
    if not slots:
        yield []
        return
    remaining = states.counts
    head, rest = slots[0], slots[1:]
    tied = bool(twins and twins[0])
    for q in sorted(remaining):
        if tied and floor is not None and q < floor:
            continue
        left = dict(remaining)
        left[q] -= 1
        for tail in _distributions(rest, Multiset(left), twins[1:] if twins else None, q):
            yield [(head, q)] + tail


def _out_slots(g: Dag, v: int, merge_parallel: bool):
    outs = sorted(g.out_edges(v), key=lambda e: (g.edge_by_id[e].tar, e))
    if not merge_parallel:
        return outs, None
    twins = [i > 0 and g.edge_by_id[e].tar == g.edge_by_id[outs[i - 1]].tar for i, e in enumerate(outs)]
    return outs, twins


def _search(a: DagAutomaton, g: Dag, order: list[int], merge_parallel: bool) -> Iterator[dict[int, str]]:
    assignment: dict[int, str] = {}
    slots = {v: _out_slots(g, v, merge_parallel) for v in order}

    def visit(i: int):
        if i == len(order):
            yield dict(assignment)
            return
        v = order[i]
        ins = Multiset(assignment[e] for e in g.in_edges(v))
        outs, twins = slots[v]
        for ti in a.index.get((g.label_of[v], ins), ()):
            rhs = a.transitions[ti].rhs
            if len(rhs) != len(outs):
                continue
            for dist in _distributions(outs, rhs, twins):
                assignment.update(dist)
                yield from visit(i + 1)
                for e, _ in dist:
                    del assignment[e]

    yield from visit(0)


def canonical_run(g: Dag, r: Run) -> Run:
    """Representative of r modulo permuting states among parallel edges:
    within each bundle, states are sorted along increasing edge id."""
    bundles: dict[tuple[int, int], list[int]] = {}
    for e in g.edges:
        bundles.setdefault((e.src, e.tar), []).append(e.id)
    out = {}
    for eids in bundles.values():
        eids.sort()
        for e, q in zip(eids, sorted(r[e] for e in eids)):
            out[e] = q
    return Run(out)


def iter_accepting_runs(a: DagAutomaton, g: Dag, distinguish_parallel: bool = False) -> Iterator[Run]:
    order = topological_order(g)
    if order is None:
        raise AutomatonError("graph has a directed cycle")
    for assignment in _search(a, g, order, not distinguish_parallel):
        yield Run(assignment)


def accepting_runs(a: DagAutomaton, g: Dag, distinguish_parallel: bool = False) -> list[Run]:
    """All accepting runs, sorted lexicographically by (edge id, state).

    By default runs differing only by a permutation of states among parallel
    edges are one run, returned in :func:`canonical_run` form. With
    ``distinguish_parallel=True`` every accepting edge-to-state map is returned.
    """
    require_valid(g)
    return sorted(iter_accepting_runs(a, g, distinguish_parallel), key=Run.sort_key)


def recognizes(a: DagAutomaton, g: Dag) -> bool:
    require_valid(g)
    return next(iter_accepting_runs(a, g), None) is not None
