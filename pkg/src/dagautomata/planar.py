"""Planar DAG automata: transitions between ordered state sequences.

The frontier is kept in a fixed left-to-right order; a transition consumes a
contiguous block equal to its left-hand side and puts its right-hand side in
that block's place. Only single-rooted generation is supported: the
empty-lhs transition is applied once, first.

There is no run-based recognition for this class here. ``planar_recognizes``
generates every DAG of the right size and compares up to isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .analysis.canon import canonical_encoding, canonical_form, encoding_bytes
from .core import AutomatonError, Dag, Edge, Node

_FRONTIER = "\x00frontier"


class PlanarError(ValueError):
    pass


@dataclass(frozen=True)
class PlanarTransition:
    lhs: tuple[str, ...]
    label: str
    rhs: tuple[str, ...]
    weight: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))

    @property
    def key(self):
        return (self.lhs, self.label, self.rhs)

    def with_weight(self, weight):
        return PlanarTransition(self.lhs, self.label, self.rhs, weight)

    def __str__(self):
        lhs = "(" + ",".join(self.lhs) + ")" if self.lhs else "eps"
        rhs = "(" + ",".join(self.rhs) + ")" if self.rhs else "eps"
        w = "" if self.weight is None else f"/{self.weight:g}"
        return f"{lhs} -{self.label}{w}-> {rhs}"


@dataclass(frozen=True)
class PlanarAutomaton:
    states: frozenset
    labels: frozenset
    transitions: tuple[PlanarTransition, ...]

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "labels", frozenset(self.labels))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        seen = set()
        for i, t in enumerate(self.transitions):
            if t.label not in self.labels:
                raise AutomatonError(f"transition {i}: unknown label {t.label!r}")
            for q in t.lhs + t.rhs:
                if q not in self.states:
                    raise AutomatonError(f"transition {i}: unknown state {q!r}")
            if t.key in seen:
                raise AutomatonError(f"transition {i}: duplicate of an earlier transition")
            seen.add(t.key)

    @property
    def is_weighted(self) -> bool:
        return all(t.weight is not None for t in self.transitions)

    def reweighted(self, weights) -> "PlanarAutomaton":
        weights = list(weights)
        if len(weights) != len(self.transitions):
            raise AutomatonError("one weight per transition required")
        return PlanarAutomaton(
            self.states, self.labels, tuple(t.with_weight(w) for t, w in zip(self.transitions, weights))
        )


@dataclass(frozen=True)
class PlanarConfiguration:
    """Partial planar derivation.

    ``nodes[i] = (label, transition index)``. ``edges[j] = (src, tar, out_pos,
    in_pos)``; frontier edges have ``tar`` and ``in_pos`` set to None.
    ``frontier`` is the ordered list of ``(edge id, state)``.
    """

    nodes: tuple[tuple[str, int], ...] = ()
    edges: tuple[tuple[int, Optional[int], int, Optional[int]], ...] = ()
    frontier: tuple[tuple[int, str], ...] = ()

    @property
    def started(self) -> bool:
        return bool(self.nodes)

    @property
    def complete(self) -> bool:
        return self.started and not self.frontier

    @property
    def frontier_states(self) -> tuple[str, ...]:
        return tuple(q for _, q in self.frontier)

    def to_dag(self) -> Dag:
        if self.frontier:
            raise PlanarError("configuration still has frontier edges")
        return Dag(
            tuple(Node(i, lab) for i, (lab, _) in enumerate(self.nodes)),
            tuple(Edge(j, s, t) for j, (s, t, _, _) in enumerate(self.edges)),
        )

    def derivation_key(self) -> bytes:
        """Identifies the derivation up to isomorphism and up to reordering
        of independent steps: nodes carry their transition, edges their port
        positions, and frontier placeholders their frontier position."""
        labels = [list(n) for n in self.nodes]
        ftarget = {}
        for pos, (eid, q) in enumerate(self.frontier):
            ftarget[eid] = len(labels)
            labels.append([_FRONTIER, q, pos])
        edges = []
        for j, (s, t, op, ip) in enumerate(self.edges):
            edges.append((s, ftarget[j] if t is None else t, [op, ip]))
        return encoding_bytes(canonical_encoding(labels, edges))


def apply_planar(cfg: PlanarConfiguration, t: PlanarTransition, position: int = 0, index: int = -1) -> PlanarConfiguration:
    """Rewrite the frontier block starting at ``position`` with transition ``t``."""
    front = list(cfg.frontier)
    if not t.lhs:
        if cfg.started:
            raise PlanarError("start transition may only be applied first (single-rooted)")
        if position != 0:
            raise PlanarError(f"position {position} out of range for an empty frontier")
    else:
        if not 0 <= position <= len(front) - len(t.lhs):
            raise PlanarError(f"position {position} out of range for frontier of length {len(front)}")
        block = tuple(q for _, q in front[position : position + len(t.lhs)])
        if block != t.lhs:
            raise PlanarError(f"lhs {t.lhs} does not match frontier block {block}")

    v = len(cfg.nodes)
    edges = list(cfg.edges)
    for ip, (eid, _) in enumerate(front[position : position + len(t.lhs)]):
        s, _, op, _ = edges[eid]
        edges[eid] = (s, v, op, ip)
    fresh = []
    for op, q in enumerate(t.rhs):
        fresh.append((len(edges), q))
        edges.append((v, None, op, None))
    front[position : position + len(t.lhs)] = fresh
    return PlanarConfiguration(cfg.nodes + ((t.label, index),), tuple(edges), tuple(front))


def planar_applicable(pa: PlanarAutomaton, cfg: PlanarConfiguration) -> Iterator[tuple[int, int]]:
    states = cfg.frontier_states
    for i, t in enumerate(pa.transitions):
        if not t.lhs:
            if not cfg.started:
                yield i, 0
            continue
        k = len(t.lhs)
        for pos in range(len(states) - k + 1):
            if states[pos : pos + k] == t.lhs:
                yield i, pos


def _check_budget(max_nodes) -> None:
    if not isinstance(max_nodes, int) or max_nodes < 1:
        raise PlanarError("max_nodes must be a positive integer")


def enumerate_planar_derivations(pa: PlanarAutomaton, max_nodes: int) -> Iterator[PlanarConfiguration]:
    """One complete configuration per distinct derivation (see ``derivation_key``)."""
    _check_budget(max_nodes)
    max_lhs = max((len(t.lhs) for t in pa.transitions), default=0)
    seen: set[bytes] = set()
    stack = [PlanarConfiguration()]
    while stack:
        cfg = stack.pop()
        if cfg.complete:
            yield cfg
            continue
        for i, pos in planar_applicable(pa, cfg):
            nxt = apply_planar(cfg, pa.transitions[i], pos, i)
            n = len(nxt.nodes)
            if n > max_nodes:
                continue
            if nxt.frontier and (max_lhs == 0 or n + -(-len(nxt.frontier) // max_lhs) > max_nodes):
                continue
            key = nxt.derivation_key()
            if key in seen:
                continue
            seen.add(key)
            stack.append(nxt)


def enumerate_planar(pa: PlanarAutomaton, max_nodes: int) -> list[Dag]:
    found: dict[bytes, Dag] = {}
    for cfg in enumerate_planar_derivations(pa, max_nodes):
        g = cfg.to_dag()
        found.setdefault(canonical_form(g), g)
    return [found[k] for k in sorted(found, key=lambda k: (len(found[k].nodes), k))]


def planar_recognizes(pa: PlanarAutomaton, g: Dag, max_nodes: Optional[int] = None) -> bool:
    n = len(g.nodes)
    if max_nodes is not None and max_nodes < n:
        raise PlanarError("max_nodes must be at least the size of the graph")
    if n == 0:
        return False
    target = canonical_form(g)
    return any(canonical_form(h) == target for h in enumerate_planar(pa, n) if len(h.nodes) == n)


@dataclass
class PlanarMass:
    total: float
    by_size: dict[int, float]
    by_dag: list[tuple[Dag, float]]


def planar_partial_mass(pa: PlanarAutomaton, max_nodes: int) -> PlanarMass:
    """Sum, over enumerated DAGs, of the weights of the distinct derivations
    yielding them; a derivation weighs the product of its transition weights."""
    missing = [i for i, t in enumerate(pa.transitions) if t.weight is None]
    if missing:
        raise AutomatonError(f"transition {missing[0]} has no weight")
    per_dag: dict[bytes, list] = {}
    for cfg in enumerate_planar_derivations(pa, max_nodes):
        w = 1.0
        for _, ti in cfg.nodes:
            w *= pa.transitions[ti].weight
        g = cfg.to_dag()
        entry = per_dag.setdefault(canonical_form(g), [g, 0.0])
        entry[1] += w
    by_size: dict[int, float] = {}
    by_dag = []
    for k in sorted(per_dag, key=lambda k: (len(per_dag[k][0].nodes), k)):
        g, w = per_dag[k]
        by_dag.append((g, w))
        by_size[len(g.nodes)] = by_size.get(len(g.nodes), 0.0) + w
    return PlanarMass(sum(by_size[k] for k in sorted(by_size)), by_size, by_dag)
