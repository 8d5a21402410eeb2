"""Value types shared by every other module: multisets, DAGs, automata and runs."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping, Optional


class DagError(ValueError):
    """A graph violates a structural requirement (cycle, disconnected, bad ids...)."""


class AutomatonError(ValueError):
    """An automaton, transition or run is malformed with respect to its owner."""


class Multiset:
    """Immutable finite multiset over hashable elements.

    Elements with count zero are never stored. Equality and hashing ignore the
    order elements were given in.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, elements: Iterable[Hashable] = ()):
        if isinstance(elements, Mapping):
            counts = {k: int(v) for k, v in elements.items()}
            if any(v < 0 for v in counts.values()):
                raise ValueError("multiset counts must be non-negative")
        else:
            counts = Counter(elements)
        items = tuple(sorted(((k, v) for k, v in counts.items() if v > 0), key=_sort_key))
        object.__setattr__(self, "_items", items)
        object.__setattr__(self, "_hash", hash(items))

    def __setattr__(self, name, value):
        raise AttributeError("Multiset is immutable")

    @property
    def counts(self) -> dict:
        return dict(self._items)

    def count(self, element: Hashable) -> int:
        for k, v in self._items:
            if k == element:
                return v
        return 0

    def elements(self) -> list:
        """Elements with repetition, in a deterministic order."""
        out = []
        for k, v in self._items:
            out.extend([k] * v)
        return out

    def distinct(self) -> list:
        return [k for k, _ in self._items]

    def __len__(self) -> int:
        return sum(v for _, v in self._items)

    def __iter__(self) -> Iterator:
        return iter(self.elements())

    def __contains__(self, element) -> bool:
        return self.count(element) > 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other: "Multiset") -> "Multiset":
        c = Counter(self.counts)
        c.update(other.counts)
        return Multiset(dict(c))

    def __sub__(self, other: "Multiset") -> "Multiset":
        if not contains_sub_multiset(self, other):
            raise ValueError(f"{other} is not contained in {self}")
        c = Counter(self.counts)
        c.subtract(other.counts)
        return Multiset(dict(c))

    def __repr__(self) -> str:
        if not self._items:
            return "Multiset()"
        return "Multiset({" + ", ".join(map(str, self.elements())) + "})"


def _sort_key(item):
    k = item[0]
    return (type(k).__name__, str(k))


def contains_sub_multiset(big: Multiset, small: Multiset) -> bool:
    big_counts = big.counts
    return all(big_counts.get(k, 0) >= v for k, v in small.counts.items())


@dataclass(frozen=True)
class Node:
    id: int
    label: str


@dataclass(frozen=True)
class Edge:
    id: int
    src: int
    tar: int
    label: Optional[str] = None


@dataclass(frozen=True)
class Dag:
    """Node-labelled directed multigraph with explicit, stable node and edge ids.

    Construction only checks referential integrity. Acyclicity and
    connectivity are checked by :func:`validate`, so that a cyclic input can
    still be built and reported on.
    """

    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        node_ids = [n.id for n in self.nodes]
        if len(set(node_ids)) != len(node_ids):
            raise DagError("duplicate node id")
        edge_ids = [e.id for e in self.edges]
        if len(set(edge_ids)) != len(edge_ids):
            raise DagError("duplicate edge id")
        known = set(node_ids)
        for e in self.edges:
            if e.src not in known or e.tar not in known:
                raise DagError(f"edge {e.id} references an unknown node")

    @classmethod
    def build(cls, labels, edges) -> "Dag":
        """Shorthand: ``labels`` is a list (ids 0..n-1) or a dict id->label;
        ``edges`` a list of ``(src, tar)`` or ``(src, tar, edge_label)``."""
        if isinstance(labels, Mapping):
            nodes = [Node(i, lab) for i, lab in labels.items()]
        else:
            nodes = [Node(i, lab) for i, lab in enumerate(labels)]
        es = []
        for i, e in enumerate(edges):
            es.append(Edge(i, e[0], e[1], e[2] if len(e) > 2 else None))
        return cls(tuple(nodes), tuple(es))

    @cached_property
    def label_of(self) -> dict[int, str]:
        return {n.id: n.label for n in self.nodes}

    @cached_property
    def edge_by_id(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _incidence(self):
        ins = {n.id: [] for n in self.nodes}
        outs = {n.id: [] for n in self.nodes}
        for e in self.edges:
            outs[e.src].append(e.id)
            ins[e.tar].append(e.id)
        return ins, outs

    def in_edges(self, v: int) -> list[int]:
        try:
            return list(self._incidence[0][v])
        except KeyError:
            raise DagError(f"unknown node id {v}") from None

    def out_edges(self, v: int) -> list[int]:
        try:
            return list(self._incidence[1][v])
        except KeyError:
            raise DagError(f"unknown node id {v}") from None

    def degree(self, v: int) -> int:
        # parallel edges count separately
        return len(self.in_edges(v)) + len(self.out_edges(v))

    @property
    def node_ids(self) -> list[int]:
        return [n.id for n in self.nodes]

    def __len__(self) -> int:
        return len(self.nodes)


def in_edges(dag: Dag, v: int) -> set[int]:
    return set(dag.in_edges(v))


def out_edges(dag: Dag, v: int) -> set[int]:
    return set(dag.out_edges(v))


def roots_and_leaves(dag: Dag) -> tuple[set[int], set[int]]:
    roots = {v for v in dag.node_ids if not dag.in_edges(v)}
    leaves = {v for v in dag.node_ids if not dag.out_edges(v)}
    return roots, leaves


def topological_order(dag: Dag) -> Optional[list[int]]:
    """Kahn's algorithm; returns None if the graph has a directed cycle.

    Ties are broken by node id so the order is deterministic.
    """
    indeg = {v: len(dag.in_edges(v)) for v in dag.node_ids}
    ready = sorted(v for v, d in indeg.items() if d == 0)
    queue = deque(ready)
    order = []
    while queue:
        v = queue.popleft()
        order.append(v)
        released = []
        for eid in dag.out_edges(v):
            t = dag.edge_by_id[eid].tar
            indeg[t] -= 1
            if indeg[t] == 0:
                released.append(t)
        queue.extend(sorted(released))
    if len(order) != len(dag.nodes):
        return None
    return order


def is_connected(dag: Dag) -> bool:
    """Weak connectivity. The empty graph counts as connected."""
    if not dag.nodes:
        return True
    adj = {v: set() for v in dag.node_ids}
    for e in dag.edges:
        adj[e.src].add(e.tar)
        adj[e.tar].add(e.src)
    start = dag.nodes[0].id
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(dag.nodes)


@dataclass(frozen=True)
class Violation:
    property: str
    message: str

    def __str__(self):
        return f"{self.property}: {self.message}"


def validate(dag: Dag, require_roots: str = "any") -> Optional[Violation]:
    """Return None if ``dag`` is an acyclic connected graph satisfying the
    root policy (``"one"`` or ``"any"``), otherwise the first violation."""
    if require_roots not in ("one", "any"):
        raise ValueError("require_roots must be 'one' or 'any'")
    if topological_order(dag) is None:
        return Violation("cycle", "graph contains a directed cycle")
    if not is_connected(dag):
        return Violation("connected", "graph is not connected")
    roots, _ = roots_and_leaves(dag)
    if require_roots == "one" and len(roots) != 1:
        return Violation("roots", f"expected exactly one root, found {len(roots)}")
    return None


def require_valid(dag: Dag, require_roots: str = "any") -> Dag:
    problem = validate(dag, require_roots)
    if problem is not None:
        raise DagError(str(problem))
    return dag


@dataclass(frozen=True)
class Transition:
    lhs: Multiset
    label: str
    rhs: Multiset
    weight: Optional[float] = None

    def __post_init__(self):
        if not isinstance(self.lhs, Multiset):
            object.__setattr__(self, "lhs", Multiset(self.lhs))
        if not isinstance(self.rhs, Multiset):
            object.__setattr__(self, "rhs", Multiset(self.rhs))

    @property
    def key(self) -> tuple:
        return (self.lhs, self.label, self.rhs)

    def with_weight(self, weight: Optional[float]) -> "Transition":
        return Transition(self.lhs, self.label, self.rhs, weight)

    def __str__(self):
        lhs = "{" + ",".join(self.lhs.elements()) + "}"
        rhs = "{" + ",".join(self.rhs.elements()) + "}"
        w = "" if self.weight is None else f"/{self.weight:g}"
        return f"{lhs} -{self.label}{w}-> {rhs}"


@dataclass(frozen=True)
class DagAutomaton:
    """Multiset DAG automaton; transitions may carry real weights."""

    states: frozenset
    labels: frozenset
    transitions: tuple[Transition, ...]

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "labels", frozenset(self.labels))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        seen = set()
        for i, t in enumerate(self.transitions):
            if t.label not in self.labels:
                raise AutomatonError(f"transition {i}: unknown label {t.label!r}")
            for q in t.lhs.distinct() + t.rhs.distinct():
                if q not in self.states:
                    raise AutomatonError(f"transition {i}: unknown state {q!r}")
            if t.key in seen:
                raise AutomatonError(f"transition {i}: duplicate of an earlier transition")
            seen.add(t.key)

    @cached_property
    def index(self) -> dict:
        """(label, lhs) -> list of transition indices."""
        table = {}
        for i, t in enumerate(self.transitions):
            table.setdefault((t.label, t.lhs), []).append(i)
        return table

    @cached_property
    def by_key(self) -> dict:
        return {t.key: i for i, t in enumerate(self.transitions)}

    @property
    def is_weighted(self) -> bool:
        return all(t.weight is not None for t in self.transitions)

    @property
    def start_transitions(self) -> list[int]:
        return [i for i, t in enumerate(self.transitions) if len(t.lhs) == 0]

    def reweighted(self, weights) -> "DagAutomaton":
        """Copy with new weights (sequence aligned with transitions, or dict index->weight)."""
        if isinstance(weights, Mapping):
            ts = [t.with_weight(weights.get(i, t.weight)) for i, t in enumerate(self.transitions)]
        else:
            weights = list(weights)
            if len(weights) != len(self.transitions):
                raise AutomatonError("one weight per transition required")
            ts = [t.with_weight(w) for t, w in zip(self.transitions, weights)]
        return DagAutomaton(self.states, self.labels, tuple(ts))


WeightedDagAutomaton = DagAutomaton


@dataclass(frozen=True)
class Run:
    """Total map from edge ids to states."""

    assignment: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "assignment", dict(self.assignment))

    def __getitem__(self, eid: int) -> str:
        return self.assignment[eid]

    def states_of(self, eids: Iterable[int]) -> Multiset:
        return Multiset(self.assignment[e] for e in eids)

    def sort_key(self) -> tuple:
        return tuple(sorted(self.assignment.items()))

    def __hash__(self):
        return hash(self.sort_key())

    def __eq__(self, other):
        if not isinstance(other, Run):
            return NotImplemented
        return self.assignment == other.assignment

    def check_total(self, dag: Dag) -> None:
        if set(self.assignment) != {e.id for e in dag.edges}:
            raise AutomatonError("run is not total on the edges of the graph")
