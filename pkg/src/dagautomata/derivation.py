"""Top-down generation of DAGs from a multiset DAG automaton.

A :class:`Configuration` is a partially derived graph plus its frontier of
dangling edges. :func:`enumerate_language` explores configurations depth
first. Configurations that are isomorphic (including their frontier states)
have isomorphic sets of completions, so each isomorphism class is expanded
only once.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .analysis.canon import canonical_encoding, canonical_form, encoding_bytes
from .core import AutomatonError, Dag, DagAutomaton, Edge, Multiset, Node, Transition, is_connected, roots_and_leaves

MODES = ("single", "multi")

# placeholder label for the unresolved target of a frontier edge
_FRONTIER = "\x00frontier"


class DerivationError(ValueError):
    pass


@dataclass(frozen=True)
class Configuration:
    """Partial DAG under construction.

    ``labels[i]`` is the label of node i; ``edges[j] = (src, tar)`` with
    ``tar is None`` for frontier edges; ``frontier`` lists ``(edge id, state)``.
    """

    labels: tuple[str, ...] = ()
    edges: tuple[tuple[int, Optional[int]], ...] = ()
    frontier: tuple[tuple[int, str], ...] = ()
    steps: tuple[tuple[int, tuple[int, ...]], ...] = ()

    @property
    def started(self) -> bool:
        return bool(self.labels)

    @property
    def complete(self) -> bool:
        return self.started and not self.frontier

    @property
    def frontier_states(self) -> Multiset:
        return Multiset(q for _, q in self.frontier)

    def to_dag(self) -> Dag:
        if self.frontier:
            raise DerivationError("configuration still has frontier edges")
        return Dag(
            tuple(Node(i, lab) for i, lab in enumerate(self.labels)),
            tuple(Edge(j, s, t) for j, (s, t) in enumerate(self.edges)),
        )

    def key(self) -> bytes:
        """Isomorphism-invariant key; frontier edges point at placeholder
        nodes labelled with their state."""
        labels = list(self.labels)
        edges = []
        ftarget = {}
        for eid, q in self.frontier:
            ftarget[eid] = len(labels)
            labels.append((_FRONTIER, q))
        for j, (s, t) in enumerate(self.edges):
            edges.append((s, ftarget[j] if t is None else t))
        return encoding_bytes(canonical_encoding(labels, edges))


def apply_transition(
    cfg: Configuration, t: Transition, consumed=(), mode: str = "single", index: int = -1
) -> Configuration:
    """Add a node labelled ``t.label``, bind the ``consumed`` frontier edges to
    it, and open one fresh frontier edge per state of ``t.rhs``."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    consumed = tuple(sorted(set(consumed)))
    front = dict(cfg.frontier)
    for e in consumed:
        if e not in front:
            raise DerivationError(f"edge {e} is not on the frontier")
    got = Multiset(front[e] for e in consumed)
    if got != t.lhs:
        raise DerivationError(f"consumed states {got} do not match left-hand side {t.lhs}")
    if len(t.lhs) == 0 and mode == "single" and cfg.started:
        raise DerivationError("start transition may only be applied first in single-rooted mode")

    v = len(cfg.labels)
    edges = list(cfg.edges)
    for e in consumed:
        edges[e] = (edges[e][0], v)
    taken = set(consumed)
    frontier = [(e, q) for e, q in cfg.frontier if e not in taken]
    for q in t.rhs.elements():
        frontier.append((len(edges), q))
        edges.append((v, None))
    return Configuration(
        cfg.labels + (t.label,),
        tuple(edges),
        tuple(frontier),
        cfg.steps + ((index, consumed),),
    )


def applicable(a: DagAutomaton, cfg: Configuration, mode: str) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Every (transition index, consumed edge ids) applicable to ``cfg``.

    Choices taking different edges with the same state are distinct.
    """
    by_state: dict[str, list[int]] = {}
    for e, q in cfg.frontier:
        by_state.setdefault(q, []).append(e)
    for i, t in enumerate(a.transitions):
        if len(t.lhs) == 0:
            if mode == "multi" or not cfg.started:
                yield i, ()
            continue
        if not cfg.started:
            continue
        pools = []
        for q, k in t.lhs.counts.items():
            avail = by_state.get(q, [])
            if len(avail) < k:
                break
            pools.append(list(itertools.combinations(avail, k)))
        else:
            for combo in itertools.product(*pools):
                yield i, tuple(sorted(itertools.chain.from_iterable(combo)))


def _check_budget(max_nodes: int) -> None:
    if not isinstance(max_nodes, int) or max_nodes < 1:
        raise DerivationError("max_nodes must be a positive integer")


def _accept_complete(cfg: Configuration, mode: str) -> Optional[Dag]:
    g = cfg.to_dag()
    if mode == "multi":
        return g if is_connected(g) else None
    roots, _ = roots_and_leaves(g)
    return g if len(roots) == 1 else None


def enumerate_configurations(a: DagAutomaton, mode: str, max_nodes: int) -> Iterator[Configuration]:
    """Yield one complete configuration per reachable isomorphism class of
    complete configurations with at most ``max_nodes`` nodes."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    _check_budget(max_nodes)
    max_lhs = max((len(t.lhs) for t in a.transitions), default=0)
    seen: set[bytes] = set()
    stack = [Configuration()]
    while stack:
        cfg = stack.pop()
        if cfg.complete:
            yield cfg
            continue
        for i, consumed in applicable(a, cfg, mode):
            nxt = apply_transition(cfg, a.transitions[i], consumed, mode, i)
            n = len(nxt.labels)
            if n > max_nodes:
                continue
            if nxt.frontier:
                # every further node consumes at most max_lhs frontier edges
                if max_lhs == 0 or n + -(-len(nxt.frontier) // max_lhs) > max_nodes:
                    continue
            key = nxt.key()
            if key in seen:
                continue
            seen.add(key)
            stack.append(nxt)


def enumerate_language(a: DagAutomaton, mode: str = "single", max_nodes: int = 1) -> list[Dag]:
    """Isomorphism classes of complete DAGs with at most ``max_nodes`` nodes,
    sorted by (node count, canonical form)."""
    found: dict[bytes, Dag] = {}
    for cfg in enumerate_configurations(a, mode, max_nodes):
        g = _accept_complete(cfg, mode)
        if g is not None:
            found.setdefault(canonical_form(g), g)
    return [found[k] for k in sorted(found, key=lambda k: (len(found[k].nodes), k))]


def count_by_group(a: DagAutomaton, mode: str, max_nodes: int, group_label: str) -> dict[int, int]:
    """Number of language members (up to isomorphism) by count of nodes labelled ``group_label``."""
    if group_label not in a.labels:
        raise AutomatonError(f"unknown label {group_label!r}")
    counts: dict[int, int] = {}
    for g in enumerate_language(a, mode, max_nodes):
        n = sum(1 for node in g.nodes if node.label == group_label)
        counts[n] = counts.get(n, 0) + 1
    return dict(sorted(counts.items()))


@dataclass
class SampleResult:
    dag: Optional[Dag] = None
    stranded: Optional[Multiset] = None
    steps: list = field(default_factory=list)
    reason: str = ""

    @property
    def complete(self) -> bool:
        return self.dag is not None


def sample_derivation(a: DagAutomaton, mode: str = "single", max_steps: int = 100, seed=None) -> SampleResult:
    """Apply uniformly random applicable choices until the frontier empties,
    nothing applies (a dead end), or ``max_steps`` is reached."""
    rng = random.Random(seed)
    cfg = Configuration()
    for _ in range(max_steps):
        if cfg.complete:
            break
        choices = list(applicable(a, cfg, mode))
        if not choices:
            break
        i, consumed = rng.choice(choices)
        cfg = apply_transition(cfg, a.transitions[i], consumed, mode, i)
    steps = list(cfg.steps)
    if not cfg.started:
        return SampleResult(stranded=Multiset(), steps=steps, reason="no start transition")
    if cfg.frontier:
        why = "dead end" if not list(applicable(a, cfg, mode)) else "step limit"
        return SampleResult(stranded=cfg.frontier_states, steps=steps, reason=why)
    g = cfg.to_dag()
    if mode == "multi" and not is_connected(g):
        return SampleResult(stranded=Multiset(), steps=steps, reason="disconnected result")
    return SampleResult(dag=g, steps=steps)
