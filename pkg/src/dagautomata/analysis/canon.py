"""Canonical labelling of small node- and edge-labelled directed multigraphs.

Colour refinement seeded by (label, in-degree, out-degree), then
individualisation of the first non-singleton colour class with backtracking.
The canonical form is the least adjacency encoding over all leaves of the
search tree, so two graphs get the same form exactly when they are isomorphic.
"""

from __future__ import annotations

import json
from typing import Hashable, Optional, Sequence

from ..core import Dag


def _rank(signatures: list) -> list[int]:
    table = {s: i for i, s in enumerate(sorted(set(signatures)))}
    return [table[s] for s in signatures]


class _Graph:
    def __init__(self, labels: Sequence[str], edges: Sequence[tuple[int, int, str]]):
        self.n = len(labels)
        self.labels = list(labels)
        self.edges = list(edges)
        self.out = [[] for _ in range(self.n)]
        self.inc = [[] for _ in range(self.n)]
        self.incident = [set() for _ in range(self.n)]
        for i, (s, t, lab) in enumerate(self.edges):
            self.out[s].append((t, lab))
            self.inc[t].append((s, lab))
            self.incident[s].add(i)
            self.incident[t].add(i)

    def are_twins(self, u: int, v: int) -> bool:
        """True when swapping u and v is an automorphism."""
        if self.labels[u] != self.labels[v]:
            return False
        touched = sorted(self.incident[u] | self.incident[v])
        before = sorted(self.edges[i] for i in touched)
        swap = {u: v, v: u}
        after = sorted((swap.get(s, s), swap.get(t, t), lab) for s, t, lab in before)
        return before == after

    def refine(self, colors: list[int]) -> list[int]:
        ncolors = len(set(colors))
        while True:
            sigs = [
                (
                    colors[v],
                    tuple(sorted((lab, colors[t]) for t, lab in self.out[v])),
                    tuple(sorted((lab, colors[s]) for s, lab in self.inc[v])),
                )
                for v in range(self.n)
            ]
            new = _rank(sigs)
            k = len(set(new))
            if k == ncolors:
                return new
            colors, ncolors = new, k

    def encode(self, colors: list[int]) -> tuple:
        order = sorted(range(self.n), key=colors.__getitem__)
        pos = {v: i for i, v in enumerate(order)}
        return (
            tuple(self.labels[v] for v in order),
            tuple(sorted((pos[s], pos[t], lab) for s, t, lab in self.edges)),
        )


def _search(g: _Graph, colors: list[int], best: list) -> None:
    colors = g.refine(colors)
    cells = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    target = None
    for c in sorted(cells):
        if len(cells[c]) > 1:
            target = cells[c]
            break
    if target is None:
        enc = g.encode(colors)
        if best[0] is None or enc < best[0]:
            best[0] = enc
        return
    explored: list[int] = []
    for v in target:
        # twins give identical subtrees
        if any(g.are_twins(v, u) for u in explored):
            continue
        explored.append(v)
        # individualise v: it keeps its colour rank but sorts before its cell-mates
        split = _rank([(c, 0 if u == v else 1) for u, c in enumerate(colors)])
        _search(g, split, best)


def canonical_encoding(labels: Sequence[Hashable], edges: Sequence[tuple]) -> tuple:
    """Canonical tuple for a graph given as node labels (index = node) and
    ``(src, tar)`` or ``(src, tar, label)`` edges."""
    str_labels = [_as_text(x) for x in labels]
    str_edges = [(e[0], e[1], _as_text(e[2]) if len(e) > 2 else "") for e in edges]
    g = _Graph(str_labels, str_edges)
    seed = _rank(
        [(str_labels[v], len(g.inc[v]), len(g.out[v])) for v in range(g.n)]
    )
    best: list[Optional[tuple]] = [None]
    _search(g, seed, best)
    return best[0]


def _as_text(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return json.dumps(x, separators=(",", ":"))


def encoding_bytes(enc: tuple) -> bytes:
    return json.dumps(enc, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def canonical_form(g: Dag) -> bytes:
    """Byte string equal for two DAGs iff they are isomorphic, preserving
    node labels, edge direction, edge labels and parallel-edge multiplicity."""
    index = {n.id: i for i, n in enumerate(g.nodes)}
    labels = [n.label for n in g.nodes]
    edges = [(index[e.src], index[e.tar], e.label) for e in g.edges]
    return encoding_bytes(canonical_encoding(labels, edges))


def canonical_dag(g: Dag) -> Dag:
    """Representative of g's isomorphism class with nodes numbered canonically."""
    labels, edges = json.loads(canonical_form(g))
    return Dag.build(labels, [(s, t, lab or None) for s, t, lab in edges])


def are_isomorphic(g: Dag, h: Dag) -> bool:
    return canonical_form(g) == canonical_form(h)
