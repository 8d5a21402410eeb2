"""JSON and DOT forms of automata, DAGs and runs."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Union

from .core import AutomatonError, Dag, DagAutomaton, DagError, Edge, Node, Run, Transition


class FormatError(ValueError):
    """Malformed input document; the message names the offending field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def _load_json(source) -> tuple[dict, str]:
    if isinstance(source, dict):
        return source, "<dict>"
    path = Path(source)
    text = path.read_text()
    try:
        return json.loads(text), str(path)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None


def _field(obj, key, where, kind=None, default=...):
    if not isinstance(obj, dict):
        raise FormatError(where, "expected an object")
    if key not in obj:
        if default is not ...:
            return default
        raise FormatError(f"{where}.{key}", "missing field")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise FormatError(f"{where}.{key}", f"expected {getattr(kind, '__name__', kind)}")
    return value


def _weight(t, where) -> Optional[float]:
    w = t.get("weight")
    if w is None:
        return None
    if isinstance(w, bool) or not isinstance(w, (int, float)):
        raise FormatError(f"{where}.weight", "expected a number")
    return float(w)


def automaton_from_json(source):
    """Load a DagAutomaton, or a PlanarAutomaton when ``"ordered": true``."""
    doc, name = _load_json(source)
    states = _field(doc, "states", name, list)
    labels = _field(doc, "labels", name, list)
    ordered = _field(doc, "ordered", name, bool, default=False)
    raw = _field(doc, "transitions", name, list)
    ts = []
    for i, t in enumerate(raw):
        where = f"{name}: transitions[{i}]"
        lhs = _field(t, "lhs", where, list)
        rhs = _field(t, "rhs", where, list)
        label = _field(t, "label", where, str)
        ts.append((lhs, label, rhs, _weight(t, where)))
    try:
        if ordered:
            from .planar import PlanarAutomaton, PlanarTransition

            return PlanarAutomaton(
                states, labels, tuple(PlanarTransition(tuple(l), lab, tuple(r), w) for l, lab, r, w in ts)
            )
        return DagAutomaton(states, labels, tuple(Transition(l, lab, r, w) for l, lab, r, w in ts))
    except AutomatonError as exc:
        raise FormatError(name, str(exc)) from None


def automaton_to_json(a) -> dict:
    from .planar import PlanarAutomaton

    ordered = isinstance(a, PlanarAutomaton)
    out = []
    for t in a.transitions:
        item = {
            "lhs": list(t.lhs) if ordered else t.lhs.elements(),
            "label": t.label,
            "rhs": list(t.rhs) if ordered else t.rhs.elements(),
        }
        if t.weight is not None:
            item["weight"] = t.weight
        out.append(item)
    return {
        "states": sorted(a.states),
        "labels": sorted(a.labels),
        "ordered": ordered,
        "transitions": out,
    }


def dag_from_json(source) -> Dag:
    doc, name = _load_json(source)
    nodes = []
    for i, n in enumerate(_field(doc, "nodes", name, list)):
        where = f"{name}: nodes[{i}]"
        nid = _field(n, "id", where, int)
        nodes.append(Node(nid, _field(n, "label", where, str)))
    edges = []
    for i, e in enumerate(_field(doc, "edges", name, list, default=[])):
        where = f"{name}: edges[{i}]"
        elabel = _field(e, "elabel", where, default=None)
        if elabel is not None and not isinstance(elabel, str):
            raise FormatError(f"{where}.elabel", "expected str")
        edges.append(
            Edge(
                _field(e, "id", where, int, default=i),
                _field(e, "src", where, int),
                _field(e, "tar", where, int),
                elabel,
            )
        )
    try:
        return Dag(tuple(nodes), tuple(edges))
    except DagError as exc:
        raise FormatError(name, str(exc)) from None


def dag_to_json(g: Dag) -> dict:
    edges = []
    for e in g.edges:
        item = {"id": e.id, "src": e.src, "tar": e.tar}
        if e.label is not None:
            item["elabel"] = e.label
        edges.append(item)
    return {"nodes": [{"id": n.id, "label": n.label} for n in g.nodes], "edges": edges}


def run_to_json(r: Run) -> dict:
    return {str(k): v for k, v in sorted(r.assignment.items())}


def _dot_id(text: str) -> str:
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def dag_to_dot(g: Dag, run: Optional[Run] = None, name: str = "G") -> str:
    """Graphviz digraph; edge labels show run states (or edge labels) when present."""
    lines = [f"digraph {_dot_id(name)} {{"]
    for n in g.nodes:
        lines.append(f"  n{n.id} [label={_dot_id(n.label)}];")
    for e in g.edges:
        attrs = [f"id={_dot_id('e%d' % e.id)}"]
        text = run[e.id] if run is not None else e.label
        if text is not None:
            attrs.append(f"label={_dot_id(text)}")
        lines.append(f"  n{e.src} -> n{e.tar} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_json(obj, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")
