"""Command-line entry point.

Exit status: 0 success, 1 domain failure (not recognised, invalid graph,
failed criterion), 2 usage or input-format error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import analysis, derivation, planar, recognition, reproduce, weighting
from .core import AutomatonError, DagError, validate
from .serialize import (
    FormatError,
    automaton_from_json,
    dag_from_json,
    dag_to_dot,
    dag_to_json,
    run_to_json,
    write_json,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


def _emit_csv(rows: list[dict], out) -> None:
    if not rows:
        return
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    out.write(buf.getvalue())


def _budget(value: int) -> int:
    if value < 1:
        raise UsageError("--max-nodes must be a positive integer")
    return value


def _load_automaton(path, ordered=None):
    a = automaton_from_json(path)
    if ordered and not isinstance(a, planar.PlanarAutomaton):
        raise UsageError("--ordered given but the automaton file is not ordered")
    return a


def cmd_validate(args, out) -> int:
    if args.automaton:
        a = _load_automaton(args.automaton)
        _emit({"automaton": "ok", "transitions": len(a.transitions)}, out)
        if not args.dag:
            return EXIT_OK
    if not args.dag:
        raise UsageError("give --dag and/or --automaton")
    g = dag_from_json(args.dag)
    problem = validate(g, args.roots)
    if problem is None:
        _emit({"dag": "ok"}, out)
        return EXIT_OK
    _emit({"dag": "violation", "property": problem.property, "message": problem.message}, out)
    return EXIT_FAIL


def cmd_generate(args, out) -> int:
    a = _load_automaton(args.automaton, args.ordered)
    max_nodes = _budget(args.max_nodes)
    if isinstance(a, planar.PlanarAutomaton):
        if args.mode != "single":
            raise UsageError("planar automata support single-rooted mode only")
        dags = planar.enumerate_planar(a, max_nodes)
    else:
        dags = derivation.enumerate_language(a, args.mode, max_nodes)
    written = []
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for i, g in enumerate(dags):
            path = outdir / f"dag_{i:04d}.{args.format}"
            if args.format == "dot":
                path.write_text(dag_to_dot(g, name=f"dag_{i:04d}"))
            else:
                write_json(dag_to_json(g), path)
            written.append(str(path))
        _emit({"count": len(dags), "files": written}, out)
    elif args.format == "dot":
        for i, g in enumerate(dags):
            out.write(dag_to_dot(g, name=f"dag_{i:04d}"))
    else:
        _emit({"count": len(dags), "dags": [dag_to_json(g) for g in dags]}, out)
    return EXIT_OK


def cmd_sample(args, out) -> int:
    a = _load_automaton(args.automaton)
    res = derivation.sample_derivation(a, args.mode, args.max_steps, args.seed)
    if res.complete:
        _emit({"complete": True, "dag": dag_to_json(res.dag)}, out)
        return EXIT_OK
    _emit({"complete": False, "reason": res.reason, "stranded": res.stranded.elements()}, out)
    return EXIT_FAIL


def cmd_recognize(args, out) -> int:
    a = _load_automaton(args.automaton)
    g = dag_from_json(args.dag)
    if isinstance(a, planar.PlanarAutomaton):
        ok = planar.planar_recognizes(a, g)
        _emit({"recognized": ok, "method": "generate-and-match"}, out)
        return EXIT_OK if ok else EXIT_FAIL
    runs = recognition.accepting_runs(a, g)
    if not args.all_runs:
        runs = runs[:1]
    if args.format == "dot":
        for i, r in enumerate(runs):
            out.write(dag_to_dot(g, r, name=f"run_{i}"))
    else:
        _emit({"recognized": bool(runs), "runs": [run_to_json(r) for r in runs]}, out)
    return EXIT_OK if runs else EXIT_FAIL


def cmd_weigh(args, out) -> int:
    a = _load_automaton(args.automaton)
    g = dag_from_json(args.dag)
    runs = recognition.accepting_runs(a, g)
    _emit(
        {
            "weight": weighting.dag_weight(a, g),
            "runs": [{"run": run_to_json(r), "weight": weighting.run_weight(a, g, r)} for r in runs],
        },
        out,
    )
    return EXIT_OK if runs else EXIT_FAIL


def cmd_mass(args, out) -> int:
    a = _load_automaton(args.automaton, args.ordered)
    max_nodes = _budget(args.max_nodes)
    if isinstance(a, planar.PlanarAutomaton):
        m = planar.planar_partial_mass(a, max_nodes)
    else:
        m = weighting.partial_mass(a, args.mode, max_nodes)
    rows = [{"nodes": n, "mass": w} for n, w in m.by_size.items()]
    if args.format == "csv":
        _emit_csv(rows, out)
    else:
        _emit({"total": m.total, "by_size": rows, "dags": len(m.by_dag)}, out)
    return EXIT_OK


def cmd_probe(args, out) -> int:
    if args.from_enumeration:
        if not args.automaton:
            raise UsageError("--from-enumeration needs --automaton")
        a = _load_automaton(args.automaton)
        rep = weighting.full_support_check(a, args.mode, _budget(args.max_nodes), args.group_label)
        report = rep.series
        extra = {"mass": rep.mass.total, "r1_prime_violations": len(rep.violations)}
    else:
        if args.series != "theorem1":
            raise UsageError("unknown --series")
        if args.B is None or args.C is None:
            raise UsageError("--series theorem1 needs --B and --C")
        if args.n_max < 2:
            raise UsageError("--n-max must be at least 2")
        report = weighting.divergence_probe(weighting.theorem1_series(args.B, args.C), args.n_max)
        extra = {}
    if args.format == "csv":
        _emit_csv(report.rows(), out)
    else:
        _emit({**report.to_json(), **extra}, out)
    return EXIT_OK


def cmd_paths(args, out) -> int:
    _emit(sorted(analysis.path_language(dag_from_json(args.dag))), out)
    return EXIT_OK


def cmd_planar_check(args, out) -> int:
    ok = analysis.is_planar(dag_from_json(args.dag))
    _emit({"planar": ok}, out)
    return EXIT_OK


def cmd_canon(args, out) -> int:
    g = dag_from_json(args.dag)
    _emit({"canonical_form": analysis.canonical_form(g).decode("utf-8")}, out)
    return EXIT_OK


def _parse_ids(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--edges expects comma-separated integers, got {text!r}") from None


def cmd_rewire(args, out) -> int:
    a = _load_automaton(args.automaton)
    g = dag_from_json(args.dag)
    runs = recognition.accepting_runs(a, g)
    if not runs:
        _emit({"error": "graph is not recognised"}, out)
        return EXIT_FAIL
    if not 0 <= args.run_index < len(runs):
        raise UsageError(f"--run-index out of range (0..{len(runs) - 1})")
    res = analysis.rewire(g, runs[args.run_index], _parse_ids(args.edges), a)
    if args.format == "dot":
        for i, h in enumerate(res.dags):
            out.write(dag_to_dot(h, name=f"rewired_{i}"))
    else:
        _emit(
            {
                "count": len(res.dags),
                "cyclic_discarded": res.cyclic_discarded,
                "dags": [dag_to_json(h) for h in res.dags],
            },
            out,
        )
    return EXIT_OK


def cmd_encode_edges(args, out) -> int:
    h = analysis.encode_edge_labels(dag_from_json(args.dag))
    if args.format == "dot":
        out.write(dag_to_dot(h))
    else:
        _emit(dag_to_json(h), out)
    return EXIT_OK


def cmd_reproduce(args, out) -> int:
    ids = [c.strip() for c in args.criteria.split(",")] if args.criteria else None
    try:
        results = reproduce.reproduce(ids, args.tolerance)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    if args.format == "json":
        _emit(reproduce.report_json(results), out)
    else:
        for r in results:
            out.write(r.line() + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dagautomata", description=__doc__.splitlines()[0])
    p.add_argument("--tolerance", type=float, default=reproduce.DEFAULT_TOLERANCE)
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("validate", cmd_validate, "check a DAG (and/or automaton) file")
    sp.add_argument("--dag")
    sp.add_argument("--automaton")
    sp.add_argument("--roots", choices=["one", "any"], default="any")

    sp = add("generate", cmd_generate, "enumerate a DAG language up to a node budget")
    sp.add_argument("--automaton", required=True)
    sp.add_argument("--mode", choices=derivation.MODES, default="single")
    sp.add_argument("--max-nodes", type=int, required=True)
    sp.add_argument("--out")
    sp.add_argument("--format", choices=["json", "dot"], default="json")
    sp.add_argument("--ordered", action="store_true")

    sp = add("sample", cmd_sample, "sample one random derivation")
    sp.add_argument("--automaton", required=True)
    sp.add_argument("--mode", choices=derivation.MODES, default="single")
    sp.add_argument("--max-steps", type=int, default=100)

    sp = add("recognize", cmd_recognize, "decide membership and list accepting runs")
    sp.add_argument("--automaton", required=True)
    sp.add_argument("--dag", required=True)
    sp.add_argument("--all-runs", action="store_true")
    sp.add_argument("--format", choices=["json", "dot"], default="json")

    sp = add("weigh", cmd_weigh, "weight of one DAG")
    sp.add_argument("--automaton", required=True)
    sp.add_argument("--dag", required=True)

    sp = add("mass", cmd_mass, "truncated language mass")
    sp.add_argument("--automaton", required=True)
    sp.add_argument("--mode", choices=derivation.MODES, default="single")
    sp.add_argument("--max-nodes", type=int, required=True)
    sp.add_argument("--ordered", action="store_true")
    sp.add_argument("--format", choices=["json", "csv"], default="json")

    sp = add("probe", cmd_probe, "ratio-test probe of a series")
    sp.add_argument("--series", choices=["theorem1"], default="theorem1")
    sp.add_argument("--B", type=float)
    sp.add_argument("--C", type=float)
    sp.add_argument("--n-max", type=int, default=50)
    sp.add_argument("--from-enumeration", action="store_true")
    sp.add_argument("--automaton")
    sp.add_argument("--mode", choices=derivation.MODES, default="single")
    sp.add_argument("--max-nodes", type=int, default=13)
    sp.add_argument("--group-label")
    sp.add_argument("--format", choices=["json", "csv"], default="json")

    for name, fn, text in [
        ("paths", cmd_paths, "root-to-leaf label strings"),
        ("planar-check", cmd_planar_check, "planarity of the underlying graph"),
        ("canon", cmd_canon, "canonical form"),
    ]:
        sp = add(name, fn, text)
        sp.add_argument("--dag", required=True)

    sp = add("rewire", cmd_rewire, "permute targets of same-state edges")
    sp.add_argument("--automaton", required=True)
    sp.add_argument("--dag", required=True)
    sp.add_argument("--edges", required=True)
    sp.add_argument("--run-index", type=int, default=0)
    sp.add_argument("--format", choices=["json", "dot"], default="json")

    sp = add("encode-edges", cmd_encode_edges, "turn edge labels into nodes")
    sp.add_argument("--dag", required=True)
    sp.add_argument("--format", choices=["json", "dot"], default="json")

    sp = add("reproduce", cmd_reproduce, "run the reproduction criteria")
    sp.add_argument("--criteria")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args, out)
    except (UsageError, FormatError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DagError, AutomatonError, derivation.DerivationError, planar.PlanarError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
