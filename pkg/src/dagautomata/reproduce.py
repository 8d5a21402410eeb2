"""Finite, desk-scale checks of the factorial-growth result and its context.

Each criterion is a function returning a :class:`CriterionResult`. Failures
are reported, never raised, so one broken fixture does not hide the others.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import asdict, dataclass
from typing import Callable, Optional

from .analysis import canonical_form, is_planar, path_language, rewire
from .core import Dag, DagAutomaton, Run, Transition, is_connected
from .derivation import count_by_group, enumerate_language
from .fixtures import load_automaton, load_dag
from .planar import enumerate_planar, planar_partial_mass
from .recognition import accepting_runs, canonical_run, recognizes, run_is_accepting
from .weighting import (
    dag_weight,
    divergence_probe,
    group_mass,
    partial_mass,
    reference_distribution_mass,
    theorem1_series,
    theorem1_term,
)

DEFAULT_TOLERANCE = 1e-9
PRODUCT_TOLERANCE = 1e-12


@dataclass
class CriterionResult:
    id: str
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"{self.id} {'PASS' if self.passed else 'FAIL'} {self.title}: {self.detail}"


def k33() -> Dag:
    return Dag.build(["u", "u", "u", "v", "v", "v"], [(i, j) for i in range(3) for j in range(3, 6)])


def a1_factorial_counts(tol: float) -> tuple[bool, str]:
    counts = count_by_group(load_automaton("example1"), "single", 13, "b")
    expected = {n: math.factorial(n) for n in range(6)}
    return counts == expected, f"counts {counts}"


def a2_unique_runs(tol: float) -> tuple[bool, str]:
    a = load_automaton("example1")
    dags = enumerate_language(a, "single", 13)
    sizes = {len(accepting_runs(a, g)) for g in dags}
    return sizes == {1}, f"{len(dags)} DAGs, run counts {sorted(sizes)}"


def a3_example4_weight(tol: float) -> tuple[bool, str]:
    w = dag_weight(load_automaton("example3"), load_dag("example4"))
    return abs(w - 0.125) <= PRODUCT_TOLERANCE, f"weight {w!r}"


def a4_convergent_mass(tol: float) -> tuple[bool, str]:
    a = load_automaton("example3")
    m = partial_mass(a, "single", 32)
    target = 1 - 2.0**-31
    by_n = group_mass(a, "single", 32, "b")
    verdict = divergence_probe(lambda n: by_n[n], max(by_n)).verdict
    ok = abs(m.total - target) <= tol and verdict == "converges"
    return ok, f"mass {m.total!r} (target {target!r}), verdict {verdict}"


def a5_closed_form(tol: float) -> tuple[bool, str]:
    a = load_automaton("example1").reweighted([0.5] * 5)
    per_n = group_mass(a, "single", 11, "b")
    errs = {n: abs(per_n.get(n, 0.0) - math.factorial(n) * 0.125 * 0.25**n) for n in range(5)}
    worst = max(errs.values())
    return worst <= PRODUCT_TOLERANCE and set(per_n) == set(range(5)), f"max error {worst:.3g}"


def a6_divergence(tol: float) -> tuple[bool, str]:
    s, crossed = 0.0, None
    for n in range(26):
        s += theorem1_term(0.125, 0.25, n)
        if crossed is None and s > 1e6:
            crossed = n
    verdicts = {
        (B, C): divergence_probe(theorem1_series(B, C), 50).verdict
        for B in (0.125, 1.0, 2.0)
        for C in (0.25, 1.0, 2.0)
    }
    ok = crossed is not None and all(v == "diverges" for v in verdicts.values())
    return ok, f"partial sum > 1e6 at n={crossed}; verdicts {sorted(set(verdicts.values()))}"


def a7_reference_distribution(tol: float) -> tuple[bool, str]:
    m = reference_distribution_mass(30)
    return abs(m - (1 - 2.0**-31)) <= tol, f"mass {m!r}"


def a8_planar_contrast(tol: float) -> tuple[bool, str]:
    pa = load_automaton("example6")
    dags = enumerate_planar(pa, 13)
    per_n = sorted(sum(1 for v in g.nodes if v.label == "b") for g in dags)
    mass = planar_partial_mass(pa, 2 * 30 + 3).total
    ok = per_n == list(range(6)) and abs(mass - (1 - 2.0**-31)) <= tol
    return ok, f"b-counts {per_n}, mass {mass!r}"


def a9_planarity(tol: float) -> tuple[bool, str]:
    got = {
        "fig1v": is_planar(load_dag("fig1v")),
        "fig1vii": is_planar(load_dag("fig1vii")),
        "dotted": is_planar(load_dag("nonplanar_k33_minor")),
        "K33": is_planar(k33()),
        "coordination": is_planar(load_dag("amr_coordination")),
    }
    want = {"fig1v": True, "fig1vii": True, "dotted": False, "K33": False, "coordination": False}
    return got == want, str(got)


def a10_path_language(tol: float) -> tuple[bool, str]:
    paths = path_language(load_dag("fig1v"))
    return paths == {"abde", "abbdde", "abbcdde"}, str(sorted(paths))


def a11_rewiring(tol: float) -> tuple[bool, str]:
    a = load_automaton("example1")
    g = load_dag("fig1v")
    (run,) = accepting_runs(a, g)
    q_edges = [e for e, q in run.assignment.items() if q == "q"]
    res = rewire(g, run, q_edges, a)
    want = {canonical_form(g), canonical_form(load_dag("fig1vii"))}
    ok1 = {canonical_form(h) for h in res.dags} == want and all(recognizes(a, h) for h in res.dags)

    l3 = [h for h in enumerate_language(a, "single", 9) if sum(v.label == "b" for v in h.nodes) == 3]
    h = l3[0]
    (run3,) = accepting_runs(a, h)
    res3 = rewire(h, run3, [e for e, q in run3.assignment.items() if q == "q"], a)
    forms = {canonical_form(x) for x in res3.dags}
    ok3 = len(res3.dags) == 6 and len(forms) == 6 and all(recognizes(a, x) for x in res3.dags)
    return ok1 and ok3, f"fig1v -> {len(res.dags)} DAGs; L_3 member -> {len(res3.dags)} DAGs"


def a12_multi_containment(tol: float) -> tuple[bool, str]:
    a = load_automaton("example1")
    single = enumerate_language(a, "single", 9)
    multi = enumerate_language(a, "multi", 9)
    mforms = {canonical_form(g) for g in multi}
    contained = all(canonical_form(g) in mforms for g in single)
    sound = all(is_connected(g) and recognizes(a, g) for g in multi)
    return contained and sound, f"|single|={len(single)}, |multi|={len(multi)}"


def random_instance(rng: random.Random, max_edges: int = 6, max_states: int = 3) -> tuple[DagAutomaton, Dag]:
    """A random connected DAG and an automaton over at most ``max_states``
    states; half of the automata are seeded with the transitions of one
    random run so that acceptance is common."""
    n = rng.randint(1, 5)
    labels = [rng.choice("ab") for _ in range(n)]
    edges = []
    for v in range(1, n):
        edges.append((rng.randrange(v), v))
    while len(edges) < max_edges and rng.random() < 0.5 and n > 1:
        s = rng.randrange(n - 1)
        edges.append((s, rng.randrange(s + 1, n)))
    g = Dag.build(labels, edges[:max_edges])
    states = ["p", "q", "r"][: rng.randint(1, max_states)]
    ts = {}
    if rng.random() < 0.5:
        r = Run({e.id: rng.choice(states) for e in g.edges})
        for v in g.node_ids:
            key = (r.states_of(g.in_edges(v)), g.label_of[v], r.states_of(g.out_edges(v)))
            ts[key] = Transition(*key)
    for _ in range(rng.randint(0, 6)):
        lhs = [rng.choice(states) for _ in range(rng.randint(0, 2))]
        rhs = [rng.choice(states) for _ in range(rng.randint(0, 3))]
        t = Transition(lhs, rng.choice("ab"), rhs)
        ts.setdefault(t.key, t)
    return DagAutomaton(states, {"a", "b"}, tuple(ts.values())), g


def brute_force_runs(a: DagAutomaton, g: Dag) -> set:
    """Filter all |Q|^|E| total assignments through run_is_accepting."""
    eids = [e.id for e in g.edges]
    out = set()
    for combo in itertools.product(sorted(a.states), repeat=len(eids)):
        r = Run(dict(zip(eids, combo)))
        if run_is_accepting(a, g, r):
            out.add(r)
    return out


def a13_oracle_equivalence(tol: float, trials: int = 100, seed: int = 13) -> tuple[bool, str]:
    rng = random.Random(seed)
    accepted = 0
    for i in range(trials):
        a, g = random_instance(rng)
        brute = brute_force_runs(a, g)
        literal = set(accepting_runs(a, g, distinguish_parallel=True))
        merged = set(accepting_runs(a, g))
        if literal != brute or merged != {canonical_run(g, r) for r in brute}:
            return False, f"mismatch on instance {i}"
        accepted += bool(brute)
    return True, f"{trials} instances agree ({accepted} with accepting runs)"


CRITERIA: dict[str, tuple[str, Callable[[float], tuple[bool, str]]]] = {
    "A1": ("factorial counts", a1_factorial_counts),
    "A2": ("unique accepting runs", a2_unique_runs),
    "A3": ("example 4 weight", a3_example4_weight),
    "A4": ("convergent mass", a4_convergent_mass),
    "A5": ("closed form vs enumeration", a5_closed_form),
    "A6": ("factorial series diverges", a6_divergence),
    "A7": ("reference distribution mass", a7_reference_distribution),
    "A8": ("planar contrast", a8_planar_contrast),
    "A9": ("planarity", a9_planarity),
    "A10": ("path language", a10_path_language),
    "A11": ("rewiring", a11_rewiring),
    "A12": ("multi-rooted containment", a12_multi_containment),
    "A13": ("recogniser vs brute force", a13_oracle_equivalence),
}


def run_criterion(cid: str, tolerance: float = DEFAULT_TOLERANCE) -> CriterionResult:
    title, fn = CRITERIA[cid]
    start = time.perf_counter()
    try:
        ok, detail = fn(tolerance)
    except Exception as exc:  # reported, not raised
        ok, detail = False, f"error: {type(exc).__name__}: {exc}"
    return CriterionResult(cid, title, bool(ok), detail, time.perf_counter() - start)


def reproduce(criteria: Optional[list[str]] = None, tolerance: float = DEFAULT_TOLERANCE) -> list[CriterionResult]:
    ids = list(CRITERIA) if not criteria else criteria
    unknown = [c for c in ids if c not in CRITERIA]
    if unknown:
        raise KeyError(f"unknown criteria: {', '.join(unknown)}")
    return [run_criterion(c, tolerance) for c in ids]


def report_json(results: list[CriterionResult]) -> dict:
    return {
        "passed": all(r.passed for r in results),
        "criteria": [asdict(r) for r in results],
    }
