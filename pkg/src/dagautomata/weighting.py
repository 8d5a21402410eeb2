"""Weighted semantics: run and DAG weights, truncated language mass, and
ratio-test probes of the factorial-count series.

Weights are plain floats. A finite truncation can never prove that a series
diverges, so :func:`divergence_probe` only reports a heuristic verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from .core import AutomatonError, Dag, DagAutomaton, Run, require_valid
from .derivation import enumerate_language
from .recognition import iter_accepting_runs, node_transition

RATIO_EPSILON = 0.05
TAIL_WINDOW = 10
DIVERGENCE_CAVEAT = (
    "heuristic: a finite number of terms cannot prove divergence or convergence; "
    "the verdict reads the trend of the last ratios"
)


def run_weight(wa: DagAutomaton, g: Dag, r: Run) -> float:
    """Product of the weights of the transitions used at every node."""
    r.check_total(g)
    w = 1.0
    for v in g.node_ids:
        ti = node_transition(wa, g, r, v)
        if ti is None:
            raise AutomatonError(f"run is not accepting at node {v}")
        tw = wa.transitions[ti].weight
        if tw is None:
            raise AutomatonError(f"transition {ti} ({wa.transitions[ti]}) has no weight")
        w *= tw
    return w


def dag_weight(wa: DagAutomaton, g: Dag) -> float:
    """Sum of run weights over all accepting runs; 0.0 if ``g`` is not recognised."""
    require_valid(g)
    return sum((run_weight(wa, g, r) for r in iter_accepting_runs(wa, g)), 0.0)


def _require_weighted(wa) -> None:
    for i, t in enumerate(wa.transitions):
        if t.weight is None:
            raise AutomatonError(f"transition {i} ({t}) has no weight")


@dataclass
class Mass:
    total: float
    by_size: dict[int, float]
    by_dag: list[tuple[Dag, float]] = field(default_factory=list)


def partial_mass(wa: DagAutomaton, mode: str = "single", max_nodes: int = 1) -> Mass:
    """Total weight of the language truncated at ``max_nodes`` nodes, with a
    breakdown by node count. Sizes are summed in increasing order."""
    _require_weighted(wa)
    by_size: dict[int, float] = {}
    by_dag = []
    for g in enumerate_language(wa, mode, max_nodes):
        w = dag_weight(wa, g)
        by_dag.append((g, w))
        by_size[len(g.nodes)] = by_size.get(len(g.nodes), 0.0) + w
    by_size = dict(sorted(by_size.items()))
    total = 0.0
    for n in by_size:
        total += by_size[n]
    return Mass(total, by_size, by_dag)


def group_mass(wa: DagAutomaton, mode: str, max_nodes: int, group_label: str) -> dict[int, float]:
    """Like :func:`partial_mass`, bucketed by the number of ``group_label`` nodes."""
    m = partial_mass(wa, mode, max_nodes)
    out: dict[int, float] = {}
    for g, w in m.by_dag:
        n = sum(1 for node in g.nodes if node.label == group_label)
        out[n] = out.get(n, 0.0) + w
    return dict(sorted(out.items()))


def theorem1_log_term(B: float, C: float, n: int) -> tuple[int, float]:
    """(sign, log|n! * B * C**n|); sign 0 means the term is exactly zero."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if B == 0 or (C == 0 and n > 0):
        return 0, -math.inf
    sign = (1 if B > 0 else -1) * (1 if C > 0 or n % 2 == 0 else -1)
    logmag = math.lgamma(n + 1) + math.log(abs(B)) + (n * math.log(abs(C)) if n else 0.0)
    return sign, logmag


def theorem1_term(B: float, C: float, n: int) -> float:
    """n! * B * C**n, evaluated iteratively; saturates to +-inf beyond double range."""
    sign, logmag = theorem1_log_term(B, C, n)
    if sign == 0:
        return 0.0
    if logmag > 709.0:
        return math.copysign(math.inf, sign)
    value = B
    for k in range(1, n + 1):
        value *= k * C
    return value


@dataclass
class SeriesTerm:
    n: int
    count: Union[int, float]
    factor: float
    value: float
    log_abs: float
    sign: int


@dataclass
class SeriesReport:
    terms: list[SeriesTerm]
    partial_sums: list[float]
    ratio_estimates: list[Optional[float]]
    verdict: str
    notes: list[str] = field(default_factory=list)

    def rows(self) -> list[dict]:
        out = []
        for i, t in enumerate(self.terms):
            out.append(
                {
                    "n": t.n,
                    "c_n": t.count,
                    "f_n": t.factor,
                    "term": t.value,
                    "partial_sum": self.partial_sums[i],
                    "ratio": self.ratio_estimates[i] if i < len(self.ratio_estimates) else None,
                }
            )
        return out

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "notes": self.notes, "terms": self.rows()}


def _split_term(raw) -> tuple[Union[int, float], float]:
    if isinstance(raw, tuple):
        count, factor = raw
        return count, float(factor)
    return 1, float(raw)


def _log_abs(count, factor) -> tuple[int, float]:
    if count == 0 or factor == 0:
        return 0, -math.inf
    sign = (1 if count > 0 else -1) * (1 if factor > 0 else -1)
    # math.log accepts arbitrarily large ints
    return sign, math.log(abs(count)) + math.log(abs(factor))


def divergence_probe(
    term_fn: Callable[[int], object],
    n_max: int,
    epsilon: float = RATIO_EPSILON,
    window: int = TAIL_WINDOW,
    n_min: int = 0,
) -> SeriesReport:
    """Tabulate a series and apply a ratio-test heuristic.

    ``term_fn(n)`` returns a term, or a ``(count, factor)`` pair whose product
    is the term (counts may be large ints). Ratios are taken in log space, so
    terms beyond double range still yield finite ratio estimates.

    Verdict: ``diverges`` when the last ratio exceeds ``1 + epsilon`` and the
    ratios in the tail window are strictly increasing; ``converges`` when
    every ratio in the window is below ``1 - epsilon`` or the tail terms are
    all zero; otherwise ``inconclusive``.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    terms = []
    for n in range(n_min, n_max + 1):
        count, factor = _split_term(term_fn(n))
        sign, log_abs = _log_abs(count, factor)
        try:
            value = count * factor
        except OverflowError:
            value = math.copysign(math.inf, sign)
        terms.append(SeriesTerm(n, count, factor, value, log_abs, sign))
    return _report(terms, epsilon, window)


def series_report_from_values(values: dict[int, float], epsilon=RATIO_EPSILON, window=TAIL_WINDOW) -> SeriesReport:
    """Probe a finite table of terms (e.g. per-size totals from enumeration)."""
    terms = []
    for n in sorted(values):
        v = float(values[n])
        sign, log_abs = _log_abs(1, v)
        terms.append(SeriesTerm(n, 1, v, v, log_abs, sign))
    if len(terms) < 2:
        return SeriesReport(terms, _partial_sums(terms), [], "inconclusive", ["fewer than two terms", DIVERGENCE_CAVEAT])
    return _report(terms, epsilon, window)


def _partial_sums(terms) -> list[float]:
    sums, s = [], 0.0
    for t in terms:
        s += t.value
        sums.append(s)
    return sums


def _report(terms: list[SeriesTerm], epsilon: float, window: int) -> SeriesReport:
    notes = []
    ratios: list[Optional[float]] = []
    for a, b in zip(terms, terms[1:]):
        if a.sign == 0:
            ratios.append(None)
            notes.append(f"ratio undefined at n={a.n}: zero term")
            continue
        lr = (b.log_abs - a.log_abs) if b.sign != 0 else -math.inf
        ratios.append(math.exp(lr) if lr < 709.0 else math.inf)

    tail_terms = terms[-(window + 1):]
    tail = ratios[-window:]
    if all(t.sign == 0 for t in tail_terms[1:]):
        verdict = "converges"
        notes.append("tail terms are all zero")
    elif any(r is None for r in tail):
        verdict = "inconclusive"
    elif tail[-1] > 1 + epsilon and all(x < y for x, y in zip(tail, tail[1:])):
        verdict = "diverges"
    elif all(r < 1 - epsilon for r in tail):
        verdict = "converges"
    else:
        verdict = "inconclusive"
    notes.append(DIVERGENCE_CAVEAT)
    return SeriesReport(terms, _partial_sums(terms), ratios, verdict, notes)


def theorem1_series(B: float, C: float) -> Callable[[int], tuple[int, float]]:
    """Term function for sum over n of n! * B * C**n, as (n!, B*C**n) pairs."""
    return lambda n: (math.factorial(n), B * C**n)


def reference_distribution_mass(n_max: int) -> float:
    """Mass of the non-factoring distribution p(G) = 1/(2^(n+1) n!) over the
    n! DAGs of each size n, summed for n = 0..n_max."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    total = 0.0
    for n in range(n_max + 1):
        fact = math.factorial(n)
        total += fact * (1.0 / (2.0 ** (n + 1) * fact))
    return total


@dataclass
class FullSupportReport:
    violations: list[tuple[Dag, float]]
    mass: Mass
    group_totals: dict[int, float]
    series: SeriesReport

    @property
    def verdict(self) -> str:
        return self.series.verdict

    @property
    def r1_violations(self) -> list[tuple[Dag, float]]:
        return [(g, w) for g, w in self.violations if not 0.0 <= w <= 1.0]


def full_support_check(
    wa: DagAutomaton, mode: str = "single", max_nodes: int = 1, group_label: Optional[str] = None
) -> FullSupportReport:
    """Flag enumerated DAGs whose weight lies outside (0, 1], and probe the
    series of per-size totals (by node count, or by ``group_label`` count)."""
    m = partial_mass(wa, mode, max_nodes)
    violations = [(g, w) for g, w in m.by_dag if not 0.0 < w <= 1.0]
    if group_label is None:
        totals = dict(m.by_size)
    else:
        totals = {}
        for g, w in m.by_dag:
            n = sum(1 for node in g.nodes if node.label == group_label)
            totals[n] = totals.get(n, 0.0) + w
        totals = dict(sorted(totals.items()))
    return FullSupportReport(violations, m, totals, series_report_from_values(totals))

