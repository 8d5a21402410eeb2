import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dagautomata.core import AutomatonError, Dag
from dagautomata.recognition import accepting_runs
from dagautomata.weighting import (
    dag_weight,
    divergence_probe,
    full_support_check,
    group_mass,
    partial_mass,
    reference_distribution_mass,
    run_weight,
    series_report_from_values,
    theorem1_series,
    theorem1_term,
)


def g_n(n):
    """a -> b^n -> c with the direct a -> c edge (the q edge)."""
    labels = ["a"] + ["b"] * n + ["c"]
    edges = [(i, i + 1) for i in range(n + 1)] + [(0, n + 1)]
    return Dag.build(labels, edges)


def test_example4_weight(ex3, ex4_dag):
    assert dag_weight(ex3, ex4_dag) == pytest.approx(0.125, abs=1e-12)


@pytest.mark.parametrize("n", range(6))
def test_g_n_weight(ex3, n):
    assert dag_weight(ex3, g_n(n)) == 2.0 ** -(n + 1)


def test_fig1v_half_weights(ex1, fig1v):
    wa = ex1.reweighted([0.5] * 5)
    assert dag_weight(wa, fig1v) == 0.0078125


def test_unrecognized_weight_zero(ex3):
    assert dag_weight(ex3, Dag.build(["a", "c"], [(0, 1)])) == 0.0


def test_unweighted_rejected(ex1, fig1v):
    (r,) = accepting_runs(ex1, fig1v)
    with pytest.raises(AutomatonError):
        run_weight(ex1, fig1v, r)
    with pytest.raises(AutomatonError):
        partial_mass(ex1, "single", 5)


def test_example3_mass(ex3):
    m = partial_mass(ex3, "single", 12)
    assert m.total == pytest.approx(1 - 2.0**-11, abs=1e-12)
    assert list(m.by_size) == list(range(2, 13))


def test_all_ones_mass_counts_dags(ex1):
    m = partial_mass(ex1.reweighted([1.0] * 5), "single", 9)
    assert m.total == 10


def test_partial_sums_exact(ex3):
    # dyadic weights: every partial sum is exact in binary floating point
    m = partial_mass(ex3, "single", 20)
    running = 0.0
    for k, n in enumerate(m.by_size):
        running += m.by_size[n]
        assert running == 1 - 2.0 ** -(k + 1)


def test_mass_monotone(ex3):
    totals = [partial_mass(ex3, "single", k).total for k in range(1, 15)]
    assert totals == sorted(totals)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(0.05, 2.0), min_size=5, max_size=5))
def test_closed_form_random_weights(ex1, ws):
    # per-group mass = n! * w_a w_c w_e * (w_b w_d)^n
    wa = ex1.reweighted(ws)
    B = ws[0] * ws[2] * ws[4]
    C = ws[1] * ws[3]
    per_n = group_mass(wa, "single", 11, "b")
    for n in range(5):
        want = math.factorial(n) * B * C**n
        assert per_n[n] == pytest.approx(want, rel=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.01, 10.0))
def test_scaling_law(ex1, s):
    # scaling the start weight scales every DAG weight
    base = ex1.reweighted([0.5] * 5)
    scaled = ex1.reweighted([0.5 * s] + [0.5] * 4)
    m0 = partial_mass(base, "single", 9)
    m1 = partial_mass(scaled, "single", 9)
    assert m1.total == pytest.approx(s * m0.total, rel=1e-12)


@pytest.mark.parametrize("B,C,n", [(0.125, 0.25, 0), (0.125, 0.25, 5), (1.0, 2.0, 10), (2.0, 1.0, 20), (0.5, -0.5, 7)])
def test_theorem1_term_exact(B, C, n):
    want = math.factorial(n) * Fraction(B) * Fraction(C) ** n
    assert theorem1_term(B, C, n) == pytest.approx(float(want), rel=1e-12)


def test_theorem1_term_saturates():
    assert theorem1_term(1.0, 1.0, 200) == math.inf
    assert theorem1_term(0.0, 1.0, 200) == 0.0
    assert theorem1_term(1.0, 0.0, 3) == 0.0


def test_theorem1_partial_sums():
    exact = float(math.factorial(22) * Fraction(1, 8) * Fraction(1, 4) ** 22)
    assert theorem1_term(0.125, 0.25, 22) == pytest.approx(exact, rel=1e-12)
    assert 7.9e6 < exact < 8.0e6
    s21 = sum(theorem1_term(0.125, 0.25, n) for n in range(22))
    assert s21 > 1e6 > sum(theorem1_term(0.125, 0.25, n) for n in range(21))


@pytest.mark.parametrize("B", [0.125, 1.0, 2.0])
@pytest.mark.parametrize("C", [0.25, 1.0, 2.0])
def test_factorial_series_diverges(B, C):
    assert divergence_probe(theorem1_series(B, C), 50).verdict == "diverges"


def test_probe_log_space_beyond_double_range():
    rep = divergence_probe(theorem1_series(1.0, 1.0), 300)
    assert rep.verdict == "diverges"
    assert math.isinf(rep.terms[-1].value)
    assert rep.ratio_estimates[-1] == pytest.approx(300, rel=1e-9)


def test_probe_converges_geometric():
    rep = divergence_probe(lambda n: 0.5**n, 40)
    assert rep.verdict == "converges"
    assert rep.partial_sums[-1] == pytest.approx(2 - 0.5**40)


def test_probe_inconclusive_harmonic():
    assert divergence_probe(lambda n: 1 / (n + 1), 60).verdict == "inconclusive"


def test_probe_zero_tail():
    rep = divergence_probe(lambda n: 1.0 if n < 3 else 0.0, 20)
    assert rep.verdict == "converges"
    assert any("zero" in note for note in rep.notes)


def test_probe_needs_terms():
    with pytest.raises(ValueError):
        divergence_probe(lambda n: 1.0, 1)


def test_probe_rows_and_json():
    rep = divergence_probe(theorem1_series(0.125, 0.25), 5)
    rows = rep.rows()
    assert [r["n"] for r in rows] == list(range(6))
    assert set(rows[0]) == {"n", "c_n", "f_n", "term", "partial_sum", "ratio"}
    assert rows[-1]["ratio"] is None
    assert rep.to_json()["verdict"] == rep.verdict


def test_series_from_values():
    assert series_report_from_values({0: 1.0}).verdict == "inconclusive"
    rep = series_report_from_values({n: 2.0 ** -(n + 1) for n in range(20)})
    assert rep.verdict == "converges"


def test_reference_distribution():
    assert reference_distribution_mass(30) == pytest.approx(1 - 2.0**-31, abs=1e-12)
    assert reference_distribution_mass(0) == 0.5
    with pytest.raises(ValueError):
        reference_distribution_mass(-1)


def test_full_support_example3(ex3):
    rep = full_support_check(ex3, "single", 22, group_label="b")
    assert rep.violations == []
    assert rep.verdict == "converges"
    assert rep.group_totals[0] == 0.5


def test_full_support_flags_zero_weights(ex1):
    # B = 1, C = 0: every DAG with a b node gets weight zero
    wa = ex1.reweighted([1.0, 0.0, 1.0, 1.0, 1.0])
    rep = full_support_check(wa, "single", 9, group_label="b")
    assert len(rep.violations) == 9
    assert rep.r1_violations == []
    assert rep.verdict == "converges"


def test_full_support_flags_r1(ex1):
    wa = ex1.reweighted([1.0, 1.0, 1.0, 1.0, 1.0])
    rep = full_support_check(wa, "single", 13, group_label="b")
    assert rep.violations == []
    wa2 = ex1.reweighted([2.0, 1.0, 1.0, 1.0, 1.0])
    rep2 = full_support_check(wa2, "single", 7, group_label="b")
    assert len(rep2.r1_violations) == 4


def test_random_weights_reproducible(ex1):
    rng = random.Random(5)
    ws = [rng.uniform(0.1, 1) for _ in range(5)]
    a = partial_mass(ex1.reweighted(ws), "single", 9).total
    b = partial_mass(ex1.reweighted(ws), "single", 9).total
    assert a == b
