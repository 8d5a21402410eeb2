import pytest
from hypothesis import given, settings, strategies as st

from dagautomata.analysis import are_isomorphic, is_planar
from dagautomata.core import AutomatonError
from dagautomata.planar import (
    PlanarAutomaton,
    PlanarConfiguration,
    PlanarError,
    PlanarTransition,
    apply_planar,
    enumerate_planar,
    enumerate_planar_derivations,
    planar_applicable,
    planar_partial_mass,
    planar_recognizes,
)

from oracles import chain


def test_apply_sequence(ex6):
    a, b, c, d, e = ex6.transitions
    cfg = apply_planar(PlanarConfiguration(), a)
    cfg = apply_planar(cfg, b, 0)
    assert cfg.frontier_states == ("p", "q")
    cfg = apply_planar(cfg, b, 0)
    assert cfg.frontier_states == ("p", "q", "q")
    cfg = apply_planar(cfg, c, 0)
    cfg = apply_planar(cfg, d, 0)
    assert cfg.frontier_states == ("p'", "q")
    # d consumed the q emitted by the second b (node 2)
    assert cfg.edges[4][:2] == (2, 4)


def test_apply_errors(ex6):
    a, b, c, d, e = ex6.transitions
    with pytest.raises(PlanarError):
        apply_planar(PlanarConfiguration(), a, 1)
    cfg = apply_planar(PlanarConfiguration(), a)
    with pytest.raises(PlanarError):
        apply_planar(cfg, a)
    with pytest.raises(PlanarError):
        apply_planar(cfg, d, 0)
    with pytest.raises(PlanarError):
        apply_planar(cfg, b, 1)
    cfg = apply_planar(apply_planar(cfg, b, 0), c, 0)
    # (q, p') is not the block (p', q)
    with pytest.raises(PlanarError):
        apply_planar(cfg, d, 1)


def test_to_dag_requires_complete(ex6):
    cfg = apply_planar(PlanarConfiguration(), ex6.transitions[0])
    with pytest.raises(PlanarError):
        cfg.to_dag()


def test_one_dag_per_n(ex6):
    dags = enumerate_planar(ex6, 13)
    assert sorted(sum(v.label == "b" for v in g.nodes) for g in dags) == list(range(6))


def test_n2_is_fig1v(ex6, fig1v, fig1vii):
    (g2,) = [g for g in enumerate_planar(ex6, 7) if len(g.nodes) == 7]
    assert are_isomorphic(g2, fig1v)
    assert not are_isomorphic(g2, fig1vii)


def test_recognition(ex6, fig1v, fig1vii):
    assert planar_recognizes(ex6, fig1v)
    assert not planar_recognizes(ex6, fig1vii)
    assert planar_recognizes(ex6, chain("a", "c", "e"))
    assert not planar_recognizes(ex6, chain("a", "b", "e"))
    with pytest.raises(PlanarError):
        planar_recognizes(ex6, fig1v, max_nodes=3)


def test_outputs_planar(ex6):
    assert all(is_planar(g) for g in enumerate_planar(ex6, 17))


@pytest.mark.parametrize("max_nodes,want", [(3, 0.5), (23, 1 - 2.0**-11)])
def test_mass(ex6, max_nodes, want):
    assert planar_partial_mass(ex6, max_nodes).total == pytest.approx(want, abs=1e-12)


def test_all_ones_mass(ex6):
    assert planar_partial_mass(ex6.reweighted([1.0] * 5), 11).total == 5


def test_unweighted_mass_rejected(ex6):
    bare = ex6.reweighted([None] * 5)
    with pytest.raises(AutomatonError):
        planar_partial_mass(bare, 5)


def test_budget(ex6):
    with pytest.raises(PlanarError):
        enumerate_planar(ex6, 0)


def test_ambiguous_derivations_add_up():
    # two derivation orders of independent steps count once; two distinct
    # transitions giving the same graph count twice
    pa = PlanarAutomaton(
        ("p", "q"),
        ("a", "b"),
        (
            PlanarTransition((), "a", ("p", "p"), 0.5),
            PlanarTransition(("p",), "b", (), 0.25),
            PlanarTransition(("p", "p"), "b", ("q",), 1.0),
            PlanarTransition(("q",), "a", (), 1.0),
        ),
    )
    m = planar_partial_mass(pa, 3)
    assert len(m.by_dag) == 2
    assert m.total == pytest.approx(0.5 * 0.25 * 0.25 + 0.5)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 10), min_size=1, max_size=15))
def test_frontier_length_invariant(ex6, choices):
    cfg = PlanarConfiguration()
    for c in choices:
        opts = list(planar_applicable(ex6, cfg))
        if not opts:
            break
        i, pos = opts[c % len(opts)]
        t = ex6.transitions[i]
        nxt = apply_planar(cfg, t, pos, i)
        assert len(nxt.frontier) == len(cfg.frontier) - len(t.lhs) + len(t.rhs)
        assert nxt.frontier_states[pos : pos + len(t.rhs)] == t.rhs
        cfg = nxt


def test_derivations_are_complete(ex6):
    for cfg in enumerate_planar_derivations(ex6, 11):
        assert cfg.complete
