import pytest
from hypothesis import given
from hypothesis import strategies as st

from dagautomata.core import (
    AutomatonError,
    Dag,
    DagAutomaton,
    DagError,
    Multiset,
    Run,
    Transition,
    contains_sub_multiset,
    in_edges,
    out_edges,
    roots_and_leaves,
    validate,
)

from oracles import chain


def test_in_edges_fig1v_c_node(fig1v):
    (c,) = [n.id for n in fig1v.nodes if n.label == "c"]
    (e,) = in_edges(fig1v, c)
    assert fig1v.label_of[fig1v.edge_by_id[e].src] == "b"


def test_in_edges_isolated_node():
    g = Dag.build(["a"], [])
    assert in_edges(g, 0) == set()


def test_in_edges_example4_sink(ex4_dag):
    (c,) = [n.id for n in ex4_dag.nodes if n.label == "c"]
    srcs = sorted(ex4_dag.label_of[ex4_dag.edge_by_id[e].src] for e in in_edges(ex4_dag, c))
    assert srcs == ["a", "b"]
    # the b feeding c is the second b (the one fed by the other b)
    (eb,) = [e for e in in_edges(ex4_dag, c) if ex4_dag.label_of[ex4_dag.edge_by_id[e].src] == "b"]
    b2 = ex4_dag.edge_by_id[eb].src
    assert ex4_dag.label_of[ex4_dag.edge_by_id[next(iter(in_edges(ex4_dag, b2)))].src] == "b"


def test_in_edges_unknown_node(fig1v):
    with pytest.raises(DagError):
        in_edges(fig1v, 99)


def test_roots_and_leaves(fig1v):
    roots, leaves = roots_and_leaves(fig1v)
    assert [fig1v.label_of[r] for r in roots] == ["a"]
    assert [fig1v.label_of[v] for v in leaves] == ["e"]


def test_single_node_is_root_and_leaf():
    assert roots_and_leaves(Dag.build(["a"], [])) == ({0}, {0})


def test_chain_roots_and_leaves():
    g = chain("a", "c", "e")
    assert roots_and_leaves(g) == ({0}, {2})


def test_validate_fig1v(fig1v):
    assert validate(fig1v, "one") is None


def test_validate_disconnected():
    v = validate(Dag.build(["a", "b"], []), "any")
    assert v.property == "connected"


def test_validate_cycle():
    v = validate(Dag.build(["u", "v"], [(0, 1), (1, 0)]), "any")
    assert v.property == "cycle"


def test_validate_root_policy():
    g = Dag.build(["a", "a", "c"], [(0, 2), (1, 2)])
    assert validate(g, "any") is None
    assert validate(g, "one").property == "roots"


def test_dag_rejects_bad_references():
    with pytest.raises(DagError):
        Dag.build(["a"], [(0, 3)])


def test_parallel_edges_allowed():
    g = Dag.build(["a", "c"], [(0, 1), (0, 1)])
    assert validate(g) is None
    assert g.degree(0) == 2


@pytest.mark.parametrize(
    "big, small, expected",
    [(["p", "q", "q"], ["q", "q"], True), (["p"], ["p", "q"], False), (["x"], [], True), ([], [], True)],
)
def test_contains_sub_multiset(big, small, expected):
    assert contains_sub_multiset(Multiset(big), Multiset(small)) is expected


def test_multiset_never_stores_zero_counts():
    m = Multiset({"p": 0, "q": 2})
    assert m.counts == {"q": 2}
    assert len(m) == 2
    assert len(Multiset()) == 0


@given(st.lists(st.sampled_from("pqr"), max_size=8), st.randoms())
def test_multiset_order_insensitive(xs, rnd):
    ys = list(xs)
    rnd.shuffle(ys)
    assert Multiset(xs) == Multiset(ys)
    assert hash(Multiset(xs)) == hash(Multiset(ys))


@st.composite
def dags(draw, max_nodes=7):
    n = draw(st.integers(1, max_nodes))
    labels = draw(st.lists(st.sampled_from("ab"), min_size=n, max_size=n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), max_size=10)) if pairs else []
    return Dag.build(labels, edges)


@given(dags())
def test_degree_sums_equal_edge_count(g):
    assert sum(len(in_edges(g, v)) for v in g.node_ids) == len(g.edges)
    assert sum(len(out_edges(g, v)) for v in g.node_ids) == len(g.edges)


def test_automaton_rejects_unknown_state():
    with pytest.raises(AutomatonError):
        DagAutomaton({"p"}, {"a"}, (Transition([], "a", ["z"]),))


def test_automaton_rejects_unknown_label():
    with pytest.raises(AutomatonError):
        DagAutomaton({"p"}, {"a"}, (Transition([], "b", ["p"]),))


def test_automaton_rejects_duplicate_transition():
    t = Transition([], "a", ["p"])
    with pytest.raises(AutomatonError):
        DagAutomaton({"p"}, {"a"}, (t, Transition([], "a", ["p"], 0.3)))


def test_run_must_be_total(fig1v):
    with pytest.raises(AutomatonError):
        Run({0: "p"}).check_total(fig1v)
