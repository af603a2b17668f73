from hpcause.events import Prim, parse_event
from hpcause.graph import WorkCounter
from hpcause.oracle import weak_cause_bruteforce
from hpcause.reduction import (Relevance, classify_relevance, reduce_model, relevant_graph, strip_blocked,
                               strip_nonancestors)

from _models import build, chain3, ones


def test_strip_nonancestor(arson, u11):
    r = strip_nonancestors(arson, {"A1": "1", "A2": "1"}, "A1=1", u11)
    assert r.variables == ("A1",)
    assert r.dropped == ("A2",)
    assert r.flagged == ()


def test_strip_nonancestor_flags_mismatch(arson, u10):
    # A2(u) = 0 differs from the cause value 1, so it cannot be dropped
    r = strip_nonancestors(arson, {"A1": "1", "A2": "1"}, "A1=1", u10)
    assert r.variables == ("A1", "A2")
    assert r.flagged == ("A2",)


def test_strip_keeps_ancestors(arson, u11):
    r = strip_nonancestors(arson, {"A1": "1", "A2": "1"}, "B=1", u11)
    assert r.variables == ("A1", "A2")


def test_strip_to_empty():
    m = build({"X": [], "Y": []})
    r = strip_nonancestors(m, {"X": "1"}, "Y=1", ones(m))
    assert r.variables == () and r.cause == {}


def test_strip_blocked_chain():
    m = chain3()
    r = strip_blocked(m, {"X1": "1", "X2": "1"}, "Y=1", ones(m))
    assert r.variables == ("X2",)
    assert r.dropped == ("X1",)


def test_strip_blocked_arson(arson, u11):
    assert strip_blocked(arson, {"A1": "1", "A2": "1"}, "B=1", u11).variables == ("A1", "A2")
    assert strip_blocked(arson, {"A1": "1"}, "B=1", u11).variables == ("A1",)


def test_classify_arson(arson):
    c = classify_relevance(arson, ["A1"], "B=1")
    assert c == {"A1": Relevance.I, "B": Relevance.II, "A2": Relevance.III}


def test_classify_empty_cause(arson):
    c = classify_relevance(arson, [], "B=1")
    assert c["B"] is Relevance.III
    assert Relevance.I not in c.values() and Relevance.II not in c.values()


def test_classify_irrelevant():
    m = build({"X": [], "Y": ["X"], "Z": []})
    c = classify_relevance(m, ["X"], "Y=1")
    assert c["Z"] is Relevance.IRRELEVANT


def test_reduce_arson(arson):
    r = reduce_model(arson, ["A1"], "B=1")
    assert set(r.endogenous) == {"A1", "A2", "B"}
    assert r.parents("A1") == ("U1",) and r.parents("A2") == ("U2",)
    assert r.mechanism("B").table == arson.mechanism("B").table
    for u in arson.contexts():
        assert r.evaluate(u) == arson.evaluate(u)


def test_reduce_collapses_ancestors():
    # U -> A -> X -> Y: A is irrelevant, X gets F* over U
    m = build({"A": [], "X": ["A"], "Y": ["X"]}, {"X": {("0",): "1", ("1",): "0"}})
    r = reduce_model(m, ["X"], "Y=1")
    assert set(r.endogenous) == {"X", "Y"}
    assert r.parents("X") == ("U_A",)
    for u in m.contexts():
        assert r.evaluate(u)["X"] == m.evaluate(u)["X"]


def test_reduce_nothing_irrelevant():
    m = chain3()
    r = reduce_model(m, ["X1", "X2", "Y"], parse_event("Y=1 & X1=1"))
    assert r.endogenous == m.endogenous


def test_relevant_graph_arson(arson):
    g = relevant_graph(arson, ["A1"], "B=1")
    assert set(g.nodes) == {"A1", "A2", "B", "U1", "U2"}
    assert g.edges == {("U1", "A1"), ("U2", "A2"), ("A1", "B"), ("A2", "B")}


def test_reduction_keeps_decisions(arson):
    for u in arson.contexts():
        for x in "01":
            cause = {"A1": x}
            r = reduce_model(arson, ["A1"], Prim("B", "1"))
            assert weak_cause_bruteforce(r, cause, "B=1", u)[0] == weak_cause_bruteforce(arson, cause, "B=1", u)[0]


def test_counters_count_edges(arson, u11):
    c = WorkCounter()
    strip_nonancestors(arson, {"A1": "1"}, "B=1", u11, counter=c)
    assert c.edges > 0
