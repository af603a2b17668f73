import pytest

from hpcause.graph import causal_graph, endogenous_graph
from hpcause.model import CausalModel, Mechanism, ModelError, merge, table_mechanism
from hpcause.zoo import BIN


def test_evaluate_arson(arson, u11, u00):
    assert arson.evaluate(u11) == {"A1": "1", "A2": "1", "B": "1"}
    assert arson.evaluate(u00) == {"A1": "0", "A2": "0", "B": "0"}


def test_evaluate_without_endogenous():
    m = CausalModel({"U": BIN}, {}, {})
    assert m.evaluate({"U": "1"}) == {}
    g = endogenous_graph(m)
    assert not g.nodes and not g.edges


def test_submodel_constant(arson, u11):
    sub = arson.submodel({"A1": "0"})
    assert sub.mechanism("A1").parents == ()
    assert sub.evaluate(u11)["A1"] == "0"
    assert sub.evaluate(u11)["B"] == "1"


def test_submodel_empty_intervention(arson):
    sub = arson.submodel({})
    for u in arson.contexts():
        assert sub.evaluate(u) == arson.evaluate(u)


def test_eval_intervened(arson, u11, u10):
    assert arson.eval_intervened({"A1": "0"}, u11, ["B"]) == {"B": "1"}
    assert arson.eval_intervened({"B": "0"}, u11, ["B"]) == {"B": "0"}
    assert arson.eval_intervened({}, u10, ["A2"]) == {"A2": "0"}


def test_intervention_overrides_every_context(arson):
    for u in arson.contexts():
        assert arson.eval_intervened({"A1": "0", "A2": "0"}, u, ["B"]) == {"B": "0"}


def test_merge_overrides():
    assert merge({"A1": "0"}, {"A2": "1"}) == {"A1": "0", "A2": "1"}
    assert merge({"A1": "0", "A2": "0"}, {"A2": "1"}) == {"A1": "0", "A2": "1"}


def test_causal_graph(arson):
    g = causal_graph(arson)
    assert g.edges == {("U1", "A1"), ("U2", "A2"), ("A1", "B"), ("A2", "B")}
    assert endogenous_graph(arson).edges == {("A1", "B"), ("A2", "B")}


def test_cycle_rejected():
    mechs = {"A": Mechanism(("B",), {("0",): "0", ("1",): "1"}),
             "B": Mechanism(("A",), {("0",): "0", ("1",): "1"})}
    with pytest.raises(ModelError, match="not recursive"):
        CausalModel({}, {"A": BIN, "B": BIN}, mechs)


def test_missing_table_row():
    with pytest.raises(ModelError, match="misses parent combination"):
        CausalModel({"U": BIN}, {"A": BIN}, {"A": Mechanism(("U",), {("0",): "0"})})


def test_output_outside_domain():
    with pytest.raises(ModelError, match="outside its domain"):
        CausalModel({"U": BIN}, {"A": BIN}, {"A": Mechanism(("U",), {("0",): "0", ("1",): "2"})})


def test_unknown_parent():
    with pytest.raises(ModelError, match="unknown parent"):
        CausalModel({}, {"A": BIN}, {"A": Mechanism(("Z",), {("0",): "0", ("1",): "1"})})


def test_bad_context_and_intervention(arson):
    with pytest.raises(ModelError):
        arson.evaluate({"U1": "1"})
    with pytest.raises(ModelError):
        arson.evaluate({"U1": "1", "U2": "2"})
    with pytest.raises(ModelError):
        arson.submodel({"U1": "0"})
    with pytest.raises(ModelError):
        arson.submodel({"A1": "7"})


def test_table_mechanism_stringifies():
    mech = table_mechanism({"a": BIN, "b": BIN}, ("a", "b"), lambda a, b: int(a == b))
    assert mech(("1", "1")) == "1"
    assert mech(("0", "1")) == "0"


def test_order_is_topological(arson):
    order = arson.order
    assert order.index("B") > order.index("A1")
    assert order.index("B") > order.index("A2")
