import pytest

from hpcause.decomposition import Decomposition, build_triple_relations
from hpcause.generate import GeneratorConfig, generate_instance, layered_chain
from hpcause.layered import (Layering, build_layered_relations, check_layering, detect_layered,
                             is_weak_cause_layered, natural_decomposition)
from hpcause.model import NotApplicable
from hpcause.oracle import is_actual_cause, weak_cause_bruteforce
from hpcause.reduction import reduce_model, reduced_endogenous_graph

from _models import diamond, skip


def test_detect_arson(arson):
    lay = detect_layered(arson, ["A1", "A2"], "B")
    assert lay.layers == (("B",), ("A1", "A2"))
    assert lay.width == 2 and lay.k == 1


def test_detect_diamond():
    assert detect_layered(diamond(), ["X"], "Y").layers == (("Y",), ("A", "B"), ("X",))


def test_skip_edge_not_layered():
    assert detect_layered(skip(), ["X"], "Y") is None


def test_natural_decomposition(arson):
    lay = detect_layered(arson, ["A1", "A2"], "B")
    dec = natural_decomposition(lay)
    assert dec == Decomposition([({"B"}, {"B"}), ({"A1", "A2"}, {"A1", "A2"})])
    assert dec.k == 1


def test_arson_decisions(arson, u11, u01):
    assert is_weak_cause_layered(arson, {"A1": "1"}, "B", "1", u11)
    assert is_weak_cause_layered(arson, {"A1": "1", "A2": "1"}, "B", "1", u11)
    assert not is_actual_cause(arson, {"A1": "1", "A2": "1"}, "B=1", u11)
    assert not is_weak_cause_layered(arson, {"A1": "1"}, "B", "1", u01)


def test_not_applicable():
    with pytest.raises(NotApplicable):
        is_weak_cause_layered(skip(), {"X": "1"}, "Y", "1", {"U_X": "1"})


def test_check_layering(arson):
    g = reduced_endogenous_graph(arson, ["A1"], "B=1")
    assert check_layering(g, (("B",), ("A1", "A2")), ["A1"], "B")
    assert not check_layering(g, (("B",), ("A1",)), ["A1"], "B")


@pytest.mark.parametrize("seed", range(25))
def test_generated_layered_match(seed):
    inst = generate_instance(GeneratorConfig(shape="layered", layer_width=2, n_layers=2, max_domain=3,
                                             seed=seed))
    m = inst.model
    X = inst.cause
    lay = detect_layered(m, X, "Y")
    assert lay is not None
    for u in list(m.contexts())[:4]:
        s = m.solve(u)
        cause = {v: s[v] for v in X}
        for y in m.domain("Y"):
            expect = weak_cause_bruteforce(m, cause, f"Y={y}", u)[0]
            assert is_weak_cause_layered(m, cause, "Y", y, u, lay) == expect
            red = reduce_model(m, X, f"Y={y}")
            a = build_layered_relations(red, lay, cause, "Y", y, u)
            b = build_triple_relations(red, natural_decomposition(lay), cause, f"Y={y}", u)
            xs, x = tuple(X), tuple(cause[v] for v in X)
            decide = lambda levels: s["Y"] == y and any(t.F == xs and t.p and x in t.q for t in levels[-1])
            assert decide(a) == decide(b) == expect


def test_layered_chain_shape():
    inst = layered_chain(5)
    lay = detect_layered(inst.model, inst.cause, "Y")
    assert lay.k == 5 and lay.width == 2
    assert isinstance(lay, Layering)
