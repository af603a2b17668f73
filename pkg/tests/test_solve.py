import pytest

from hpcause.decomposition import Decomposition
from hpcause.generate import GeneratorConfig, generate_instance, layered_chain
from hpcause.model import NotApplicable
from hpcause.oracle import OracleCapExceeded, verify_witness, weak_cause_bruteforce
from hpcause.solve import decide_actual_cause, decide_weak_cause, weak_cause

from _models import build, chain3, diamond, ones, skip


def test_auto_picks_tree(arson, u11):
    d = decide_weak_cause(arson, {"A1": "1"}, "B=1", u11)
    assert d.decision and d.algorithm == "tree"
    assert d.to_dict()["decision"] is True


def test_brute_has_witness(arson, u11):
    d = decide_weak_cause(arson, {"A1": "1"}, "B=1", u11, algorithm="brute")
    assert d.decision and d.algorithm == "brute"
    assert verify_witness(arson, {"A1": "1"}, "B=1", u11, d.witness)


def test_witness_attached_for_fast_algorithms(arson, u11):
    d = decide_weak_cause(arson, {"A1": "1"}, "B=1", u11, witness=True)
    assert d.algorithm == "tree" and d.witness is not None


def test_ac1_short_circuit(arson, u10):
    d = decide_weak_cause(arson, {"A2": "1"}, "B=1", u10)
    assert not d.decision and d.algorithm == "ac1"


def test_auto_layered_for_conjunction(arson, u11):
    d = decide_weak_cause(arson, {"A1": "1", "A2": "1"}, "B=1", u11)
    assert d.decision and d.algorithm == "layered"


def test_tree_not_applicable_falls_back():
    m = diamond()
    u = ones(m)
    d = decide_weak_cause(m, {"X": "1"}, "Y=1", u, algorithm="tree")
    assert d.algorithm == "brute"
    with pytest.raises(NotApplicable):
        decide_weak_cause(m, {"X": "1"}, "Y=1", u, algorithm="tree", fallback=False)


def test_layered_not_applicable_on_skip_edge():
    m = skip()
    with pytest.raises(NotApplicable):
        decide_weak_cause(m, {"X": "1"}, "Y=1", ones(m), algorithm="layered", fallback=False)


def test_decomp_requires_decomposition(arson, u11):
    with pytest.raises(ValueError):
        decide_weak_cause(arson, {"A1": "1"}, "B=1", u11, algorithm="decomp")


def test_decomp_on_full_and_reduced_variables(arson, u11):
    dec = Decomposition([({"B"}, {"B"}), ({"A1", "A2"}, {"A1", "A2"})])
    d = decide_weak_cause(arson, {"A1": "1"}, "B=1", u11, algorithm="decomp", decomposition=dec)
    assert d.decision and d.algorithm == "decomp"
    bad = Decomposition([({"B"}, {"B"}), ({"A1"}, {"A1"})])
    with pytest.raises(NotApplicable):
        decide_weak_cause(arson, {"A1": "1"}, "B=1", u11, algorithm="decomp", decomposition=bad,
                          fallback=False)


def test_width_and_domain_bounds(arson, u11):
    with pytest.raises(NotApplicable):
        decide_weak_cause(arson, {"A1": "1", "A2": "1"}, "B=1", u11, algorithm="layered",
                          width_bound=1, fallback=False)
    with pytest.raises(NotApplicable):
        decide_weak_cause(arson, {"A1": "1"}, "B=1", u11, algorithm="tree", domain_bound=1,
                          fallback=False)


def test_cap_exceeded():
    inst = layered_chain(8)
    m = inst.model
    u = {v: "1" for v in m.exogenous}
    s = m.solve(u)
    with pytest.raises(OracleCapExceeded):
        decide_weak_cause(m, {inst.cause[0]: s[inst.cause[0]]}, f"Y={s['Y']}", u, algorithm="brute", cap=3)


def test_stripped_to_nothing():
    m = build({"X": [], "Y": []})
    d = decide_weak_cause(m, {"X": "1"}, "Y=1", ones(m))
    assert not d.decision and d.algorithm == "reduction"


def test_blocked_member_stripped():
    m = chain3()
    u = ones(m)
    # X1 is blocked by X2 on every path, X2 is not part of the cause
    d = decide_weak_cause(m, {"X1": "1", "X2": "1"}, "Y=1", u)
    assert d.reduction["stripped"] == ["X1"]
    assert d.decision == weak_cause_bruteforce(m, {"X1": "1", "X2": "1"}, "Y=1", u)[0]


def test_actual_cause(arson, u11):
    assert decide_actual_cause(arson, {"A1": "1"}, "B=1", u11).decision
    d = decide_actual_cause(arson, {"A1": "1", "A2": "1"}, "B=1", u11)
    assert not d.decision and d.algorithm == "ac3"


@pytest.mark.parametrize("shape", ["chain", "tree", "layered", "random-dag"])
@pytest.mark.parametrize("algorithm", ["auto", "tree", "layered"])
def test_backends_agree(shape, algorithm):
    for seed in range(8):
        inst = generate_instance(GeneratorConfig(shape=shape, n_vars=5, max_domain=3, seed=seed))
        m = inst.model
        for u in list(m.contexts())[:3]:
            s = m.solve(u)
            cause = {v: s[v] for v in inst.cause}
            for y in m.domain(inst.effect):
                expect = weak_cause_bruteforce(m, cause, f"{inst.effect}={y}", u)[0]
                assert weak_cause(m, cause, f"{inst.effect}={y}", u, algorithm=algorithm) == expect
