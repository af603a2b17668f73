"""Algorithm selection for weak- and actual-cause queries.

``auto`` runs: AC1 check, cause stripping, model reduction, then the first
applicable of tree, layered, trivial decomposition, and finally brute force
on the reduced model.  All routes give the same decision; they differ in
cost.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .decomposition import (Decomposition, build_triple_relations, trivial_decomposition,
                            validate_decomposition)
from .events import Prim, as_event, compile_event
from .graph import causal_graph
from .layered import build_layered_relations, detect_layered
from .model import CausalModel, NotApplicable
from .oracle import DEFAULT_CAP, Witness, check_query, weak_cause_bruteforce
from .reduction import classify_relevance, reduce_model, strip_blocked, strip_nonancestors
from .tree import build_tree_relations, detect_tree

ALGORITHMS = ("auto", "brute", "tree", "layered", "decomp")


@dataclass
class Decision:
    decision: bool
    algorithm: str
    reduction: dict = field(default_factory=dict)
    witness: Optional[Witness] = None
    trace: Optional[dict] = None
    seconds: float = 0.0

    def __bool__(self):
        return self.decision

    def to_dict(self) -> dict:
        out = {"decision": self.decision, "algorithm": self.algorithm,
               "reduction": self.reduction, "seconds": round(self.seconds, 6)}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        if self.trace is not None:
            out["trace"] = self.trace
        return out


def _triples_json(levels):
    return [[{"F": list(t.F), "p": sorted(list(v) for v in t.p), "q": sorted(list(v) for v in t.q)}
             for t in sorted(level, key=lambda t: (len(t.F), t.F, sorted(t.p), sorted(t.q)))]
            for level in levels]


def _primitive(event):
    return event if isinstance(event, Prim) else None


def _ac1(model, cause, phi, actual):
    return all(actual[v] == val for v, val in cause.items()) and phi(actual)


def _run_tree(model, X, x, Y, y, u, in_degree_bound, trace):
    tp = detect_tree(model, X, Y, in_degree_bound)
    if tp is None or not tp.bounded:
        return None
    rel = build_tree_relations(model, tp, u, y)
    decision = any(p and x not in p for p in rel.levels[-1])
    tr = {"path": tp.to_dict(), "levels": rel.to_dict(model, tp)} if trace else None
    return decision, tr


def _run_layered(model, cause, Y, y, u, width_bound, trace):
    layering = detect_layered(model, cause, Y)
    if layering is None or (width_bound is not None and layering.width > width_bound):
        return None
    reduced = reduce_model(model, cause, Prim(Y, y))
    levels = build_layered_relations(reduced, layering, cause, Y, y, u)
    xs = model.sort(cause)
    x = tuple(cause[v] for v in xs)
    decision = any(t.F == xs and t.p and x in t.q for t in levels[-1])
    tr = {"layering": layering.to_dict(), "levels": _triples_json(levels)} if trace else None
    return decision, tr


def _run_decomp(model, cause, event, u, dec, trace):
    levels = build_triple_relations(model, dec, cause, event, u)
    xs = model.sort(cause)
    x = tuple(cause[v] for v in xs)
    decision = any(t.F == xs and t.p and x in t.q for t in levels[-1])
    tr = {"decomposition": dec.to_json(), "levels": _triples_json(levels)} if trace else None
    return decision, tr


def _pick_decomposition_model(model, cause, event, dec):
    names = dec.variables()
    if names == frozenset(model.endogenous):
        return model
    reduced = reduce_model(model, cause, event)
    if names == frozenset(reduced.endogenous):
        return reduced
    raise NotApplicable("decomposition partitions neither V nor the relevant variables")


def decide_weak_cause(model: CausalModel, cause: Mapping, event, u: Mapping,
                      algorithm: str = "auto", decomposition: Optional[Decomposition] = None,
                      fallback: bool = True, cap: int = DEFAULT_CAP, trace: bool = False,
                      witness: bool = False, in_degree_bound: Optional[int] = None,
                      width_bound: Optional[int] = None, domain_bound: Optional[int] = None) -> Decision:
    """Decide whether ``cause`` is a weak cause of ``event`` under context ``u``."""
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if algorithm == "decomp" and decomposition is None:
        raise ValueError("algorithm 'decomp' requires a decomposition")
    start = time.perf_counter()
    event = as_event(event, model)
    check_query(model, cause, u)
    cause = {v: cause[v] for v in model.sort(cause)}
    phi = compile_event(event)
    actual = model.solve(u)
    prim = _primitive(event)
    reduction = {}

    def done(decision, used, tr=None, wit=None):
        if witness and decision and wit is None:
            wit = weak_cause_bruteforce(model, cause, event, u, cap=cap)[1]
        return Decision(decision, used, reduction, wit, tr, time.perf_counter() - start)

    def brute(m, c):
        d, wit = weak_cause_bruteforce(m, c, event, u, cap=cap)
        return done(d, "brute", None, wit if m is model and c == cause else None)

    def not_applicable(msg):
        if not fallback:
            raise NotApplicable(msg)
        return brute(model, cause)

    if algorithm == "brute":
        return brute(model, cause)

    if domain_bound is not None and algorithm != "auto":
        relevant = reduce_model(model, cause, event)
        if max(len(relevant.domain(v)) for v in relevant.endogenous) > domain_bound:
            return not_applicable(f"a relevant variable has more than {domain_bound} values")

    if algorithm == "tree":
        if prim is None or len(cause) != 1:
            return not_applicable("tree algorithm needs a single cause variable and a primitive event")
        (X, x), = cause.items()
        res = _run_tree(model, X, x, prim.var, prim.value, u, in_degree_bound, trace)
        if res is None:
            return not_applicable(f"reduced graph is not a (bounded) tree rooted at {prim.var}")
        if not _ac1(model, cause, phi, actual):
            return done(False, "tree", res[1])
        return done(res[0], "tree", res[1])

    if algorithm == "layered":
        if prim is None:
            return not_applicable("layered algorithm needs a primitive event Y=y")
        res = _run_layered(model, cause, prim.var, prim.value, u, width_bound, trace)
        if res is None:
            return not_applicable("reduced graph is not layered (or exceeds the width bound)")
        if not _ac1(model, cause, phi, actual):
            return done(False, "layered", res[1])
        return done(res[0], "layered", res[1])

    if algorithm == "decomp":
        try:
            target = _pick_decomposition_model(model, cause, event, decomposition)
        except NotApplicable as exc:
            return not_applicable(str(exc))
        report = validate_decomposition(target, cause, event, decomposition)
        if not report:
            cond, msg, _ = report.first
            return not_applicable(f"invalid decomposition ({cond}: {msg})")
        if width_bound is not None and report.width > width_bound:
            return not_applicable("decomposition exceeds the width bound")
        reduction["decomposition_on"] = "model" if target is model else "reduced"
        if not _ac1(model, cause, phi, actual):
            return done(False, "decomp")
        d, tr = _run_decomp(target, cause, event, u, decomposition, trace)
        return done(d, "decomp", tr)

    # auto
    if not _ac1(model, cause, phi, actual):
        reduction["ac1"] = False
        return done(False, "ac1")
    graph = causal_graph(model)
    s1 = strip_nonancestors(model, cause, event, u, graph=graph)
    s2 = strip_blocked(model, s1.cause, event, u, graph=graph)
    kept = s2.cause
    reduction["stripped"] = list(s1.dropped) + list(s2.dropped)
    if not kept:
        return done(False, "reduction")
    classes = classify_relevance(model, kept, event, graph=graph)
    reduced = reduce_model(model, kept, event, classes=classes)
    reduction["relevant"] = list(reduced.endogenous)
    reduction["removed"] = [v for v in model.endogenous if v not in set(reduced.endogenous)]
    if domain_bound is not None and max(len(reduced.domain(v)) for v in reduced.endogenous) > domain_bound:
        d, wit = weak_cause_bruteforce(reduced, kept, event, u, cap=cap)
        return done(d, "brute")
    if prim is not None and len(kept) == 1:
        (X, x), = kept.items()
        res = _run_tree(model, X, x, prim.var, prim.value, u, in_degree_bound, trace)
        if res is not None:
            return done(res[0], "tree", res[1])
    if prim is not None:
        res = _run_layered(model, kept, prim.var, prim.value, u, width_bound, trace)
        if res is not None:
            return done(res[0], "layered", res[1])
    dec = trivial_decomposition(reduced, kept, event)
    if dec is not None and (len(reduced.endogenous) - len(kept)) <= cap:
        d, tr = _run_decomp(reduced, kept, event, u, dec, trace)
        return done(d, "decomp", tr)
    d, wit = weak_cause_bruteforce(reduced, kept, event, u, cap=cap)
    return done(d, "brute")


def decide_actual_cause(model: CausalModel, cause: Mapping, event, u: Mapping, **kwargs) -> Decision:
    """Actual cause = weak cause with a single variable."""
    check_query(model, cause, u)
    if len(cause) != 1:
        return Decision(False, "ac3", {"reason": "cause is not a singleton"})
    return decide_weak_cause(model, cause, event, u, **kwargs)


def weak_cause(model, cause, event, u, algorithm="auto", **kwargs) -> bool:
    return decide_weak_cause(model, cause, event, u, algorithm=algorithm, **kwargs).decision
