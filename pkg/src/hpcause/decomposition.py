"""Weak causes via chain decompositions of the endogenous causal graph.

A decomposition ``((T^0, S^0), ..., (T^k, S^k))`` cuts the graph into blocks
that communicate only through the interface sets ``S^i``.  Relations
``R^0..R^k`` of triples ``(p, q, F)`` are propagated from the event block
``T^0`` up to the cause block ``T^k``; ``p`` collects values of ``F`` that
falsify the event (AC2(a)) and ``q`` values that keep it true under every
reset of unfixed variables to their actual values (AC2(b)).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Mapping, NamedTuple, Optional

from .events import Event, as_event, compile_event, event_variables
from .graph import CausalGraph, WorkCounter, endogenous_graph
from .model import CausalModel, ModelError, NotApplicable


class Triple(NamedTuple):
    p: frozenset      # tuples of values of F (in F order)
    q: frozenset
    F: tuple          # variables, in model declaration order


@dataclass(frozen=True)
class Decomposition:
    pairs: tuple  # ((T^0, S^0), ..., (T^k, S^k)) as frozensets

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((frozenset(T), frozenset(S)) for T, S in self.pairs))

    @property
    def k(self) -> int:
        return len(self.pairs) - 1

    @property
    def width(self) -> int:
        return max((len(T) for T, _ in self.pairs), default=0)

    def variables(self) -> frozenset:
        return frozenset().union(*(T for T, _ in self.pairs)) if self.pairs else frozenset()

    def to_json(self) -> list:
        return [{"T": sorted(T), "S": sorted(S)} for T, S in self.pairs]

    @classmethod
    def from_json(cls, data) -> "Decomposition":
        if not isinstance(data, list) or not data:
            raise ValueError("decomposition must be a non-empty JSON list")
        pairs = []
        for i, item in enumerate(data):
            if not isinstance(item, dict) or set(item) != {"T", "S"}:
                raise ValueError(f"/{i}: expected an object with keys 'T' and 'S'")
            pairs.append((item["T"], item["S"]))
        return cls(tuple(pairs))


@dataclass
class DecompositionReport:
    valid: bool
    violations: list = field(default_factory=list)   # (condition, message, variables)
    width: int = 0

    def __bool__(self):
        return self.valid

    @property
    def first(self):
        return self.violations[0] if self.violations else None

    def to_dict(self):
        return {"valid": self.valid, "width": self.width,
                "violations": [{"condition": c, "message": m, "variables": sorted(v)}
                               for c, m, v in self.violations]}


def validate_decomposition(model: CausalModel, cause: Iterable[str], event,
                           dec: Decomposition, graph: Optional[CausalGraph] = None) -> DecompositionReport:
    """Check D1-D6 of ``dec`` against ``G_V(M)``; every violation is listed, D1 first."""
    event = as_event(event, model)
    for T, S in dec.pairs:
        for v in T | S:
            if not model.is_endogenous(v):
                raise ModelError(f"decomposition mentions unknown endogenous variable {v!r}")
    g = graph or endogenous_graph(model)
    xs = frozenset(cause)
    pairs = dec.pairs
    k = dec.k
    out = []

    seen = set()
    overlap = set()
    for T, _ in pairs:
        overlap |= seen & T
        seen |= T
    missing = set(model.endogenous) - seen
    if overlap or missing or any(not T for T, _ in pairs):
        out.append(("D1", "blocks do not form an ordered partition of V", overlap | missing))
    for i, (T, S) in enumerate(pairs):
        if not S <= T:
            out.append(("D2", f"S^{i} is not contained in T^{i}", S - T))
    phi_vars = event_variables(event)
    if not phi_vars <= pairs[0][0]:
        out.append(("D3", "event variables outside T^0", phi_vars - pairs[0][0]))
    if not xs <= pairs[k][1]:
        out.append(("D3", f"cause variables outside S^{k}", xs - pairs[k][1]))

    level = {}
    for i, (T, _) in enumerate(pairs):
        for v in T:
            level.setdefault(v, i)
    for i in range(k):
        lower = set().union(*(pairs[j][0] for j in range(i))) | (pairs[i][0] - pairs[i][1])
        bad = {(a, b) for a, b in g.edges
               if (a in lower and level.get(b, -1) > i) or (b in lower and level.get(a, -1) > i)}
        if bad:
            out.append(("D4", f"arrow between T^0..T^{i}\\S^{i} and T^{i + 1}..T^{k}",
                        {v for e in bad for v in e}))
    for i, (T, S) in enumerate(pairs):
        allowed = (T - S) | (pairs[i - 1][1] if i > 0 else frozenset())
        bad = {c for s in S if s in g for c in g.children(s) if c not in allowed}
        if bad:
            out.append(("D5", f"children of S^{i} outside the allowed blocks", bad))
    for i, (T, S) in enumerate(pairs):
        if i < k:
            bad = {p for s in S if s in g for p in g.parents(s) if p not in pairs[i + 1][0]}
            msg = f"parents of S^{i} outside T^{i + 1}"
        else:
            bad = {p for s in S if s in g for p in g.parents(s)}
            msg = f"S^{k} has parents"
        if bad:
            out.append(("D6", msg, bad))
    return DecompositionReport(not out, out, dec.width)


def trivial_decomposition(model: CausalModel, cause: Iterable[str], event) -> Optional[Decomposition]:
    """``((V, X))`` when no cause member lies on a path from another member to the event.

    Intended for reduced models; on any model the result is only returned
    if it actually validates.
    """
    event = as_event(event, model)
    xs = frozenset(cause)
    dec = Decomposition(((frozenset(model.endogenous), xs),))
    from .reduction import Relevance, classify_relevance
    classes = classify_relevance(model, xs, event)
    if any(classes[v] is not Relevance.I for v in xs):
        return None
    if not validate_decomposition(model, xs, event, dec):
        return None
    return dec


def _subsets(items):
    for size in range(len(items) + 1):
        yield from combinations(items, size)


class _Block:
    """Local evaluation of one block ``T^i`` given all of ``S^i`` fixed."""

    def __init__(self, model, T, S, out_vars):
        self.model = model
        self.free = [v for v in model.order if v in T and v not in S]
        self.out = list(out_vars)
        self.plan = [(v, model.mechanism(v).parents, model.mechanism(v).lookup)
                     for v in self.free]
        self.out_plan = [(v, model.mechanism(v).parents, model.mechanism(v).lookup)
                         for v in self.out]

    def run(self, u, setting):
        vals = dict(u)
        vals.update(setting)
        for v, parents, fn in self.plan:
            if v not in setting:
                vals[v] = fn(tuple([vals[p] for p in parents]))
        for v, parents, fn in self.out_plan:
            vals[v] = fn(tuple([vals[p] for p in parents]))
        return vals


def build_triple_relations(model: CausalModel, dec: Decomposition, cause: Mapping, event,
                           u: Mapping, counter: Optional[WorkCounter] = None) -> list:
    """The relations ``R^0..R^k`` (a list of sets of :class:`Triple`)."""
    event = as_event(event, model)
    phi = compile_event(event)
    actual = model.solve(u)
    k = dec.k
    Sk = dec.pairs[k][1]
    levels = []
    evals = 0
    for i, (T, S) in enumerate(dec.pairs):
        S_sorted = model.sort(S)
        inner = model.sort(T - S)
        if i == 0:
            block = _Block(model, T, S, ())
            test = phi
        else:
            prev_S = model.sort(dec.pairs[i - 1][1])
            block = _Block(model, T, S, prev_S)
        level = set()
        for F in _subsets(S_sorted):
            cut = tuple(v for v in S_sorted if v not in F)
            dom_F = list(product(*(model.domain(v) for v in F)))
            for W_rest in _subsets(inner):
                W = cut + W_rest
                Wset = set(W)
                zpool = [v for v in model.sort(T) if v not in Sk and v not in Wset]
                zhats = list(_subsets(zpool))
                for wvals in product(*(model.domain(v) for v in W)):
                    setting = dict(zip(W, wvals))
                    p_out, q_out = [], []
                    for val in dom_F:
                        s = dict(setting)
                        s.update(zip(F, val))
                        p_out.append(block.run(u, s))
                        runs = []
                        for Z in zhats:
                            s2 = dict(s)
                            for z in Z:
                                s2[z] = actual[z]
                            runs.append(block.run(u, s2))
                        q_out.append(runs)
                        evals += 1 + len(zhats)
                    if i == 0:
                        pset = frozenset(val for val, vals in zip(dom_F, p_out) if not phi(vals))
                        qset = frozenset(val for val, runs in zip(dom_F, q_out)
                                         if all(phi(r) for r in runs))
                        level.add(Triple(pset, qset, F))
                        continue
                    for prev in levels[i - 1]:
                        Fp = prev.F
                        pset = frozenset(val for val, vals in zip(dom_F, p_out)
                                         if tuple([vals[v] for v in Fp]) in prev.p)
                        qset = frozenset(val for val, runs in zip(dom_F, q_out)
                                         if all(tuple([r[v] for v in Fp]) in prev.q for r in runs))
                        level.add(Triple(pset, qset, F))
        levels.append(level)
        if counter is not None:
            counter.levels.append(len(level))
    if counter is not None:
        counter.evals += evals
    return levels


def is_weak_cause_decomposed(model: CausalModel, cause: Mapping, event, u: Mapping,
                             dec: Decomposition, counter: Optional[WorkCounter] = None,
                             check: bool = True) -> bool:
    event = as_event(event, model)
    if check:
        report = validate_decomposition(model, cause, event, dec)
        if not report:
            cond, msg, _ = report.first
            raise NotApplicable(f"invalid decomposition ({cond}: {msg})")
    actual = model.solve(u)
    if any(actual[v] != val for v, val in cause.items()) or not compile_event(event)(actual):
        return False
    levels = build_triple_relations(model, dec, cause, event, u, counter)
    xs = model.sort(cause)
    x = tuple(cause[v] for v in xs)
    return any(t.F == xs and t.p and x in t.q for t in levels[-1])


def load_decomposition(path) -> Decomposition:
    with open(path) as fh:
        return Decomposition.from_json(json.load(fh))


def save_decomposition(dec: Decomposition, path):
    with open(path, "w") as fh:
        json.dump(dec.to_json(), fh, indent=2)
