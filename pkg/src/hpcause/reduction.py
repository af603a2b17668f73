"""Irrelevant-variable removal for weak-cause instances.

Two kinds of reduction: dropping members of the candidate cause that cannot
influence the event (no path, or every path blocked by another member), and
shrinking the model to the variables relevant for ``X = x`` and the event.
"""
from __future__ import annotations

import enum
from itertools import product
from typing import Iterable, Mapping, NamedTuple, Optional

from .events import Event, as_event, event_variables
from .graph import CausalGraph, WorkCounter, backward_reach, causal_graph, forward_reach
from .model import CausalModel, Mechanism

# F* tables larger than this are replaced by deferred evaluation.
TABLE_BUDGET = 4096


class Relevance(enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IRRELEVANT = "irrelevant"


class StripResult(NamedTuple):
    variables: tuple
    cause: dict
    dropped: tuple
    flagged: tuple  # would be dropped, but X0(u) != x(X0)


def _cause_vars(model, cause) -> tuple:
    return model.sort(list(cause))


def _strip(model, cause, u, keep):
    actual = model.solve(u)
    kept, dropped, flagged = [], [], []
    for v in _cause_vars(model, cause):
        if v in keep:
            kept.append(v)
        elif actual[v] != cause[v]:
            kept.append(v)
            flagged.append(v)
        else:
            dropped.append(v)
    return StripResult(tuple(kept), {v: cause[v] for v in kept}, tuple(dropped), tuple(flagged))


def strip_nonancestors(model: CausalModel, cause: Mapping, event, u: Mapping,
                       counter: Optional[WorkCounter] = None,
                       graph: Optional[CausalGraph] = None) -> StripResult:
    """Drop cause members with no directed path to a variable of the event.

    A member occurring in the event itself counts as having a (trivial)
    path.  Members whose actual value differs from the cause value are kept
    and reported in ``flagged``.
    """
    event = as_event(event, model)
    graph = graph or causal_graph(model)
    anc = backward_reach(graph, event_variables(event), counter)
    return _strip(model, cause, u, anc)


def unblocked_members(graph: CausalGraph, members: Iterable[str], targets: Iterable[str],
                      counter: Optional[WorkCounter] = None) -> set:
    """Members with a path to a target that avoids every other member."""
    members = frozenset(members)
    reach = backward_reach(graph, targets, counter, stop=members)
    return members & reach


def strip_blocked(model: CausalModel, cause: Mapping, event, u: Mapping,
                  counter: Optional[WorkCounter] = None,
                  graph: Optional[CausalGraph] = None) -> StripResult:
    """Drop cause members all of whose paths to the event pass another member."""
    event = as_event(event, model)
    graph = graph or causal_graph(model)
    keep = unblocked_members(graph, cause, event_variables(event), counter)
    return _strip(model, cause, u, keep)


def classify_relevance(model: CausalModel, cause: Iterable[str], event,
                       counter: Optional[WorkCounter] = None,
                       graph: Optional[CausalGraph] = None) -> dict:
    """Assign each endogenous variable its relevance class w.r.t. ``X`` and the event."""
    event = as_event(event, model)
    graph = graph or causal_graph(model)
    xs = frozenset(cause)
    phi = event_variables(event)
    to_phi = backward_reach(graph, phi, counter)
    below_x = forward_reach(graph, xs, counter, strict=True)
    on_path = {v for v in model.endogenous if v in below_x and v in to_phi}
    parents_of_path = set()
    edges = 0
    for v in on_path:
        for p in graph.parents(v):
            edges += 1
            parents_of_path.add(p)
    if counter is not None:
        counter.edges += edges
    classes = {}
    for v in model.endogenous:
        if v in on_path:
            classes[v] = Relevance.II
        elif v in xs:
            classes[v] = Relevance.I
        elif v in phi or v in parents_of_path:
            classes[v] = Relevance.III
        else:
            classes[v] = Relevance.IRRELEVANT
    return classes


def relevant_variables(classes: Mapping) -> set:
    return {v for v, c in classes.items() if c is not Relevance.IRRELEVANT}


def relevant_graph(model: CausalModel, cause: Iterable[str], event,
                   counter: Optional[WorkCounter] = None) -> CausalGraph:
    """Restriction of ``G(M)`` to the relevant variables (exogenous nodes kept)."""
    graph = causal_graph(model)
    classes = classify_relevance(model, cause, event, counter, graph)
    keep = relevant_variables(classes) | set(model.exogenous)
    return graph.restrict(keep)


def reduced_endogenous_graph(model: CausalModel, cause: Iterable[str], event,
                             counter: Optional[WorkCounter] = None,
                             classes: Optional[Mapping] = None) -> CausalGraph:
    """Endogenous graph of the reduced model, without building its mechanisms.

    Class II variables keep their parents; all other relevant variables lose
    their endogenous parents.
    """
    if classes is None:
        classes = classify_relevance(model, cause, event, counter)
    keep = [v for v in model.endogenous if classes[v] is not Relevance.IRRELEVANT]
    edges = []
    n = 0
    for v in keep:
        if classes[v] is Relevance.II:
            for p in model.parents(v):
                n += 1
                if model.is_endogenous(p):
                    edges.append((p, v))
    if counter is not None:
        counter.edges += n
    return CausalGraph(keep, edges)


def _exogenous_ancestors(model, graph, var):
    anc = backward_reach(graph, [var])
    return tuple(u for u in model.exogenous if u in anc)


def _frozen_mechanism(model, graph, var, budget):
    """``F*``: the value of ``var`` as a function of its exogenous ancestors."""
    ua = _exogenous_ancestors(model, graph, var)
    base = {u: model.domain(u)[0] for u in model.exogenous}
    size = 1
    for u in ua:
        size *= len(model.domain(u))

    def value_at(args):
        ctx = dict(base)
        ctx.update(zip(ua, args))
        return model.solve(ctx)[var]

    if size <= budget:
        return Mechanism(ua, {args: value_at(args) for args in product(*(model.domain(u) for u in ua))})
    return Mechanism(ua, func=value_at)


def reduce_model(model: CausalModel, cause, event, budget: int = TABLE_BUDGET,
                 classes: Optional[Mapping] = None) -> CausalModel:
    """The reduced model over the relevant variables.

    Class II variables keep their mechanisms; class I and III variables get
    a mechanism over their exogenous ancestors returning the value they
    take in the original model.
    """
    event = as_event(event, model)
    graph = causal_graph(model)
    if classes is None:
        classes = classify_relevance(model, cause, event, graph=graph)
    endo, mechs = {}, {}
    for v in model.endogenous:
        c = classes[v]
        if c is Relevance.IRRELEVANT:
            continue
        endo[v] = model.domain(v)
        if c is Relevance.II:
            mechs[v] = model.mechanism(v)
        else:
            mechs[v] = _frozen_mechanism(model, graph, v, budget)
    exo = {u: model.domain(u) for u in model.exogenous}
    return CausalModel(exo, endo, mechs)


def classification_report(classes: Mapping) -> dict:
    return {v: c.value for v, c in classes.items()}
