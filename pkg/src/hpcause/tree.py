"""Weak causes in causal trees.

Applies when ``X`` and ``Y`` are single variables and the endogenous graph of
the reduced model is a directed tree with root ``Y``.  Along the unique path
``X = P^k -> ... -> P^0 = Y`` we propagate, level by level, the sets of
values of ``P^i`` that drive ``Y`` away from ``y``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Optional

from .events import Prim
from .graph import WorkCounter
from .model import CausalModel, NotApplicable
from .reduction import classify_relevance, reduced_endogenous_graph


@dataclass(frozen=True)
class TreePath:
    """``path[i]`` is ``P^i`` (so ``path[0]`` is ``Y`` and ``path[-1]`` is ``X``);
    ``siblings[i]`` is ``W^i`` for ``i >= 1`` (``siblings[0]`` is empty)."""

    path: tuple
    siblings: tuple
    max_in_degree: int
    bounded: bool = True

    @property
    def k(self) -> int:
        return len(self.path) - 1

    def to_dict(self):
        return {"path": list(reversed(self.path)),
                "siblings": {self.path[i - 1]: list(self.siblings[i]) for i in range(1, len(self.path))},
                "max_in_degree": self.max_in_degree, "bounded": self.bounded}


@dataclass
class TreeRelation:
    levels: list                       # R^0..R^k, each a set of frozensets of values
    actuals: tuple                     # p-hat^i = P^i(u)
    generators: Optional[list] = None  # per level: {p: [(w, p'), ...]} in debug mode

    def to_dict(self, model: CausalModel, tp: TreePath):
        out = []
        for i, level in enumerate(self.levels):
            dom = model.domain(tp.path[i])
            out.append([[v for v in dom if v in p] for p in _sorted_sets(level, dom)])
        return out


def _sorted_sets(level, dom):
    key = {v: j for j, v in enumerate(dom)}
    return sorted(level, key=lambda p: (len(p), sorted(key[v] for v in p)))


def detect_tree(model: CausalModel, X: str, Y: str, in_degree_bound: Optional[int] = None,
                counter: Optional[WorkCounter] = None) -> Optional[TreePath]:
    """Find the ``X -> Y`` path if the reduced endogenous graph is a tree rooted at ``Y``."""
    if X == Y or not model.is_endogenous(X) or not model.is_endogenous(Y):
        return None
    event = Prim(Y, model.domain(Y)[0])
    classes = classify_relevance(model, [X], event, counter)
    g = reduced_endogenous_graph(model, [X], event, counter, classes)
    if X not in g or Y not in g:
        return None
    if g.children(Y):
        return None
    n = 0
    max_in = 0
    for v in g.nodes:
        n += len(g.children(v))
        max_in = max(max_in, len(g.parents(v)))
        if v != Y and len(g.children(v)) != 1:
            if counter is not None:
                counter.edges += n
            return None
    if counter is not None:
        counter.edges += n
    path = [X]
    while path[-1] != Y:
        path.append(g.children(path[-1])[0])
    path.reverse()
    siblings = [()]
    for i in range(1, len(path)):
        siblings.append(tuple(p for p in g.parents(path[i - 1]) if p != path[i]))
    bounded = in_degree_bound is None or max_in <= in_degree_bound
    return TreePath(tuple(path), tuple(siblings), max_in, bounded)


def _child_value(model, child, setting, u):
    mech = model.mechanism(child)
    return mech(tuple([setting[p] if p in setting else u[p] for p in mech.parents]))


def build_tree_relations(model: CausalModel, tp: TreePath, u: Mapping, y: str,
                         counter: Optional[WorkCounter] = None, debug: bool = False) -> TreeRelation:
    actual = model.solve(u)
    actuals = tuple(actual[p] for p in tp.path)
    Y = tp.path[0]
    levels = [{frozenset(v for v in model.domain(Y) if v != y)}]
    gens = [{}] if debug else None
    evals = 0
    for i in range(1, tp.k + 1):
        node, child = tp.path[i], tp.path[i - 1]
        W = tp.siblings[i]
        dom = model.domain(node)
        level = {}
        for wvals in product(*(model.domain(v) for v in W)):
            setting = dict(zip(W, wvals))
            setting[node] = actuals[i]
            at_actual = _child_value(model, child, setting, u)
            images = {}
            for p in dom:
                setting[node] = p
                images[p] = _child_value(model, child, setting, u)
            evals += 1 + len(dom)
            for prev in levels[i - 1]:
                if at_actual in prev:
                    continue
                pset = frozenset(p for p in dom if images[p] in prev)
                level.setdefault(pset, []).append((dict(zip(W, wvals)), prev))
        levels.append(set(level))
        if debug:
            gens.append(level)
        if counter is not None:
            counter.levels.append(evals)
    if counter is not None:
        counter.evals += evals
    return TreeRelation(levels, actuals, gens)


def is_weak_cause_tree(model: CausalModel, X: str, x: str, Y: str, y: str, u: Mapping,
                       tp: Optional[TreePath] = None, counter: Optional[WorkCounter] = None,
                       relation_out: Optional[list] = None) -> bool:
    if tp is None:
        tp = detect_tree(model, X, Y)
    if tp is None or tp.path[-1] != X or tp.path[0] != Y:
        raise NotApplicable(f"reduced graph for {X} -> {Y} is not a directed tree rooted at {Y}")
    actual = model.solve(u)
    if actual[X] != x or actual[Y] != y:
        return False
    rel = build_tree_relations(model, tp, u, y, counter)
    if relation_out is not None:
        relation_out.append(rel)
    return any(p and x not in p for p in rel.levels[-1])
