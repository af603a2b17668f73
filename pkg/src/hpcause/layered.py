"""Layered causal graphs: detection, natural decomposition, weak causes.

A graph is layered w.r.t. ``X`` and ``Y`` when its nodes split into layers
``S^0 = {Y}, S^1, ..., S^k`` (``X`` inside ``S^k``) and every arrow goes from
some ``S^i`` to ``S^(i-1)``.  Such a layering is found by a forward sweep from
``X`` over the reduced graph, and it yields a decomposition whose relations
simplify because every block is its own interface.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Mapping, Optional

from .decomposition import Decomposition, Triple
from .events import Prim
from .graph import CausalGraph, WorkCounter
from .model import CausalModel, NotApplicable
from .reduction import classify_relevance, reduce_model, reduced_endogenous_graph


@dataclass(frozen=True)
class Layering:
    layers: tuple  # (S^0, ..., S^k), each a tuple of variable names

    @property
    def k(self) -> int:
        return len(self.layers) - 1

    @property
    def width(self) -> int:
        return max((len(s) for s in self.layers[1:]), default=0)

    def to_dict(self):
        return {"layers": [list(s) for s in self.layers], "k": self.k, "width": self.width}


def check_layering(graph: CausalGraph, layers, X: Iterable[str], Y: str) -> bool:
    """L1 and L2, plus that the layers partition the graph's nodes."""
    index = {}
    for i, layer in enumerate(layers):
        for v in layer:
            if v in index:
                return False
            index[v] = i
    if set(index) != set(graph.nodes):
        return False
    if set(layers[0]) != {Y} or not set(X) <= set(layers[-1]):
        return False
    return all(index[a] == index[b] + 1 for a, b in graph.edges)


def sweep_layers(graph: CausalGraph, X: Iterable[str], counter: Optional[WorkCounter] = None):
    """Blocks ``T^0, T^-1, ...`` of the forward sweep from ``X``, or ``None`` on overlap."""
    delta = set(X)
    blocks = []
    seen = set()
    edges = 0
    while delta:
        children = set()
        for v in delta:
            for c in graph.children(v):
                edges += 1
                children.add(c)
        block = set(delta)
        for c in children:
            for p in graph.parents(c):
                edges += 1
                block.add(p)
        if block & seen:
            if counter is not None:
                counter.edges += edges
            return None
        seen |= block
        blocks.append(block)
        delta = children
    if counter is not None:
        counter.edges += edges
    return blocks


def detect_layered(model: CausalModel, X: Iterable[str], Y: str,
                   counter: Optional[WorkCounter] = None) -> Optional[Layering]:
    """The layering of the reduced graph for ``X`` and ``Y``, if one exists."""
    X = model.sort(set(X))
    if not X or not model.is_endogenous(Y) or any(not model.is_endogenous(v) for v in X):
        return None
    event = Prim(Y, model.domain(Y)[0])
    classes = classify_relevance(model, X, event, counter)
    g = reduced_endogenous_graph(model, X, event, counter, classes)
    if Y not in g:
        return None
    blocks = sweep_layers(g, X, counter)
    if not blocks:
        return None
    layers = tuple(model.sort(b) for b in reversed(blocks))
    if not check_layering(g, layers, X, Y):
        return None
    return Layering(layers)


def natural_decomposition(layering: Layering) -> Decomposition:
    return Decomposition(tuple((frozenset(s), frozenset(s)) for s in layering.layers))


def _subsets(items):
    for size in range(len(items) + 1):
        yield from combinations(items, size)


def build_layered_relations(model: CausalModel, layering: Layering, cause: Mapping, Y: str, y: str,
                            u: Mapping, counter: Optional[WorkCounter] = None) -> list:
    """``R^0..R^k`` for a layered graph; ``model`` must be the model the layering was built on."""
    actual = model.solve(u)
    Sk = set(layering.layers[-1])
    levels = [{Triple(frozenset((v,) for v in model.domain(Y) if v != y), frozenset({(y,)}), (Y,))}]
    evals = 0
    for i in range(1, layering.k + 1):
        S = model.sort(layering.layers[i])
        lower = model.sort(layering.layers[i - 1])
        plan = [(v, model.mechanism(v).parents, model.mechanism(v).lookup) for v in lower]

        def image(setting):
            vals = dict(u)
            vals.update(setting)
            return {v: fn(tuple([vals[p] for p in parents])) for v, parents, fn in plan}

        level = set()
        for F in _subsets(S):
            cut = tuple(v for v in S if v not in F)
            dom_F = list(product(*(model.domain(v) for v in F)))
            zpool = [v for v in F if v not in Sk]
            zhats = list(_subsets(zpool))
            for wvals in product(*(model.domain(v) for v in cut)):
                w = dict(zip(cut, wvals))
                p_img, q_imgs = [], []
                for val in dom_F:
                    s = dict(w)
                    s.update(zip(F, val))
                    p_img.append(image(s))
                    runs = []
                    for Z in zhats:
                        s2 = dict(s)
                        for z in Z:
                            s2[z] = actual[z]
                        runs.append(image(s2))
                    q_imgs.append(runs)
                    evals += 1 + len(zhats)
                for prev in levels[i - 1]:
                    Fp = prev.F
                    pset = frozenset(val for val, img in zip(dom_F, p_img)
                                     if tuple([img[v] for v in Fp]) in prev.p)
                    qset = frozenset(val for val, runs in zip(dom_F, q_imgs)
                                     if all(tuple([r[v] for v in Fp]) in prev.q for r in runs))
                    level.add(Triple(pset, qset, F))
        levels.append(level)
        if counter is not None:
            counter.levels.append(len(level))
    if counter is not None:
        counter.evals += evals
    return levels


def is_weak_cause_layered(model: CausalModel, cause: Mapping, Y: str, y: str, u: Mapping,
                          layering: Optional[Layering] = None, reduced: Optional[CausalModel] = None,
                          counter: Optional[WorkCounter] = None) -> bool:
    """Decide ``X = x`` weak cause of ``Y = y`` under ``u`` on a layered instance.

    The layering refers to the reduced model; pass ``reduced`` to reuse one
    already built.
    """
    X = model.sort(cause)
    if layering is None:
        layering = detect_layered(model, X, Y)
    if layering is None:
        raise NotApplicable(f"reduced graph is not layered w.r.t. {list(X)} and {Y}")
    actual = model.solve(u)
    if any(actual[v] != cause[v] for v in X) or actual[Y] != y:
        return False
    if reduced is None:
        reduced = reduce_model(model, X, Prim(Y, y))
    levels = build_layered_relations(reduced, layering, cause, Y, y, u, counter)
    x = tuple(cause[v] for v in X)
    return any(t.F == X and t.p and x in t.q for t in levels[-1])
