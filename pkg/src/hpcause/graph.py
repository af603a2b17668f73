"""Causal graphs and linear-time traversals with work instrumentation."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .model import CausalModel


@dataclass
class WorkCounter:
    """Tallies edge visits and mechanism evaluations.

    Passed optionally into graph scans and relation builders so tests can
    check growth rates independently of wall-clock time.
    """

    edges: int = 0
    evals: int = 0
    levels: list = field(default_factory=list)

    def reset(self):
        self.edges = 0
        self.evals = 0
        self.levels.clear()


class CausalGraph:
    """Directed graph with parent and child adjacency (parent -> child edges)."""

    def __init__(self, nodes: Iterable[str], edges: Iterable[tuple]):
        self.nodes = tuple(dict.fromkeys(nodes))
        node_set = set(self.nodes)
        self._parents = {n: [] for n in self.nodes}
        self._children = {n: [] for n in self.nodes}
        seen = set()
        for a, b in edges:
            if a not in node_set or b not in node_set:
                raise ValueError(f"edge ({a}, {b}) mentions an unknown node")
            if (a, b) in seen:
                continue
            seen.add((a, b))
            self._children[a].append(b)
            self._parents[b].append(a)
        self.edges = frozenset(seen)

    def parents(self, node) -> list:
        return self._parents[node]

    def children(self, node) -> list:
        return self._children[node]

    def __contains__(self, node):
        return node in self._parents

    def __eq__(self, other):
        if not isinstance(other, CausalGraph):
            return NotImplemented
        return set(self.nodes) == set(other.nodes) and self.edges == other.edges

    def __repr__(self):
        return f"CausalGraph({len(self.nodes)} nodes, {len(self.edges)} edges)"

    def restrict(self, keep: Iterable[str]) -> "CausalGraph":
        keep = set(keep)
        nodes = [n for n in self.nodes if n in keep]
        return CausalGraph(nodes, [(a, b) for a, b in self.edges if a in keep and b in keep])

    def to_dict(self) -> dict:
        return {"nodes": list(self.nodes),
                "edges": sorted([list(e) for e in self.edges])}


def causal_graph(model: CausalModel) -> CausalGraph:
    """``G(M)``: nodes ``U | V``; an edge ``Y -> X`` whenever ``Y`` is a parent of ``X``."""
    nodes = list(model.exogenous) + list(model.endogenous)
    edges = [(p, v) for v in model.endogenous for p in model.parents(v)]
    return CausalGraph(nodes, edges)


def restrict_to_endogenous(graph: CausalGraph, model: CausalModel) -> CausalGraph:
    """``G_V(M)``: drop exogenous nodes and their edges."""
    return graph.restrict(n for n in graph.nodes if model.is_endogenous(n))


def endogenous_graph(model: CausalModel) -> CausalGraph:
    return restrict_to_endogenous(causal_graph(model), model)


def backward_reach(graph: CausalGraph, sources: Iterable[str], counter: Optional[WorkCounter] = None,
                   stop: frozenset = frozenset()) -> set:
    """Nodes with a directed path to some source (sources included).

    Nodes in ``stop`` are reached but not expanded further.
    """
    seen = set()
    queue = deque()
    for s in sources:
        if s not in seen:
            seen.add(s)
            queue.append(s)
    edges = 0
    while queue:
        n = queue.popleft()
        if n in stop:
            continue
        for p in graph.parents(n):
            edges += 1
            if p not in seen:
                seen.add(p)
                queue.append(p)
    if counter is not None:
        counter.edges += edges
    return seen


def forward_reach(graph: CausalGraph, sources: Iterable[str], counter: Optional[WorkCounter] = None,
                  strict: bool = False) -> set:
    """Nodes reachable from a source; with ``strict`` only via paths of length >= 1."""
    seen = set()
    queue = deque()
    edges = 0
    for s in sources:
        if strict:
            for c in graph.children(s):
                edges += 1
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
        elif s not in seen:
            seen.add(s)
            queue.append(s)
    while queue:
        n = queue.popleft()
        for c in graph.children(n):
            edges += 1
            if c not in seen:
                seen.add(c)
                queue.append(c)
    if counter is not None:
        counter.edges += edges
    return seen
