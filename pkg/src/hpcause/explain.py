"""Explanations relative to a set of contexts, and their explanatory power.

Every check reduces to weak-cause queries; ``backend`` selects how those are
answered (any algorithm name accepted by :func:`decide_weak_cause`, or a
callable ``(model, cause, event, u) -> bool``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping, Optional, Union

from .events import as_event, compile_event
from .model import CausalModel

Backend = Union[str, Callable]


class UndefinedPower(ValueError):
    """Explanatory power is undefined (no explaining subset, or zero denominator)."""


@dataclass
class ContextSet:
    contexts: list
    probabilities: Optional[list] = None   # Fractions aligned with ``contexts``

    def __post_init__(self):
        self.contexts = [dict(u) for u in self.contexts]
        seen = set()
        for u in self.contexts:
            k = tuple(sorted(u.items()))
            if k in seen:
                raise ValueError(f"duplicate context {u}")
            seen.add(k)
        if self.probabilities is not None:
            self.probabilities = [Fraction(p) for p in self.probabilities]
            if len(self.probabilities) != len(self.contexts):
                raise ValueError("one probability per context is required")
            if any(p < 0 for p in self.probabilities):
                raise ValueError("probabilities must be non-negative")
            if sum(self.probabilities) != 1:
                raise ValueError(f"probabilities sum to {sum(self.probabilities)}, not 1")

    def __len__(self):
        return len(self.contexts)

    def __iter__(self):
        return iter(self.contexts)

    @classmethod
    def uniform(cls, contexts) -> "ContextSet":
        contexts = list(contexts)
        return cls(contexts, [Fraction(1, len(contexts))] * len(contexts))

    def probability(self, u) -> Fraction:
        if self.probabilities is None:
            raise ValueError("context set carries no probabilities")
        return self.probabilities[self.contexts.index(dict(u))]

    def subset(self, keep) -> "ContextSet":
        """Sub-collection without probabilities (they would no longer sum to 1)."""
        return ContextSet([u for u in self.contexts if keep(u)])

    def to_json(self) -> list:
        out = []
        for i, u in enumerate(self.contexts):
            item = {"u": dict(u)}
            if self.probabilities is not None:
                p = self.probabilities[i]
                item["p"] = f"{p.numerator}/{p.denominator}"
            out.append(item)
        return out


@dataclass
class ExplanationVerdict:
    is_explanation: bool
    failed_condition: Optional[str] = None   # "EX1" .. "EX4"
    witness: Optional[dict] = None           # offending context or subset

    def __bool__(self):
        return self.is_explanation

    def to_dict(self):
        return {"is_explanation": self.is_explanation, "failed_condition": self.failed_condition,
                "witness": self.witness}


def _weak(backend: Backend, fallback: bool = True):
    if callable(backend):
        return backend
    from .solve import decide_weak_cause

    def run(model, cause, event, u):
        return decide_weak_cause(model, cause, event, u, algorithm=backend, fallback=fallback).decision
    return run


def _as_contexts(C) -> ContextSet:
    return C if isinstance(C, ContextSet) else ContextSet(list(C))


def _takes(model, cause, u, actual=None):
    actual = actual if actual is not None else model.solve(u)
    return all(actual[v] == val for v, val in cause.items())


def is_explanation(model: CausalModel, cause: Mapping, event, C, backend: Backend = "auto",
                   fallback: bool = True) -> ExplanationVerdict:
    """Check EX1..EX4 in order; the first failing condition is reported."""
    C = _as_contexts(C)
    if not len(C):
        raise ValueError("context set is empty")
    if not cause:
        raise ValueError("cause must mention at least one variable")
    event = as_event(event, model)
    phi = compile_event(event)
    weak = _weak(backend, fallback)
    sols = [model.solve(u) for u in C]
    for u, s in zip(C, sols):
        if not phi(s):
            return ExplanationVerdict(False, "EX1", {"context": dict(u)})
    for u, s in zip(C, sols):
        if _takes(model, cause, u, s) and not weak(model, dict(cause), event, u):
            return ExplanationVerdict(False, "EX2", {"context": dict(u)})
    xs = model.sort(cause)
    for size in range(1, len(xs)):
        for sub in combinations(xs, size):
            part = {v: cause[v] for v in sub}
            if not any(_takes(model, part, u, s) and not weak(model, part, event, u)
                       for u, s in zip(C, sols)):
                return ExplanationVerdict(False, "EX3", {"subset": part})
    hit = [_takes(model, cause, u, s) for u, s in zip(C, sols)]
    if not (any(hit) and not all(hit)):
        return ExplanationVerdict(False, "EX4", {"all_take_x": all(hit)})
    return ExplanationVerdict(True)


def largest_explaining_subset(model: CausalModel, cause: Mapping, event, C, backend: Backend = "auto",
                              fallback: bool = True) -> Optional[ContextSet]:
    """The largest ``C* ⊆ C`` relative to which ``cause`` explains ``event``, or ``None``."""
    C = _as_contexts(C)
    event = as_event(event, model)
    phi = compile_event(event)
    weak = _weak(backend, fallback)
    keep = []
    for u in C:
        s = model.solve(u)
        if not phi(s):
            raise ValueError(f"event does not hold in context {u}")
        if not _takes(model, cause, u, s) or weak(model, dict(cause), event, u):
            keep.append(u)
    if not keep:
        return None
    star = ContextSet(keep)
    if not is_explanation(model, cause, event, star, weak):
        return None
    return star


def explanatory_power(model: CausalModel, cause: Mapping, event, C: ContextSet,
                      backend: Backend = "auto", fallback: bool = True) -> Fraction:
    """``P(C* ∩ {X=x}) / P(C ∩ {X=x})`` as an exact fraction."""
    star = largest_explaining_subset(model, cause, event, C, backend, fallback)
    if star is None:
        raise UndefinedPower("no subset of the contexts is explained")
    return power_ratio(model, cause, C, star)


def power_ratio(model: CausalModel, cause: Mapping, C: ContextSet, subset) -> Fraction:
    """``P(subset ∩ {X=x}) / P(C ∩ {X=x})`` for any subset of ``C``."""
    den = sum((C.probability(u) for u in C if _takes(model, cause, u)), Fraction(0))
    if den == 0:
        raise UndefinedPower("the cause value never occurs in the contexts (zero denominator)")
    num = sum((C.probability(u) for u in subset if _takes(model, cause, u)), Fraction(0))
    return num / den


def is_alpha_partial(model: CausalModel, cause: Mapping, event, C: ContextSet, alpha,
                     backend: Backend = "auto", fallback: bool = True) -> bool:
    try:
        return explanatory_power(model, cause, event, C, backend, fallback) >= Fraction(alpha)
    except UndefinedPower:
        return False


def is_partial(model: CausalModel, cause: Mapping, event, C: ContextSet,
               backend: Backend = "auto", fallback: bool = True) -> bool:
    try:
        return explanatory_power(model, cause, event, C, backend, fallback) > 0
    except UndefinedPower:
        return False
