"""Definition-level decision procedures for weak and actual causes.

These search the AC2 witness space exhaustively and serve as ground truth
for the structural algorithms.  Search order is fixed: ``W`` by size then
lexicographically (declaration order), then ``w`` and ``x-bar`` in domain
order, so identical queries give identical witnesses.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Mapping, Optional

from .events import as_event, compile_event
from .model import CausalModel, ModelError

DEFAULT_CAP = 20


class OracleCapExceeded(RuntimeError):
    """The instance is larger than the brute-force guardrail allows."""


class OracleTimeout(RuntimeError):
    """The search ran past its deadline."""


@dataclass(frozen=True)
class CauseQuery:
    model: CausalModel
    cause: dict
    event: object
    context: dict

    def __post_init__(self):
        object.__setattr__(self, "event", as_event(self.event, self.model))
        check_query(self.model, self.cause, self.context)


@dataclass(frozen=True)
class Witness:
    W: tuple
    xbar: dict
    w: dict

    def to_dict(self):
        return {"W": list(self.W), "xbar": dict(self.xbar), "w": dict(self.w)}


def check_query(model: CausalModel, cause: Mapping, u: Mapping):
    if not cause:
        raise ModelError("a cause must bind at least one variable")
    for v in cause:
        if not model.is_endogenous(v):
            raise ModelError(f"cause variable {v!r} is not endogenous")
    model.check_assignment(cause)
    model.check_context(u)


def _subsets(items):
    for size in range(len(items) + 1):
        yield from combinations(items, size)


def ac1(model: CausalModel, cause: Mapping, event, u: Mapping) -> bool:
    """``X(u) = x`` and the event holds under ``u``."""
    actual = model.solve(u)
    return all(actual[v] == val for v, val in cause.items()) and compile_event(as_event(event))(actual)


def weak_cause_bruteforce(model: CausalModel, cause: Mapping, event, u: Mapping,
                          cap: int = DEFAULT_CAP, deadline: Optional[float] = None):
    """Decide whether ``X = x`` is a weak cause of the event under ``u``.

    Returns ``(decision, witness)``; the witness is ``None`` when the answer
    is negative.  ``deadline`` is an absolute ``time.perf_counter()`` value.
    """
    event = as_event(event, model)
    check_query(model, cause, u)
    xs = model.sort(cause)
    rest = [v for v in model.endogenous if v not in cause]
    if len(rest) > cap:
        raise OracleCapExceeded(f"|V \\ X| = {len(rest)} exceeds the brute-force cap {cap}")
    phi = compile_event(event)
    solve = model.solve
    actual = solve(u)
    if not all(actual[v] == cause[v] for v in xs) or not phi(actual):
        return False, None

    x = {v: cause[v] for v in xs}
    xbars = [dict(zip(xs, combo)) for combo in product(*(model.domain(v) for v in xs))]
    for W in _subsets(rest):
        if deadline is not None and time.perf_counter() > deadline:
            raise OracleTimeout("brute-force search exceeded its deadline")
        others = [v for v in rest if v not in W]
        for wvals in product(*(model.domain(v) for v in W)):
            w = dict(zip(W, wvals))
            # AC2(a)
            found = None
            for xbar in xbars:
                iv = dict(xbar)
                iv.update(w)
                if not phi(solve(u, iv)):
                    found = xbar
                    break
            if found is None:
                continue
            # AC2(b); Z-hat = {} first, i.e. phi_{xw}(u) is the cheapest necessary condition
            base = dict(x)
            base.update(w)
            ok = True
            for Z in _subsets(others):
                iv = dict(base)
                for z in Z:
                    iv[z] = actual[z]
                if not phi(solve(u, iv)):
                    ok = False
                    break
            if ok:
                return True, Witness(tuple(W), found, w)
    return False, None


def is_weak_cause_bruteforce(q: CauseQuery, **kwargs):
    return weak_cause_bruteforce(q.model, q.cause, q.event, q.context, **kwargs)


def verify_witness(model: CausalModel, cause: Mapping, event, u: Mapping, witness: Witness) -> bool:
    """Re-check AC2(a) and AC2(b) for a given witness by direct evaluation."""
    event = as_event(event, model)
    phi = compile_event(event)
    if set(witness.W) & set(cause):
        return False
    actual = model.solve(u)
    iv = dict(witness.xbar)
    iv.update(witness.w)
    if phi(model.solve(u, iv)):
        return False
    others = [v for v in model.endogenous if v not in cause and v not in witness.W]
    for Z in _subsets(others):
        iv = dict(cause)
        iv.update(witness.w)
        iv.update({z: actual[z] for z in Z})
        if not phi(model.solve(u, iv)):
            return False
    return True


def is_actual_cause(model: CausalModel, cause: Mapping, event, u: Mapping, **kwargs) -> bool:
    """Actual cause = singleton weak cause."""
    check_query(model, cause, u)
    if len(cause) != 1:
        return False
    return weak_cause_bruteforce(model, cause, event, u, **kwargs)[0]


def is_actual_cause_by_definition(model: CausalModel, cause: Mapping, event, u: Mapping,
                                  **kwargs) -> bool:
    """AC1-AC3 checked literally: weak cause, and no nonempty proper subset is one."""
    if not weak_cause_bruteforce(model, cause, event, u, **kwargs)[0]:
        return False
    xs = model.sort(cause)
    for size in range(1, len(xs)):
        for sub in combinations(xs, size):
            if weak_cause_bruteforce(model, {v: cause[v] for v in sub}, event, u, **kwargs)[0]:
                return False
    return True


def enumerate_causes(model: CausalModel, candidates: Iterable[str], u: Mapping, event,
                     mode: str = "weak", **kwargs) -> list:
    """All ``X' = x'`` with nonempty ``X'`` within ``candidates`` passing the check.

    Ordered by ``|X'|``, then by variables, then by value in domain order.
    """
    if mode not in ("weak", "actual"):
        raise ValueError(f"unknown mode {mode!r}")
    event = as_event(event, model)
    cands = model.sort(candidates)
    sizes = [1] if mode == "actual" else range(1, len(cands) + 1)
    found = []
    for size in sizes:
        for sub in combinations(cands, size):
            for combo in product(*(model.domain(v) for v in sub)):
                cause = dict(zip(sub, combo))
                if weak_cause_bruteforce(model, cause, event, u, **kwargs)[0]:
                    found.append(cause)
    return found
