"""Scaling report: structural algorithms against brute force on growing instances.

Rows are produced for each depth ``k``: the layered and decomposition
algorithms run on a width-2 layered chain, the tree algorithm on a
caterpillar tree of the same depth, and brute force on the layered chain
(only up to ``brute_max_k`` and with a per-query time budget; a timeout is
recorded as a lower bound).
"""
from __future__ import annotations

import csv
import gc
import io
import json
import time
from typing import Optional

from .decomposition import build_triple_relations
from .events import Prim
from .generate import caterpillar, layered_chain
from .graph import WorkCounter
from .layered import build_layered_relations, detect_layered, natural_decomposition
from .oracle import OracleTimeout, weak_cause_bruteforce
from .reduction import reduce_model
from .tree import build_tree_relations, detect_tree

SCHEMA_VERSION = "hpcause-bench/1"
COLUMNS = ("k", "n_vars", "layered_s", "layered_evals", "decomp_s", "tree_s", "tree_evals",
           "brute_s", "brute_timeout", "decision")


def _best(fn, repeat):
    """Minimum wall time over ``repeat`` runs, with the garbage collector paused (as timeit does)."""
    best, out = None, None
    enabled = gc.isenabled()
    gc.collect()
    gc.disable()
    try:
        for _ in range(repeat):
            t = time.perf_counter()
            out = fn()
            dt = time.perf_counter() - t
            best = dt if best is None else min(best, dt)
    finally:
        if enabled:
            gc.enable()
    return best, out


def _context(model):
    return {v: model.domain(v)[-1] for v in model.exogenous}


def layered_row(k: int, width: int = 2, seed: int = 0, repeat: int = 3) -> dict:
    """Time the layered and decomposition algorithms on one chain (query at the actual values)."""
    inst = layered_chain(k, width, seed)
    m, X = inst.model, inst.cause[0]
    u = _context(m)
    actual = m.solve(u)
    cause, y = {X: actual[X]}, actual["Y"]
    x = (actual[X],)
    counter = WorkCounter()

    def run_layered():
        counter.reset()
        layering = detect_layered(m, [X], "Y", counter)
        reduced = reduce_model(m, [X], Prim("Y", y))
        levels = build_layered_relations(reduced, layering, cause, "Y", y, u, counter)
        return any(t.F == (X,) and t.p and x in t.q for t in levels[-1])

    def run_decomp():
        layering = detect_layered(m, [X], "Y")
        reduced = reduce_model(m, [X], Prim("Y", y))
        levels = build_triple_relations(reduced, natural_decomposition(layering), cause, Prim("Y", y), u)
        return any(t.F == (X,) and t.p and x in t.q for t in levels[-1])

    lt, decision = _best(run_layered, repeat)
    dt, d2 = _best(run_decomp, repeat)
    if d2 != decision:
        raise AssertionError(f"layered and decomposition disagree at k={k}")
    return {"k": k, "n_vars": len(m.endogenous), "layered_s": lt, "layered_evals": counter.evals,
            "decomp_s": dt, "decision": decision}


def tree_row(k: int, seed: int = 0, repeat: int = 3) -> dict:
    inst = caterpillar(k, seed)
    m = inst.model
    u = _context(m)
    actual = m.solve(u)
    counter = WorkCounter()

    def run():
        counter.reset()
        tp = detect_tree(m, "X", "Y", counter=counter)
        rel = build_tree_relations(m, tp, u, actual["Y"], counter)
        return any(p and actual["X"] not in p for p in rel.levels[-1])

    t, _ = _best(run, repeat)
    return {"tree_s": t, "tree_evals": counter.evals}


def brute_row(k: int, width: int = 2, seed: int = 0, budget: float = 2.0) -> dict:
    inst = layered_chain(k, width, seed)
    m, X = inst.model, inst.cause[0]
    u = _context(m)
    actual = m.solve(u)
    start = time.perf_counter()
    try:
        weak_cause_bruteforce(m, {X: actual[X]}, Prim("Y", actual["Y"]), u,
                              cap=len(m.endogenous), deadline=start + budget)
        return {"brute_s": time.perf_counter() - start, "brute_timeout": False}
    except OracleTimeout:
        return {"brute_s": time.perf_counter() - start, "brute_timeout": True}


def run_bench(k_min: int = 2, k_max: int = 30, width: int = 2, seed: int = 0,
              brute_max_k: int = 15, brute_budget: float = 2.0, repeat: int = 3,
              progress: Optional[callable] = None) -> list:
    rows = []
    for k in range(k_min, k_max + 1):
        row = dict.fromkeys(COLUMNS)
        row.update(layered_row(k, width, seed, repeat))
        row.update(tree_row(k, seed, repeat))
        if k <= brute_max_k:
            row.update(brute_row(k, width, seed, brute_budget))
        rows.append(row)
        if progress is not None:
            progress(row)
    return rows


def linear_fit(xs, ys):
    """Least-squares slope and intercept."""
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx
    return slope, my - slope * mx


def to_csv(rows, meta: dict) -> str:
    buf = io.StringIO()
    buf.write(f"# {SCHEMA_VERSION} {json.dumps(meta, sort_keys=True)}\n")
    w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({c: ("" if row.get(c) is None else row[c]) for c in COLUMNS})
    return buf.getvalue()


def to_json(rows, meta: dict) -> str:
    return json.dumps({"schema": SCHEMA_VERSION, "meta": meta, "columns": list(COLUMNS), "rows": rows},
                      indent=2)
