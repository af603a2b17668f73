"""Seeded random causal models for tests and benchmarks.

Every generator returns an :class:`Instance` holding the model together with
the designated cause variables and effect variable for its shape.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import NamedTuple, Optional

from .model import CausalModel, Mechanism

SHAPES = ("chain", "tree", "layered", "random-dag")


@dataclass(frozen=True)
class GeneratorConfig:
    shape: str = "random-dag"
    n_vars: int = 5
    max_domain: int = 2
    max_in_degree: int = 3
    layer_width: int = 2
    n_layers: Optional[int] = None   # layered only; defaults from n_vars
    seed: int = 0
    min_domain: int = 2
    exo_prob: float = 0.3            # chance a non-source variable gets its own exogenous parent
    edge_prob: float = 0.5           # random-dag only
    nondegenerate: bool = False      # force every mechanism to depend on every parent

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"unknown shape {self.shape!r}; expected one of {SHAPES}")
        if self.n_vars < 1 and self.n_layers is None:
            raise ValueError("n_vars must be positive")
        if self.max_domain < 1 or self.min_domain < 1 or self.min_domain > self.max_domain:
            raise ValueError("infeasible domain bounds")
        if self.max_in_degree < 1 or self.layer_width < 1:
            raise ValueError("in-degree and layer width bounds must be positive")


class Instance(NamedTuple):
    model: CausalModel
    cause: tuple
    effect: str


def _values(n):
    return tuple(str(i) for i in range(n))


def _random_table(rng, parent_domains, out_domain, nondegenerate):
    combos = list(product(*parent_domains))
    for _ in range(100):
        table = {c: rng.choice(out_domain) for c in combos}
        if not nondegenerate or _depends_on_all(table, parent_domains):
            return table
    # deterministic fallback: sum of value indices modulo the output size
    return {c: out_domain[sum(int(v) for v in c) % len(out_domain)] for c in combos}


def _depends_on_all(table, parent_domains):
    for i in range(len(parent_domains)):
        if all(len({table[c[:i] + (v,) + c[i + 1:]] for v in parent_domains[i]}) == 1 for c in table):
            return False
    return True


class _Builder:
    def __init__(self, cfg, rng):
        self.cfg = cfg
        self.rng = rng
        self.exo = {}
        self.endo = {}
        self.parents = {}
        self.order = []

    def add(self, name, parents):
        cfg, rng = self.cfg, self.rng
        self.endo[name] = _values(rng.randint(cfg.min_domain, cfg.max_domain))
        parents = list(parents)
        if not parents or rng.random() < cfg.exo_prob:
            u = "U_" + name
            self.exo[u] = _values(rng.randint(max(2, cfg.min_domain), max(2, cfg.max_domain)))
            parents.append(u)
        self.parents[name] = tuple(parents)
        self.order.append(name)

    def domain(self, name):
        return self.exo[name] if name in self.exo else self.endo[name]

    def build(self, tables=None):
        tables = tables or {}
        mechs = {}
        for v in self.order:
            pars = self.parents[v]
            if v in tables:
                table = tables[v]
            else:
                table = _random_table(self.rng, [self.domain(p) for p in pars], self.endo[v],
                                      self.cfg.nondegenerate)
            mechs[v] = Mechanism(pars, table)
        return CausalModel(self.exo, self.endo, mechs)


def _chain(cfg, rng):
    b = _Builder(cfg, rng)
    names = ["X"] + [f"P{i}" for i in range(cfg.n_vars - 2, 0, -1)] + (["Y"] if cfg.n_vars > 1 else [])
    prev = None
    for name in names:
        b.add(name, [prev] if prev else [])
        prev = name
    return Instance(b.build(), ("X",), names[-1])


def _tree(cfg, rng):
    if cfg.n_vars < 2:
        raise ValueError("a tree instance needs at least two variables")
    # grow a tree from the root Y; each new node becomes a parent of an existing one
    nodes = ["Y"]
    parent_of = {}
    indeg = {"Y": 0}
    for i in range(1, cfg.n_vars):
        name = f"V{i}"
        open_nodes = [n for n in nodes if indeg[n] < cfg.max_in_degree]
        child = rng.choice(open_nodes)
        parent_of[name] = child
        indeg[child] += 1
        indeg[name] = 0
        nodes.append(name)
    x = rng.choice(nodes[1:])
    rename = {x: "X"}
    b = _Builder(cfg, rng)
    # reverse creation order puts every node after its parents
    for n in reversed(nodes):
        pars = [rename.get(p, p) for p, c in parent_of.items() if c == n]
        b.add(rename.get(n, n), pars)
    return Instance(b.build(), ("X",), "Y")


def _layered(cfg, rng):
    width = cfg.layer_width
    k = cfg.n_layers if cfg.n_layers is not None else max(1, (cfg.n_vars - 1 + width - 1) // width)
    layers = [["Y"]] + [[f"L{i}_{j}" for j in range(width)] for i in range(1, k + 1)]
    # parents of layer i-1 come from layer i; each upper node keeps at least one child
    pars = {}
    for i in range(1, k + 1):
        upper, lower = layers[i], layers[i - 1]
        assign = {n: set() for n in lower}
        for n in upper:
            assign[rng.choice(lower)].add(n)
        for n in lower:
            cap = min(cfg.max_in_degree, len(upper))
            while not assign[n]:
                assign[n].add(rng.choice(upper))
            extra = [m for m in upper if m not in assign[n]]
            rng.shuffle(extra)
            for m in extra:
                if len(assign[n]) >= cap:
                    break
                if rng.random() < 0.5:
                    assign[n].add(m)
            pars[n] = [m for m in upper if m in assign[n]]
    b = _Builder(cfg, rng)
    for i in range(k, -1, -1):
        for n in layers[i]:
            b.add(n, pars.get(n, []))
    return Instance(b.build(), tuple(layers[k]), "Y")


def layered_chain(k: int, width: int = 2, seed: int = 0, domain: int = 2) -> Instance:
    """A homogeneous layered chain: ``k`` layers of ``width`` nodes above ``Y``.

    Each node depends on every node of the layer above; the mechanisms are
    drawn once (nondegenerate) and reused in every layer, so per-layer work
    is the same at every depth.  Only the top layer has exogenous parents.
    """
    rng = random.Random(seed)
    vals = _values(domain)
    layers = [["Y"]] + [[f"L{i}_{j}" for j in range(width)] for i in range(1, k + 1)]
    exo = {f"U_{n}": vals for n in layers[k]}
    endo = {n: vals for i in range(k, -1, -1) for n in layers[i]}
    in_doms = [vals] * width
    inner = [_random_table(rng, in_doms, vals, True) for _ in range(width)]
    root = _random_table(rng, in_doms, vals, True)
    mechs = {}
    for n in layers[k]:
        mechs[n] = Mechanism((f"U_{n}",), {(v,): v for v in vals})
    for i in range(k - 1, 0, -1):
        for j, n in enumerate(layers[i]):
            mechs[n] = Mechanism(tuple(layers[i + 1]), inner[j])
    mechs["Y"] = Mechanism(tuple(layers[1]), root)
    return Instance(CausalModel(exo, endo, mechs), (layers[k][0],), "Y")


def caterpillar(k: int, seed: int = 0, domain: int = 2) -> Instance:
    """A path ``X -> P(k-1) -> ... -> P1 -> Y`` where every path node also has one leaf parent.

    The reduced graph is a tree with in-degree 2; mechanisms are drawn once
    and reused along the path.
    """
    rng = random.Random(seed)
    vals = _values(domain)
    path = ["X"] + [f"P{i}" for i in range(k - 1, 0, -1)] + ["Y"]
    step = _random_table(rng, [vals, vals], vals, True)
    exo, endo, mechs = {}, {}, {}
    for i, n in enumerate(path):
        if i == 0:
            exo["U_X"] = vals
            endo["X"] = vals
            mechs["X"] = Mechanism(("U_X",), {(v,): v for v in vals})
            continue
        leaf = f"S{len(path) - 1 - i}"
        exo["U_" + leaf] = vals
        endo[leaf] = vals
        mechs[leaf] = Mechanism(("U_" + leaf,), {(v,): v for v in vals})
        endo[n] = vals
        mechs[n] = Mechanism((path[i - 1], leaf), step)
    return Instance(CausalModel(exo, endo, mechs), ("X",), "Y")


def _random_dag(cfg, rng):
    b = _Builder(cfg, rng)
    names = [f"V{i}" for i in range(cfg.n_vars)]
    for i, n in enumerate(names):
        cands = names[:i]
        rng.shuffle(cands)
        pars = [p for p in cands if rng.random() < cfg.edge_prob][:cfg.max_in_degree]
        b.add(n, sorted(pars, key=names.index))
    return Instance(b.build(), (names[0],), names[-1])


def sparse_dag(n_vars: int, seed: int = 0, max_in_degree: int = 3, window: int = 8) -> Instance:
    """A random binary DAG whose parents come from the previous ``window`` variables.

    Builds in O(|V|) so graph scans can be measured on models with many
    thousands of variables.  Sources get a private exogenous parent.
    """
    if n_vars < 1:
        raise ValueError("n_vars must be positive")
    rng = random.Random(seed)
    vals = _values(2)
    names = [f"V{i}" for i in range(n_vars)]
    exo, endo, mechs = {}, {}, {}
    for i, n in enumerate(names):
        endo[n] = vals
        pars = sorted(rng.sample(names[max(0, i - window):i], min(i, rng.randint(1, max_in_degree))),
                      key=lambda p: int(p[1:]))
        if not pars:
            exo["U_" + n] = vals
            pars = ["U_" + n]
        mechs[n] = Mechanism(tuple(pars), _random_table(rng, [vals] * len(pars), vals, False))
    return Instance(CausalModel(exo, endo, mechs), (names[0],), names[-1])


def generate_instance(cfg: GeneratorConfig) -> Instance:
    rng = random.Random(cfg.seed)
    if cfg.shape == "chain":
        return _chain(cfg, rng)
    if cfg.shape == "tree":
        return _tree(cfg, rng)
    if cfg.shape == "layered":
        return _layered(cfg, rng)
    return _random_dag(cfg, rng)


def generate_model(cfg: GeneratorConfig) -> CausalModel:
    return generate_instance(cfg).model
