"""Recursive structural causal models over finite domains.

A model is a set of exogenous variables (bound by a context), a set of
endogenous variables, and one mechanism per endogenous variable mapping the
values of its parents to a value of the variable.  Values are opaque strings.
"""
from __future__ import annotations

import graphlib
from dataclasses import dataclass
from itertools import product
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Optional, Sequence

Assignment = dict  # variable name -> value


class ModelError(ValueError):
    """Raised for malformed models, contexts or interventions."""


class NotApplicable(Exception):
    """A structural algorithm does not cover the given instance."""


@dataclass(frozen=True)
class Mechanism:
    """The function of one endogenous variable.

    Normally an explicit table keyed by parent-value tuples (in ``parents``
    order).  ``func`` is an alternative for mechanisms too large to
    tabulate; exactly one of the two is set.
    """

    parents: tuple
    table: Optional[Mapping] = None
    func: Optional[Callable[[tuple], str]] = None

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))
        if (self.table is None) == (self.func is None):
            raise ModelError("mechanism needs exactly one of table or func")
        if self.table is not None:
            object.__setattr__(self, "table", MappingProxyType(dict(self.table)))

    @classmethod
    def constant(cls, value: str) -> "Mechanism":
        return cls((), {(): value})

    def __call__(self, args: tuple) -> str:
        if self.table is not None:
            return self.table[args]
        return self.func(args)

    @property
    def lookup(self) -> Callable[[tuple], str]:
        return self.table.__getitem__ if self.table is not None else self.func


def merge(a: Mapping, b: Mapping) -> Assignment:
    """``[a|b]``: the bindings of ``a`` overridden by those of ``b``."""
    out = dict(a)
    out.update(b)
    return out


def restrict(a: Mapping, variables: Iterable[str]) -> Assignment:
    return {v: a[v] for v in variables if v in a}


def _check_domain(name, values):
    values = tuple(str(v) for v in values)
    if not values:
        raise ModelError(f"domain of {name!r} is empty")
    if len(set(values)) != len(values):
        raise ModelError(f"domain of {name!r} has duplicate values")
    return values


class CausalModel:
    """A recursive causal model ``(U, V, F)``.

    Construction validates domains, table totality and acyclicity, and
    caches a topological order of the endogenous variables.  Instances are
    treated as immutable.
    """

    def __init__(self, exogenous: Mapping[str, Sequence], endogenous: Mapping[str, Sequence],
                 mechanisms: Mapping[str, Mechanism]):
        self._exo = {str(k): _check_domain(k, v) for k, v in exogenous.items()}
        self._endo = {str(k): _check_domain(k, v) for k, v in endogenous.items()}
        clash = set(self._exo) & set(self._endo)
        if clash:
            raise ModelError(f"variables both exogenous and endogenous: {sorted(clash)}")
        if set(mechanisms) != set(self._endo):
            missing = set(self._endo) - set(mechanisms)
            extra = set(mechanisms) - set(self._endo)
            raise ModelError(f"mechanisms do not match endogenous variables "
                             f"(missing {sorted(missing)}, extra {sorted(extra)})")
        self._mech = {name: mechanisms[name] for name in self._endo}
        for name, mech in self._mech.items():
            self._check_mechanism(name, mech)
        self._index = {name: i for i, name in enumerate(self._endo)}
        self._order = self._topological_order()
        self._plan = tuple((v, self._mech[v].parents, self._mech[v].lookup) for v in self._order)

    def _check_mechanism(self, name, mech):
        for p in mech.parents:
            if p == name:
                raise ModelError(f"{name!r} lists itself as a parent")
            if p not in self._exo and p not in self._endo:
                raise ModelError(f"{name!r} has unknown parent {p!r}")
        if len(set(mech.parents)) != len(mech.parents):
            raise ModelError(f"{name!r} has duplicate parents")
        if mech.table is None:
            return
        domain = set(self._endo[name])
        for combo in product(*(self.domain(p) for p in mech.parents)):
            if combo not in mech.table:
                raise ModelError(f"table of {name!r} misses parent combination "
                                 f"{','.join(combo) or '()'}")
            if mech.table[combo] not in domain:
                raise ModelError(f"table of {name!r} maps {','.join(combo) or '()'} to "
                                 f"{mech.table[combo]!r}, outside its domain")

    def _topological_order(self):
        ts = graphlib.TopologicalSorter()
        for name, mech in self._mech.items():
            ts.add(name, *(p for p in mech.parents if p in self._endo))
        try:
            ts.prepare()
        except graphlib.CycleError as exc:
            raise ModelError(f"model is not recursive: cycle through {exc.args[1]}") from None
        order = []
        while ts.is_active():
            ready = sorted(ts.get_ready(), key=self._index.__getitem__)
            order.extend(ready)
            ts.done(*ready)
        return tuple(order)

    # -- accessors ---------------------------------------------------------

    @property
    def exogenous(self) -> tuple:
        return tuple(self._exo)

    @property
    def endogenous(self) -> tuple:
        return tuple(self._endo)

    @property
    def order(self) -> tuple:
        """Endogenous variables in a fixed topological order."""
        return self._order

    def domain(self, name: str) -> tuple:
        if name in self._endo:
            return self._endo[name]
        if name in self._exo:
            return self._exo[name]
        raise ModelError(f"unknown variable {name!r}")

    def mechanism(self, name: str) -> Mechanism:
        return self._mech[name]

    def parents(self, name: str) -> tuple:
        return self._mech[name].parents if name in self._mech else ()

    def is_endogenous(self, name: str) -> bool:
        return name in self._endo

    def is_exogenous(self, name: str) -> bool:
        return name in self._exo

    def index(self, name: str) -> int:
        """Declaration position of an endogenous variable (canonical sort key)."""
        return self._index[name]

    def sort(self, names: Iterable[str]) -> tuple:
        return tuple(sorted(names, key=self._index.__getitem__))

    def contexts(self):
        """Iterate over all total assignments to the exogenous variables."""
        names = self.exogenous
        for combo in product(*(self._exo[n] for n in names)):
            yield dict(zip(names, combo))

    def __repr__(self):
        return f"CausalModel(U={list(self._exo)}, V={list(self._endo)})"

    # -- validation --------------------------------------------------------

    def check_context(self, u: Mapping):
        for name in self._exo:
            if name not in u:
                raise ModelError(f"context does not bind exogenous variable {name!r}")
            if u[name] not in self._exo[name]:
                raise ModelError(f"value {u[name]!r} not in domain of {name!r}")
        for name in u:
            if name not in self._exo:
                raise ModelError(f"context binds non-exogenous variable {name!r}")

    def check_assignment(self, x: Mapping, endogenous_only: bool = True):
        for name, value in x.items():
            if name not in self._endo:
                if endogenous_only and name in self._exo:
                    raise ModelError(f"cannot intervene on exogenous variable {name!r}")
                if name not in self._exo:
                    raise ModelError(f"unknown variable {name!r}")
            if value not in self.domain(name):
                raise ModelError(f"value {value!r} not in domain of {name!r}")

    # -- evaluation --------------------------------------------------------

    def solve(self, u: Mapping, intervention: Optional[Mapping] = None) -> Assignment:
        """Unchecked evaluation; returns values of U and V together."""
        vals = dict(u)
        if intervention:
            for name, parents, fn in self._plan:
                if name in intervention:
                    vals[name] = intervention[name]
                else:
                    vals[name] = fn(tuple([vals[p] for p in parents]))
        else:
            for name, parents, fn in self._plan:
                vals[name] = fn(tuple([vals[p] for p in parents]))
        return vals

    def evaluate(self, u: Mapping) -> Assignment:
        """``V_M(u)``: the unique solution for the endogenous variables."""
        self.check_context(u)
        vals = self.solve(u)
        return {v: vals[v] for v in self._endo}

    def submodel(self, x: Mapping) -> "CausalModel":
        """``M_x``: mechanisms of the variables in ``x`` replaced by constants."""
        self.check_assignment(x)
        mechs = dict(self._mech)
        for name, value in x.items():
            mechs[name] = Mechanism.constant(value)
        return CausalModel(self._exo, self._endo, mechs)

    def eval_intervened(self, x: Mapping, u: Mapping, targets: Iterable[str]) -> Assignment:
        """``Y_x(u)`` for the variables in ``targets``."""
        self.check_assignment(x)
        self.check_context(u)
        vals = self.solve(u, x)
        return {t: vals[t] for t in targets}


def table_mechanism(model_domains: Mapping[str, Sequence], parents: Sequence[str],
                    fn: Callable[..., object]) -> Mechanism:
    """Tabulate ``fn(*parent_values)`` over the product of parent domains."""
    parents = tuple(parents)
    table = {combo: str(fn(*combo)) for combo in product(*(model_domains[p] for p in parents))}
    return Mechanism(parents, table)
