"""JSON codecs for models, context sets and decompositions.

Model files look like::

    {"exogenous": {"U1": ["0", "1"]},
     "endogenous": {"A1": {"domain": ["0", "1"], "parents": ["U1"],
                           "table": {"0": "0", "1": "1"}}}}

Table keys are parent values joined by commas, in declared parent order
(``""`` for a constant mechanism).  Instead of ``table`` a mechanism may give
``expr``: either an event-style condition over its parents (the output is
``domain[1]`` when it holds and ``domain[0]`` otherwise), or a list of
``{"if": cond, "then": value}`` cases ending with ``{"else": value}``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from itertools import product

import jsonschema

from .decomposition import Decomposition, load_decomposition, save_decomposition  # noqa: F401
from .events import EventSyntaxError, compile_event, parse_event, primitives
from .explain import ContextSet
from .model import CausalModel, Mechanism, ModelError

_VALUE = {"type": ["string", "integer"]}
_NAME = {"type": "string", "pattern": r"^[A-Za-z_][A-Za-z0-9_]*$"}

MODEL_SCHEMA = {
    "type": "object",
    "required": ["exogenous", "endogenous"],
    "additionalProperties": False,
    "properties": {
        "exogenous": {
            "type": "object",
            "propertyNames": _NAME,
            "additionalProperties": {"type": "array", "items": _VALUE, "minItems": 1},
        },
        "endogenous": {
            "type": "object",
            "propertyNames": _NAME,
            "additionalProperties": {
                "type": "object",
                "required": ["domain", "parents"],
                "additionalProperties": False,
                "properties": {
                    "domain": {"type": "array", "items": _VALUE, "minItems": 1},
                    "parents": {"type": "array", "items": {"type": "string"}},
                    "table": {"type": "object", "additionalProperties": _VALUE},
                    "expr": {"oneOf": [
                        {"type": "string"},
                        {"type": "array", "minItems": 1, "items": {"type": "object"}},
                    ]},
                },
                "oneOf": [{"required": ["table"]}, {"required": ["expr"]}],
            },
        },
    },
}

CONTEXTS_SCHEMA = {
    "type": "array",
    "minItems": 1,
    "items": {
        "type": "object",
        "required": ["u"],
        "additionalProperties": False,
        "properties": {
            "u": {"type": "object", "additionalProperties": _VALUE},
            "p": {"type": "string", "pattern": r"^\s*\d+\s*(/\s*\d+\s*)?$"},
        },
    },
}


class ModelFileError(ModelError):
    """A model/context file problem; ``pointer`` is a JSON pointer to the offending node."""

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


def _pointer(parts) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


def _validate(data, schema):
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise ModelFileError(_pointer(e.absolute_path), e.message)


def _expr_table(name, spec, parents, domains, out_domain):
    base = f"/endogenous/{name}/expr"

    def cond(text, where):
        try:
            ev = parse_event(text)
        except EventSyntaxError as exc:
            raise ModelFileError(where, str(exc)) from None
        for prim in primitives(ev):
            if prim.var not in parents:
                raise ModelFileError(where, f"{prim.var!r} is not a parent of {name}")
            if prim.value not in domains[prim.var]:
                raise ModelFileError(where, f"{prim.value!r} is not in the domain of {prim.var}")
        return compile_event(ev)

    if isinstance(spec, str):
        if len(out_domain) != 2:
            raise ModelFileError(base, "a condition expr needs a two-value domain")
        test = cond(spec, base)
        cases = [(test, out_domain[1])]
        default = out_domain[0]
    else:
        cases, default = [], None
        for i, case in enumerate(spec):
            where = f"{base}/{i}"
            if set(case) == {"else"} and i == len(spec) - 1:
                default = str(case["else"])
            elif set(case) == {"if", "then"} and isinstance(case["if"], str):
                cases.append((cond(case["if"], where + "/if"), str(case["then"])))
            else:
                raise ModelFileError(where, "expected {'if': cond, 'then': value} or a final {'else': value}")
        if default is None:
            raise ModelFileError(base, "case list must end with {'else': value}")
        for _, v in cases + [(None, default)]:
            if v not in out_domain:
                raise ModelFileError(base, f"output {v!r} is not in the domain of {name}")
    table = {}
    for combo in product(*(domains[p] for p in parents)):
        vals = dict(zip(parents, combo))
        table[combo] = next((v for test, v in cases if test(vals)), default)
    return table


def model_from_json(data) -> CausalModel:
    _validate(data, MODEL_SCHEMA)
    exo = {n: [str(v) for v in vals] for n, vals in data["exogenous"].items()}
    endo = {n: [str(v) for v in spec["domain"]] for n, spec in data["endogenous"].items()}
    domains = {**exo, **endo}
    mechs = {}
    for name, spec in data["endogenous"].items():
        parents = tuple(spec["parents"])
        for i, p in enumerate(parents):
            if p not in domains:
                raise ModelFileError(f"/endogenous/{name}/parents/{i}", f"unknown variable {p!r}")
        if "expr" in spec:
            table = _expr_table(name, spec["expr"], parents, domains, endo[name])
        else:
            table = {}
            for key, out in spec["table"].items():
                combo = tuple(key.split(",")) if parents else ()
                if (parents and len(combo) != len(parents)) or (not parents and key != ""):
                    raise ModelFileError(f"/endogenous/{name}/table/{key}",
                                         f"key must list {len(parents)} comma-separated parent values")
                table[combo] = str(out)
            for combo in product(*(domains[p] for p in parents)):
                if combo not in table:
                    raise ModelFileError(f"/endogenous/{name}/table",
                                         f"missing parent combination {','.join(combo)!r}")
        mechs[name] = Mechanism(parents, table)
    return CausalModel(exo, endo, mechs)


def model_to_json(model: CausalModel) -> dict:
    endo = {}
    for v in model.endogenous:
        mech = model.mechanism(v)
        table = {}
        for combo in product(*(model.domain(p) for p in mech.parents)):
            table[",".join(combo)] = mech(combo)
        endo[v] = {"domain": list(model.domain(v)), "parents": list(mech.parents), "table": table}
    return {"exogenous": {u: list(model.domain(u)) for u in model.exogenous}, "endogenous": endo}


def load_model(path) -> CausalModel:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ModelFileError("", f"not valid JSON: {exc}") from None
    return model_from_json(data)


def save_model(model: CausalModel, path):
    with open(path, "w") as fh:
        json.dump(model_to_json(model), fh, indent=2)


def contexts_from_json(data, model: CausalModel = None) -> ContextSet:
    _validate(data, CONTEXTS_SCHEMA)
    has_p = ["p" in item for item in data]
    if any(has_p) and not all(has_p):
        raise ModelFileError("", "either every context carries 'p' or none does")
    contexts = [{k: str(v) for k, v in item["u"].items()} for item in data]
    if model is not None:
        for i, u in enumerate(contexts):
            try:
                model.check_context(u)
            except ModelError as exc:
                raise ModelFileError(f"/{i}/u", str(exc)) from None
    probs = [Fraction(item["p"].replace(" ", "")) for item in data] if all(has_p) else None
    try:
        return ContextSet(contexts, probs)
    except ValueError as exc:
        raise ModelFileError("", str(exc)) from None


def load_contexts(path, model: CausalModel = None) -> ContextSet:
    with open(path) as fh:
        return contexts_from_json(json.load(fh), model)


def save_contexts(C: ContextSet, path):
    with open(path, "w") as fh:
        json.dump(C.to_json(), fh, indent=2)
