"""Command-line front end.

Every subcommand prints one JSON document on stdout (traces go to stderr).
Exit codes: 0 decision rendered, 2 usage error, 3 algorithm not applicable
and fallback disabled, 4 brute-force cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bench as bench_mod
from .decomposition import load_decomposition, trivial_decomposition, validate_decomposition
from .events import EventSyntaxError, Prim, as_event, compile_event, render
from .explain import (UndefinedPower, explanatory_power, is_alpha_partial, is_explanation,
                      largest_explaining_subset)
from .generate import SHAPES, GeneratorConfig, generate_instance
from .io import load_contexts, load_model, model_to_json, save_model
from .layered import detect_layered
from .model import ModelError, NotApplicable
from .oracle import OracleCapExceeded
from .reduction import (classification_report, classify_relevance, reduce_model, strip_blocked,
                        strip_nonancestors)
from .solve import ALGORITHMS, decide_actual_cause, decide_weak_cause
from .tree import detect_tree

EXIT_OK, EXIT_USAGE, EXIT_NOT_APPLICABLE, EXIT_CAP = 0, 2, 3, 4


class UsageError(Exception):
    pass


def parse_assignment(text: str) -> dict:
    """``"X1=v1,X2=v2"`` (or a JSON object) to a dict of strings."""
    text = text.strip()
    if text.startswith("{"):
        return {k: str(v) for k, v in json.loads(text).items()}
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        name, sep, value = part.partition("=")
        if not sep or not name.strip() or not value.strip():
            raise UsageError(f"expected NAME=VALUE, got {part!r}")
        if name.strip() in out:
            raise UsageError(f"{name.strip()!r} assigned twice")
        out[name.strip()] = value.strip()
    return out


def _emit(obj):
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _query_args(p, contexts=False):
    p.add_argument("--model", required=True, help="model JSON file")
    p.add_argument("--cause", required=True, help='cause, e.g. "A1=1,A2=1"')
    p.add_argument("--event", required=True, help='event, e.g. "B=1" or "!(A=0 & B=1)"')
    if contexts:
        p.add_argument("--contexts", required=True, help="context-set JSON file")
    else:
        p.add_argument("--context", required=True, help='context, e.g. "U1=1,U2=0"')
    p.add_argument("--algorithm", choices=ALGORITHMS, default="auto")
    p.add_argument("--decomposition", help="decomposition JSON file (needed for --algorithm decomp)")
    p.add_argument("--no-fallback", action="store_true",
                   help="fail (exit 3) instead of falling back to brute force")
    p.add_argument("--cap", type=int, default=20, help="brute-force limit on |V \\ X|")
    p.add_argument("--width-bound", type=int, help="largest layer/block width accepted")
    p.add_argument("--domain-bound", type=int, help="largest relevant domain accepted")


def _load_query(args):
    model = load_model(args.model)
    cause = parse_assignment(args.cause)
    event = as_event(args.event, model)
    dec = load_decomposition(args.decomposition) if getattr(args, "decomposition", None) else None
    if getattr(args, "algorithm", None) == "decomp" and dec is None:
        raise UsageError("--algorithm decomp requires --decomposition")
    return model, cause, event, dec


def _solver_kwargs(args, dec):
    return dict(algorithm=args.algorithm, decomposition=dec, fallback=not args.no_fallback,
                cap=args.cap, width_bound=args.width_bound, domain_bound=args.domain_bound)


def cmd_evaluate(args):
    model = load_model(args.model)
    u = parse_assignment(args.context)
    model.check_context(u)
    iv = parse_assignment(args.intervene) if args.intervene else {}
    if iv:
        model.check_assignment(iv)
    values = model.solve(u, iv)
    out = {"values": {v: values[v] for v in model.endogenous}}
    if args.event:
        event = as_event(args.event, model)
        out["event"] = render(event)
        out["holds"] = compile_event(event)(values)
    _emit(out)


def _decide(args, fn):
    model, cause, event, dec = _load_query(args)
    u = parse_assignment(args.context)
    result = fn(model, cause, event, u, trace=args.trace, witness=args.witness, **_solver_kwargs(args, dec))
    report = result.to_dict()
    trace = report.pop("trace", None)
    if trace is not None:
        json.dump(trace, sys.stderr, indent=2)
        sys.stderr.write("\n")
    _emit(report)


def cmd_weak_cause(args):
    _decide(args, decide_weak_cause)


def cmd_actual_cause(args):
    _decide(args, decide_actual_cause)


def cmd_explanation(args):
    model, cause, event, dec = _load_query(args)
    C = load_contexts(args.contexts, model)
    kw = _solver_kwargs(args, dec)
    backend = _backend(kw)
    verdict = is_explanation(model, cause, event, C, backend)
    out = verdict.to_dict()
    try:
        star = largest_explaining_subset(model, cause, event, C, backend)
        out["largest_subset"] = None if star is None else star.to_json()
    except ValueError as exc:
        out["largest_subset"] = None
        out["largest_subset_error"] = str(exc)
    _emit(out)


def _backend(kw):
    def run(model, cause, event, u):
        return decide_weak_cause(model, cause, event, u, **kw).decision
    return run


def cmd_partial(args):
    model, cause, event, dec = _load_query(args)
    C = load_contexts(args.contexts, model)
    if C.probabilities is None:
        raise UsageError("partial-explanation needs a probability 'p' on every context")
    try:
        alpha = Fraction(args.alpha)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad --alpha {args.alpha!r}") from None
    backend = _backend(_solver_kwargs(args, dec))
    out = {"alpha": str(alpha)}
    try:
        power = explanatory_power(model, cause, event, C, backend)
        out["power"] = f"{power.numerator}/{power.denominator}"
        out["defined"] = True
    except UndefinedPower as exc:
        out["power"] = None
        out["defined"] = False
        out["reason"] = str(exc)
    out["alpha_partial"] = is_alpha_partial(model, cause, event, C, alpha, backend)
    out["partial"] = out["defined"] and Fraction(out["power"]) > 0
    _emit(out)


def cmd_reduce(args):
    model = load_model(args.model)
    cause = parse_assignment(args.cause)
    event = as_event(args.event, model)
    out = {}
    if args.context:
        u = parse_assignment(args.context)
        model.check_context(u)
        s1 = strip_nonancestors(model, cause, event, u)
        s2 = strip_blocked(model, s1.cause, event, u)
        out["strip"] = {"kept": s2.cause, "dropped": list(s1.dropped) + list(s2.dropped),
                        "flagged": sorted(set(s1.flagged) | set(s2.flagged))}
        cause = s2.cause
    classes = classify_relevance(model, cause, event)
    out["classes"] = classification_report(classes)
    if cause:
        reduced = reduce_model(model, cause, event, classes=classes)
        out["relevant"] = list(reduced.endogenous)
        if args.output:
            save_model(reduced, args.output)
            out["written"] = args.output
    _emit(out)


def _cause_names(text):
    return [v.partition("=")[0].strip() for v in text.split(",") if v.strip()]


def cmd_detect(args):
    model = load_model(args.model)
    X = _cause_names(args.cause)
    Y = args.effect
    for v in X + [Y]:
        if not model.is_endogenous(v):
            raise UsageError(f"unknown endogenous variable {v!r}")
    out = {"X": X, "Y": Y}
    tp = detect_tree(model, X[0], Y, args.in_degree_bound) if len(X) == 1 else None
    out["tree"] = None if tp is None else tp.to_dict()
    lay = detect_layered(model, X, Y)
    out["layered"] = None if lay is None else lay.to_dict()
    event = Prim(Y, model.domain(Y)[0])
    reduced = reduce_model(model, X, event)
    triv = trivial_decomposition(reduced, X, event)
    out["trivial_decomposition"] = None if triv is None else triv.to_json()
    _emit(out)


def cmd_decompose_validate(args):
    model = load_model(args.model)
    X = _cause_names(args.cause)
    event = as_event(args.event, model)
    dec = load_decomposition(args.decomposition)
    target = reduce_model(model, X, event) if args.reduced else model
    _emit(validate_decomposition(target, X, event, dec).to_dict())


def cmd_generate(args):
    cfg = GeneratorConfig(shape=args.shape, n_vars=args.n_vars, max_domain=args.max_domain,
                          max_in_degree=args.max_in_degree, layer_width=args.layer_width,
                          n_layers=args.n_layers, seed=args.seed, nondegenerate=args.nondegenerate)
    inst = generate_instance(cfg)
    data = model_to_json(inst.model)
    if args.output:
        save_model(inst.model, args.output)
    _emit({"seed": args.seed, "shape": args.shape, "cause": list(inst.cause), "effect": inst.effect,
           "model": None if args.output else data, "written": args.output})


def cmd_bench(args):
    meta = {"k_min": args.k_min, "k_max": args.k_max, "width": args.width, "seed": args.seed,
            "brute_max_k": args.brute_max_k, "brute_budget": args.brute_budget}
    rows = bench_mod.run_bench(args.k_min, args.k_max, args.width, args.seed, args.brute_max_k,
                               args.brute_budget, args.repeat)
    text = bench_mod.to_csv(rows, meta) if args.format == "csv" else bench_mod.to_json(rows, meta)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        _emit({"written": args.output, "rows": len(rows)})
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hpcause", description="Weak and actual causes in finite causal models")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evaluate", help="solve a model under a context (and optional intervention)")
    p.add_argument("--model", required=True)
    p.add_argument("--context", required=True)
    p.add_argument("--intervene")
    p.add_argument("--event")
    p.set_defaults(func=cmd_evaluate)

    for name, fn, helptext in (("weak-cause", cmd_weak_cause, "decide a weak cause"),
                               ("actual-cause", cmd_actual_cause, "decide an actual cause")):
        p = sub.add_parser(name, help=helptext)
        _query_args(p)
        p.add_argument("--witness", action="store_true", help="include an AC2 witness when positive")
        p.add_argument("--trace", action="store_true", help="write the relations R^i to stderr")
        p.set_defaults(func=fn)

    p = sub.add_parser("explanation", help="check EX1-EX4 relative to a context set")
    _query_args(p, contexts=True)
    p.set_defaults(func=cmd_explanation)

    p = sub.add_parser("partial-explanation", help="explanatory power and alpha-partial check")
    _query_args(p, contexts=True)
    p.add_argument("--alpha", default="1", help="threshold as a fraction, e.g. 1/2")
    p.set_defaults(func=cmd_partial)

    p = sub.add_parser("reduce", help="classify variables and build the reduced model")
    p.add_argument("--model", required=True)
    p.add_argument("--cause", required=True)
    p.add_argument("--event", required=True)
    p.add_argument("--context", help="also strip the cause under this context")
    p.add_argument("--output", help="write the reduced model here")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("detect", help="check tree / layered / trivial-decomposition structure")
    p.add_argument("--model", required=True)
    p.add_argument("--cause", required=True, help="cause variables, e.g. A1,A2")
    p.add_argument("--effect", required=True, help="effect variable Y")
    p.add_argument("--in-degree-bound", type=int)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("decompose-validate", help="check a decomposition against D1-D6")
    p.add_argument("--model", required=True)
    p.add_argument("--cause", required=True)
    p.add_argument("--event", required=True)
    p.add_argument("--decomposition", required=True)
    p.add_argument("--reduced", action="store_true", help="validate against the reduced model")
    p.set_defaults(func=cmd_decompose_validate)

    p = sub.add_parser("generate", help="write a seeded random model")
    p.add_argument("--shape", choices=SHAPES, default="random-dag")
    p.add_argument("--n-vars", type=int, default=5)
    p.add_argument("--max-domain", type=int, default=2)
    p.add_argument("--max-in-degree", type=int, default=3)
    p.add_argument("--layer-width", type=int, default=2)
    p.add_argument("--n-layers", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--nondegenerate", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="scaling report on layered chains and caterpillar trees")
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=30)
    p.add_argument("--width", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--brute-max-k", type=int, default=15)
    p.add_argument("--brute-budget", type=float, default=2.0, help="seconds per brute-force query")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except NotApplicable as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    except OracleCapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, ModelError, EventSyntaxError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
