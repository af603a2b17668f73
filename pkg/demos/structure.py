"""What the structural algorithms see.

Reduces a model to the variables relevant for a query, detects tree and
layered structure, and prints the relations the layered algorithm builds.

    python3 demos/structure.py
"""
from hpcause import classify_relevance, decide_weak_cause, detect_layered, detect_tree, reduce_model
from hpcause.generate import GeneratorConfig, generate_instance, layered_chain
from hpcause.reduction import classification_report


def main():
    inst = generate_instance(GeneratorConfig(shape="random-dag", n_vars=8, edge_prob=0.3, seed=2))
    m, X, Y = inst.model, list(inst.cause), inst.effect
    event = f"{Y}={m.domain(Y)[-1]}"
    print(f"random DAG, cause {X}, event {event}")
    groups = {}
    for v, cls in classification_report(classify_relevance(m, X, event)).items():
        groups.setdefault(cls, []).append(v)
    for cls, names in sorted(groups.items()):
        print(f"  class {cls:>10}: {names}")
    red = reduce_model(m, X, event)
    print(f"  reduced model keeps {list(red.endogenous)}")
    print(f"  tree: {detect_tree(m, X[0], Y) is not None}, layered: {detect_layered(m, X, Y) is not None}")

    inst = layered_chain(3)
    m, X = inst.model, inst.cause
    u = {v: "1" for v in m.exogenous}
    s = m.solve(u)
    lay = detect_layered(m, X, "Y")
    print(f"\nlayered chain, layers {lay.layers}")
    d = decide_weak_cause(m, {X[0]: s[X[0]]}, f"Y={s['Y']}", u, trace=True)
    print(f"{X[0]}={s[X[0]]} weak cause of Y={s['Y']}: {d.decision} via {d.algorithm}")
    for i, level in enumerate(d.trace["levels"]):
        print(f"  R^{i}: {len(level)} triples")


if __name__ == "__main__":
    main()
