"""Two arsonists, one forest fire.

Walks through weak and actual causes under each context, then explanations
and explanatory power relative to the contexts in which the forest burns.

    python3 demos/arsonists.py
"""
from hpcause import (ContextSet, decide_weak_cause, enumerate_causes, explanatory_power, is_explanation)
from hpcause.zoo import arsonists, context


def show(cause):
    return " & ".join(f"{k}={v}" for k, v in cause.items())


def main():
    m = arsonists()
    print("B = A1 or A2; arsonist i drops a match (Ai=1) iff Ui=1\n")

    for a, b in ((1, 1), (1, 0), (0, 1)):
        u = context(a, b)
        weak = enumerate_causes(m, ["A1", "A2"], u, "B=1")
        actual = enumerate_causes(m, ["A1", "A2"], u, "B=1", mode="actual")
        print(f"u=({a},{b})  weak causes of B=1: {[show(c) for c in weak]}")
        print(f"         actual causes:       {[show(c) for c in actual]}")

    # the decision procedure picks the cheapest applicable algorithm
    d = decide_weak_cause(m, {"A1": "1"}, "B=1", context(1, 1), witness=True)
    print(f"\nA1=1 under u=(1,1): {d.decision} via {d.algorithm}; witness {d.witness}")

    C = ContextSet.uniform([context(1, 1), context(1, 0), context(0, 1)])
    print("\nContexts where the forest burns, uniform probability:")
    for cause in ({"A1": "1"}, {"A2": "1"}, {"A1": "1", "A2": "1"}):
        v = is_explanation(m, cause, "B=1", C)
        line = f"  {show(cause):12s} explanation: {bool(v)}"
        if not v:
            line += f" (fails {v.failed_condition}, {v.witness})"
        else:
            line += f", power {explanatory_power(m, cause, 'B=1', C)}"
        print(line)


if __name__ == "__main__":
    main()
