"""Layered and tree algorithms against brute force on growing instances.

    python3 demos/scaling.py [k_max]
"""
import sys

from hpcause.bench import run_bench


def main(k_max=16):
    print(f"{'k':>3} {'|V|':>4} {'layered ms':>11} {'tree ms':>8} {'brute ms':>10}")
    for r in run_bench(k_min=2, k_max=k_max, brute_max_k=12, brute_budget=1.0, repeat=3):
        brute = "" if r["brute_s"] is None else f"{r['brute_s'] * 1e3:.1f}" + ("+" if r["brute_timeout"] else "")
        print(f"{r['k']:>3} {r['n_vars']:>4} {r['layered_s'] * 1e3:>11.2f} {r['tree_s'] * 1e3:>8.2f} {brute:>10}")
    print("(+ = brute force hit its time budget)")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 16)
