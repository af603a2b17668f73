import json

from hpcause.bench import COLUMNS, SCHEMA_VERSION, linear_fit, run_bench, to_csv, to_json


def test_rows_and_brute_guardrail():
    rows = run_bench(k_min=2, k_max=5, brute_max_k=3, repeat=1)
    assert [r["k"] for r in rows] == [2, 3, 4, 5]
    assert all(set(r) == set(COLUMNS) for r in rows)
    assert all(r["brute_s"] is not None for r in rows if r["k"] <= 3)
    assert all(r["brute_s"] is None for r in rows if r["k"] > 3)
    assert all(r["layered_s"] > 0 and r["tree_s"] > 0 for r in rows)


def test_report_formats():
    rows = run_bench(k_min=2, k_max=3, brute_max_k=2, repeat=1)
    text = to_csv(rows, {"k_max": 3})
    first, header = text.splitlines()[:2]
    assert first.startswith(f"# {SCHEMA_VERSION}")
    assert header == ",".join(COLUMNS)
    assert text.splitlines()[3].split(",")[COLUMNS.index("brute_s")] == ""
    doc = json.loads(to_json(rows, {"k_max": 3}))
    assert doc["schema"] == SCHEMA_VERSION and len(doc["rows"]) == 2


def test_linear_fit():
    slope, icpt = linear_fit([1, 2, 3], [3, 5, 7])
    assert abs(slope - 2) < 1e-12 and abs(icpt - 1) < 1e-12
