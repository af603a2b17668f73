import json

import pytest

from hpcause.cli import UsageError, main, parse_assignment
from hpcause.io import load_model


@pytest.fixture
def run(capsys):
    def go(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, (json.loads(out) if out.strip().startswith("{") else out), err
    return go


@pytest.fixture
def model(data_dir):
    return f"{data_dir}/arsonists.json"


@pytest.fixture
def contexts(data_dir):
    return f"{data_dir}/arson_contexts.json"


def test_parse_assignment():
    assert parse_assignment("A1=1, A2=0") == {"A1": "1", "A2": "0"}
    assert parse_assignment('{"A1": 1}') == {"A1": "1"}
    with pytest.raises(UsageError):
        parse_assignment("A1")
    with pytest.raises(UsageError):
        parse_assignment("A1=1,A1=0")


def test_weak_cause_auto(run, model):
    code, out, _ = run("weak-cause", "--model", model, "--cause", "A1=1", "--event", "B=1",
                       "--context", "U1=1,U2=1")
    assert code == 0
    assert out["decision"] is True and out["algorithm"] == "tree"
    assert "seconds" in out and "reduction" in out


def test_weak_cause_brute_witness(run, model):
    code, out, _ = run("weak-cause", "--model", model, "--cause", "A1=1", "--event", "B=1",
                       "--context", "U1=1,U2=1", "--algorithm", "brute")
    assert code == 0
    assert out["decision"] is True and out["algorithm"] == "brute"
    assert out["witness"]["w"] == {"A2": "0"} and out["witness"]["xbar"] == {"A1": "0"}


def test_negative_decision_exit_zero(run, model):
    code, out, _ = run("actual-cause", "--model", model, "--cause", "A1=1,A2=1", "--event", "B=1",
                       "--context", "U1=1,U2=1")
    assert code == 0 and out["decision"] is False


def test_trace_goes_to_stderr(run, model):
    code, out, err = run("weak-cause", "--model", model, "--cause", "A1=1", "--event", "B=1",
                         "--context", "U1=1,U2=1", "--trace")
    assert code == 0 and "trace" not in out
    assert json.loads(err)


def test_decomp_without_file_is_usage_error(run, model):
    code, _, err = run("weak-cause", "--model", model, "--cause", "A1=1", "--event", "B=1",
                       "--context", "U1=1,U2=1", "--algorithm", "decomp")
    assert code == 2 and "decomposition" in err


def test_not_applicable_exit(run, tmp_path):
    path = tmp_path / "skip.json"
    data = {"exogenous": {"U": ["0", "1"]},
            "endogenous": {"X": {"domain": ["0", "1"], "parents": ["U"], "expr": "U=1"},
                           "A": {"domain": ["0", "1"], "parents": ["X"], "expr": "X=1"},
                           "Y": {"domain": ["0", "1"], "parents": ["X", "A"], "expr": "X=1 & A=1"}}}
    path.write_text(json.dumps(data))
    code, _, _ = run("weak-cause", "--model", path, "--cause", "X=1", "--event", "Y=1", "--context", "U=1",
                     "--algorithm", "layered", "--no-fallback")
    assert code == 3
    code, out, _ = run("weak-cause", "--model", path, "--cause", "X=1", "--event", "Y=1", "--context", "U=1",
                       "--algorithm", "layered")
    assert code == 0 and out["algorithm"] == "brute"


def test_cap_exit(run, tmp_path):
    path = tmp_path / "g.json"
    assert run("generate", "--shape", "chain", "--n-vars", 6, "--seed", 1, "--output", path)[0] == 0
    m = load_model(path)
    u = ",".join(f"{v}=0" for v in m.exogenous)
    s = m.solve({v: "0" for v in m.exogenous})
    code, _, _ = run("weak-cause", "--model", path, "--cause", f"X={s['X']}", "--event", f"Y={s['Y']}",
                     "--context", u, "--algorithm", "brute", "--cap", 2)
    assert code == 4


def test_bad_inputs(run, model):
    assert run("weak-cause", "--model", model, "--cause", "A1=1", "--event", "B==1",
               "--context", "U1=1,U2=1")[0] == 2
    assert run("weak-cause", "--model", model, "--cause", "Q=1", "--event", "B=1",
               "--context", "U1=1,U2=1")[0] == 2
    assert run("evaluate", "--model", "/nonexistent.json", "--context", "U1=1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["weak-cause", "--model", model])
    assert exc.value.code == 2


def test_evaluate(run, model):
    code, out, _ = run("evaluate", "--model", model, "--context", "U1=1,U2=0", "--intervene", "A1=0",
                       "--event", "B=1")
    assert code == 0
    assert out["values"]["B"] == "0" and out["holds"] is False


def test_explanation(run, model, contexts):
    code, out, _ = run("explanation", "--model", model, "--cause", "A1=1", "--event", "B=1",
                       "--contexts", contexts)
    assert code == 0 and out["is_explanation"] is True
    code, out, _ = run("explanation", "--model", model, "--cause", "A1=1,A2=1", "--event", "B=1",
                       "--contexts", contexts)
    assert out["is_explanation"] is False and out["failed_condition"] == "EX3"


def test_partial_explanation(run, model, contexts):
    code, out, _ = run("partial-explanation", "--model", model, "--cause", "A2=1", "--event", "B=1",
                       "--contexts", contexts, "--alpha", "1")
    assert code == 0
    assert out["power"] == "1/1" and out["alpha_partial"] is True and out["partial"] is True
    code, out, _ = run("partial-explanation", "--model", model, "--cause", "A1=1,A2=1", "--event", "B=1",
                       "--contexts", contexts, "--alpha", "0")
    assert out["defined"] is False and out["alpha_partial"] is False


def test_reduce_and_detect(run, model, tmp_path):
    out_path = tmp_path / "r.json"
    code, out, _ = run("reduce", "--model", model, "--cause", "A1=1,A2=1", "--event", "A1=1",
                       "--context", "U1=1,U2=1", "--output", out_path)
    assert code == 0 and out["strip"]["kept"] == {"A1": "1"}
    assert set(load_model(out_path).endogenous) == {"A1"}
    code, out, _ = run("detect", "--model", model, "--cause", "A1", "--effect", "B")
    assert out["tree"]["path"] == ["A1", "B"]
    assert out["layered"]["layers"] == [["B"], ["A1", "A2"]]


def test_decompose_validate(run, model, tmp_path):
    path = tmp_path / "d.json"
    path.write_text(json.dumps([{"T": ["B"], "S": ["B"]}, {"T": ["A1"], "S": ["A1"]}]))
    code, out, _ = run("decompose-validate", "--model", model, "--cause", "A1=1", "--event", "B=1",
                       "--decomposition", path)
    assert code == 0 and out["valid"] is False
    path.write_text(json.dumps([{"T": ["B"], "S": ["B"]}, {"T": ["A1", "A2"], "S": ["A1", "A2"]}]))
    code, out, _ = run("weak-cause", "--model", model, "--cause", "A1=1", "--event", "B=1",
                       "--context", "U1=1,U2=1", "--algorithm", "decomp", "--decomposition", path)
    assert code == 0 and out["decision"] is True and out["algorithm"] == "decomp"


def test_generate_deterministic(run):
    a = run("generate", "--shape", "layered", "--layer-width", 2, "--n-layers", 3, "--seed", 7)[1]
    b = run("generate", "--shape", "layered", "--layer-width", 2, "--n-layers", 3, "--seed", 7)[1]
    assert a == b and a["model"]


def test_bench_csv(run, tmp_path):
    path = tmp_path / "b.csv"
    code, out, _ = run("bench", "--k-min", 2, "--k-max", 4, "--brute-max-k", 3, "--repeat", 1, "--output", path)
    assert code == 0 and out["rows"] == 3
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# hpcause-bench/1")
    assert lines[1].split(",")[0] == "k"
