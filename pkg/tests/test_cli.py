import json
import subprocess
import sys

import pytest

from quartic_pairs.cli import main
from quartic_pairs.forms import counterexample_pair, q0_eleven_pair

CE = json.dumps(counterexample_pair(9).to_json())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_counterexample(capsys, tmp_path):
    path = tmp_path / "ce.json"
    path.write_text(CE)
    code, out, _ = run(capsys, "analyze", "--system", str(path))
    assert code == 0
    rep = json.loads(out)
    assert rep["q0"] == 4 and rep["q0_by_minimization"] == 4
    code, out2, _ = run(capsys, "analyze", "--system", CE)
    assert out2 == out


def test_analyze_eleven_and_stdin(capsys, monkeypatch):
    import io
    pair = q0_eleven_pair((2, -3, 1, 5, 7, -1, 4, 1, -2, 3, 6))
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(pair.to_json())))
    code, out, _ = run(capsys, "analyze", "--system", "-")
    assert code == 0 and json.loads(out)["q0"] == 11


def test_single_class_has_no_normal_form(capsys):
    code, out, _ = run(capsys, "analyze", "--system", '{"A": [1, 2], "B": [2, 4]}')
    rep = json.loads(out)
    assert code == 0 and rep["normalized"] is None and rep["q0"] == 0


def test_moments(capsys):
    code, out, _ = run(capsys, "moments", "--P", "2", "--t", "4")
    assert code == 0 and json.loads(out)["moment"] == 6
    code, out, _ = run(capsys, "moments", "--P", "2", "--entangled", "1,1,1,1")
    rep = json.loads(out)
    assert rep["I"] == 15184 and rep["bound_3_sum_psi3"] >= rep["I"]


def test_counterexample(capsys):
    code, out, _ = run(capsys, "counterexample", "--s", "9", "--primes", "50", "--search-bound", "12")
    assert code == 0
    assert json.loads(out)["conclusion"] == "CounterexampleConfirmed-at-scale"


def test_local_series_integral_predict_count(capsys):
    sys_json = '{"A": [1, -1, 0, 0], "B": [0, 0, 1, -1]}'
    code, out, _ = run(capsys, "local", "--system", sys_json, "--primes", "13", "--search-bound", "2")
    assert code == 0 and json.loads(out)["conclusion"]
    code, out, _ = run(capsys, "series", "--system", sys_json, "--X", "6")
    assert code == 0 and json.loads(out)["X"] == 6
    code, out, _ = run(capsys, "integral", "--system", sys_json, "--P", "4", "--X", "2")
    assert code == 0 and json.loads(out)["P"] == 4
    code, out, _ = run(capsys, "predict", "--system", sys_json, "--P", "4", "--X", "2")
    assert code == 0 and "prediction" in json.loads(out)
    code, out, _ = run(capsys, "count", "--system", sys_json, "--P", "2")
    assert code == 0 and json.loads(out)["N"] == 81
    code, out, _ = run(capsys, "count", "--system", sys_json, "--P", "2", "--predict", "0")
    assert code == 0 and json.loads(out)["ratio"] is None


def test_output_file(capsys, tmp_path):
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "count", "--system", CE, "--P", "3", "--output", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["N"] == 1


@pytest.mark.parametrize("argv", [["frobnicate"], [], ["count", "--P", "x"],
                                  ["moments", "--P", "3", "--entangled", "1,2"]])
def test_usage_errors_exit_2_without_json(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 2 and out == ""


@pytest.mark.parametrize("argv", [["analyze"], ["analyze", "--system", "{not json"],
                                  ["analyze", "--system", '{"A": [0], "B": [0]}'],
                                  ["moments", "--P", "0"], ["count", "--system", CE, "--P", "-1"]])
def test_precondition_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err


def test_budget_exit_3(capsys):
    code, out, err = run(capsys, "count", "--system", CE, "--P", "40", "--budget", "1000")
    assert code == 3 and out == "" and "budget" in err


def test_thread_env_override(capsys, monkeypatch):
    monkeypatch.setenv("QUARTIC_PAIRS_THREADS", "0")
    code, _, _ = run(capsys, "counterexample", "--s", "9", "--primes", "7", "--search-bound", "2")
    assert code == 2


def test_deterministic_across_threads(capsys, monkeypatch):
    argv = ["counterexample", "--s", "10", "--primes", "30", "--search-bound", "6"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv, "--threads", "4")
    monkeypatch.setenv("QUARTIC_PAIRS_THREADS", "3")
    _, c, _ = run(capsys, *argv)
    assert a == b == c


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "quartic_pairs", "analyze", "--system", CE],
                         capture_output=True, text=True, timeout=120)
    assert res.returncode == 0 and json.loads(res.stdout)["q0"] == 4
    res = subprocess.run([sys.executable, "-m", "quartic_pairs", "bogus"], capture_output=True, text=True)
    assert res.returncode == 2 and res.stdout == ""
