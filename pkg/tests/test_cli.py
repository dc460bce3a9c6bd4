from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from infimax.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sequence(capsys):
    assert run(capsys, "sequence", "--n", "1*", "--len", "10")[:2] == (0, "3123113122\n")
    assert run(capsys, "sequence", "--n", "1*", "--len", "1")[1] == "3\n"
    assert run(capsys, "sequence", "--n", "1*", "--len", "12", "--beta-hat")[1] == "231131223122\n"


def test_sequence_depth_exhaustion(capsys):
    code, out, err = run(capsys, "sequence", "--n", "1,2", "--len", "1000000")
    assert code == 2
    assert "insufficient index depth" in err


def test_covector_csv(capsys):
    code, out, _ = run(capsys, "covector", "--n", "1*")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 1
    l1, l2, l3 = (float(rows[0][k]) for k in ("l1", "l2", "l3"))
    lam = 0.44504186791262880858
    assert abs(l1 / l3 + lam / (1 - lam**2)) < 1e-10
    assert abs(l2 / l3 + lam**2 / (1 - lam**2)) < 1e-10


def test_fractal_rows(capsys):
    code, out, _ = run(capsys, "fractal", "--n", "1*", "--depth", "1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 6
    assert list(rows[0]) == ["value", "a0", "err"]


def test_itm_symbols(capsys):
    code, out, _ = run(capsys, "itm", "--n", "1*", "--x0", "0", "--len", "10")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert "".join(r["symbol"] for r in rows) == "3123113122"
    code, out, _ = run(capsys, "itm", "--n", "1*", "--len", "10", "--format", "json")
    assert json.loads(out)["symbols"] == "3123113122"


def test_attractor_json_round_trip(capsys):
    code, out, _ = run(capsys, "attractor", "--n", "1*", "--iters", "3", "--format", "json")
    data = json.loads(out)
    assert [s["k"] for s in data["steps"]] == [0, 1, 2, 3]
    assert json.loads(json.dumps(data)) == data
    assert data["steps"][0]["components"] == [[0.0, 1.0]]


def test_complexity(capsys):
    code, out, _ = run(capsys, "complexity", "--n", "1*", "--depth", "3", "--len", "1000")
    _, word, _ = run(capsys, "sequence", "--n", "1*", "--len", "1000")
    word = word.strip()
    expected = [f"{j},{len({word[i:i + j] for i in range(len(word) - j + 1)})}" for j in (1, 2, 3)]
    assert out.splitlines() == ["j,p"] + expected
    assert expected[:2] == ["1,3", "2,6"]


def test_verify_pass_and_usage_errors(capsys):
    assert run(capsys, "verify", "--n", "1*")[0] == 0
    assert run(capsys, "verify", "--n", "1,2;(3,4)")[0] == 0
    code, out, _ = run(capsys, "verify", "--n", "0*", "--format", "json")
    assert code == 2 and json.loads(out)["error_type"] == "IndexListError"
    with pytest.raises(SystemExit) as exc:
        main(["covector"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["covector", "--n", "1*", "--tol", "-1"])
    assert exc.value.code == 2


def test_verify_failure_exit_code(capsys, monkeypatch):
    from infimax import checks

    def failing(n, seed=0):
        return [checks.CheckResult("forced", False, "forced failure", {"n": str(n)})]

    monkeypatch.setattr(checks, "run_all", failing)
    code, out, _ = run(capsys, "verify", "--n", "1*")
    assert code == 1
    assert "FAIL" in out and "forced" in out


def test_output_is_deterministic(capsys, tmp_path):
    outputs = []
    for i in range(2):
        path = tmp_path / f"out{i}.json"
        assert main(["fractal", "--n", "1,2;(3,4)", "--depth", "4", "--format", "json", "--out", str(path)]) == 0
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]
    assert len(json.loads(outputs[0])["points"]) > 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "infimax", "sequence", "--n", "2*", "--len", "8"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "31122311\n"
