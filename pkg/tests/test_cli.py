import json
import subprocess
import sys

import pytest

from metacyclic.cli import JobConfig, UsageError, main, run
from metacyclic.algebra import GroupParams


def call(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, out


def build(capsys, tmp_path, name, *extra):
    path = tmp_path / name
    status, _ = call(capsys, "build", "--n", "7", "--m", "3", "--r", "2", "--q", "2", "--out", str(path), *extra)
    assert status == 0
    return str(path)


def test_decompose(capsys):
    status, out = call(capsys, "decompose", "--n", "7", "--m", "3", "--r", "2", "--q", "2")
    rep = json.loads(out)
    assert status == 0
    assert rep["kinds"] == ["F_2C_3", "skew(k=1)", "skew(k=1)"]
    assert rep["shape"] == "F_2C_3 + M_3(F_2) + M_3(F_2)"
    assert rep["dimension"] == 21


def test_decompose_text(capsys):
    status, out = call(capsys, "decompose", "--n", "5", "--m", "2", "--r", "4", "--q", "3", "--format", "text")
    assert status == 0
    assert "shape: F_3C_2 + M_2(F_9)" in out


def test_domain_error_exit_code(capsys):
    status, out = call(capsys, "decompose", "--n", "7", "--m", "3", "--r", "3", "--q", "2")
    assert status == 1
    assert json.loads(out)["error"] == "BadGroupParams"


def test_analyze_zero_code(capsys, tmp_path):
    path = build(capsys, tmp_path, "zero.json", "--poly", "x^7+1")
    status, out = call(capsys, "analyze", "--code", path)
    assert status == 1
    assert json.loads(out)["error"] == "ZeroCode"


def test_analyze_round_trip(capsys, tmp_path):
    path = build(capsys, tmp_path, "rep.json", "--gen", "e+a+a^2+a^3+a^4+a^5+a^6")
    report = tmp_path / "report.json"
    assert call(capsys, "analyze", "--code", path, "--out", str(report))[0] == 0
    first = json.loads(report.read_text())
    assert (first["dim"], first["d_exact"], first["d_bound"]) == (3, 7, 7)
    status, out = call(capsys, "analyze", "--code", str(report))
    assert status == 0 and json.loads(out) == first


def test_attack_check(capsys, tmp_path):
    path = build(capsys, tmp_path, "rep.json", "--gen", "e+a+a^2+a^3+a^4+a^5+a^6")
    _, out1 = call(capsys, "attack-check", "--code", path)
    _, out2 = call(capsys, "attack-check", "--code", path)
    assert out1 == out2
    assert json.loads(out1)["attack"]["exact"]


def test_induce_and_intersect(capsys, tmp_path):
    rep_a = build(capsys, tmp_path, "repA.json", "--h", '["a"]', "--poly", "x^6+x^5+x^4+x^3+x^2+x+1")
    rep_b = build(capsys, tmp_path, "repB.json", "--h", '["b"]', "--poly", "x^2+x+1")
    status, out = call(capsys, "induce", "--code", rep_a, "--h", '["a"]')
    assert status == 0
    assert json.loads(out)["report"] == {"length": 21, "dim": 3, "d": 7, "index": 3}
    status, out = call(capsys, "intersect", "--h1", '["a"]', "--c1", rep_a, "--h2", '["b"]', "--c2", rep_b)
    rep = json.loads(out)
    assert status == 0
    assert (rep["dim"], rep["d"], rep["product_bound"]) == (1, 21, 21)
    status, out = call(capsys, "intersect", "--h1", '["a"]', "--c1", rep_a, "--h2", '["a"]', "--c2", rep_a)
    assert status == 1 and json.loads(out)["error"] == "BadSubgroupPair"


def test_usage_errors(capsys, tmp_path, monkeypatch):
    assert call(capsys, "analyze", "--code", str(tmp_path / "missing.json"))[0] == 2
    assert call(capsys, "decompose", "--n", "7", "--m", "3", "--r", "2", "--q", "2", "--budget", "0")[0] == 2
    monkeypatch.setenv("MCC_BUDGET", "-5")
    assert call(capsys, "decompose", "--n", "7", "--m", "3", "--r", "2", "--q", "2")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["decompose", "--n", "7"])
    assert info.value.code == 2


def test_bad_code_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    status, out = call(capsys, "analyze", "--code", str(path))
    assert status == 1 and json.loads(out)["error"] == "ParseError"


def test_run_rejects_bad_config():
    with pytest.raises(UsageError):
        run(JobConfig("decompose", GroupParams(7, 3, 2, 2), budget=0))
    status, report = run(JobConfig("decompose", GroupParams(7, 3, 2, 2)))
    assert status == 0 and report["omega"] == 3


def test_search_empty_grid(capsys):
    status, out = call(capsys, "search", "--n", "2", "--m", "3", "--q", "2")
    assert status == 0 and json.loads(out)["table"] == []


def test_search_deterministic_with_checkpoint(capsys, tmp_path):
    args = ["search", "--n", "7", "--m", "3", "--q", "2", "--r", "2", "--seed", "3"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    ck = tmp_path / "ck.json"
    assert call(capsys, *args, "--out", str(a))[0] == 0
    assert call(capsys, *args, "--out", str(b), "--checkpoint", str(ck))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    # resumed from the checkpoint
    assert call(capsys, *args, "--out", str(b), "--checkpoint", str(ck))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    table = json.loads(a.read_text())["table"]
    assert any(row["code"] == "[21,3,7]" for row in table)


def test_search_random_mode_and_budget_note(capsys):
    status, out = call(capsys, "search", "--n", "7", "--m", "3", "--q", "2", "--mode", "random", "--samples", "3")
    assert status == 0 and json.loads(out)["points"] == 2
    status, out = call(capsys, "search", "--n", "7", "--m", "6", "--q", "2", "--budget", "100")
    rep = json.loads(out)
    assert status == 0 and "BudgetExceeded" in next(iter(rep["notes"].values()))


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "metacyclic.cli", "decompose", "--n", "3", "--m", "2", "--r", "2", "--q", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["omega"] == 2
