import json
import shutil
import subprocess
import sys

import pytest

from coulombkit.cli import main

from conftest import FIXTURES


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def fx(name):
    return str(FIXTURES / name)


def test_classify_report(capsys):
    code, out, _ = run(capsys, "classify", fx("a2_11.json"))
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["verdict"] == "Ugly"
    assert doc["conventions"] == {"lattice": "own", "grading": "2Delta"}
    assert doc["timing"] is None and doc["command"] == "classify"


def test_reports_are_deterministic(capsys):
    first = run(capsys, "classify", fx("d4_1211.json"))[1]
    second = run(capsys, "classify", fx("d4_1211.json"))[1]
    assert first == second


def test_timing_flag(capsys):
    doc = json.loads(run(capsys, "--timing", "sl2", "--flavors", "3")[1])
    assert isinstance(doc["timing"], float)


def test_hilbert_expect(capsys):
    code, out, _ = run(capsys, "hilbert", fx("u1_w3.json"), "--cutoff", "8",
                       "--expect", "(1+t^3)/((1-t^2)(1-t^3))")
    assert code == 0 and out.splitlines()[0] == "degree\tcoefficient"
    code, _, err = run(capsys, "hilbert", fx("u1_w3.json"), "--cutoff", "8", "--expect", "1/(1-t)^2")
    assert code == 1 and "mismatch" in err


@pytest.mark.parametrize("argv", [
    ["classify", "missing.json"],
    ["frobnicate"],
    ["hilbert", "FIXTURE:a2_21.json", "--cutoff", "4"],
    ["delta", "FIXTURE:a2_11.json", "1,2"],
    ["ci", "FIXTURE:a2_11.json", "--method", "fast"],
    ["classify", "FIXTURE:checks.json"],
])
def test_usage_errors_exit_2(capsys, argv):
    argv = [fx(a.split(":", 1)[1]) if a.startswith("FIXTURE:") else a for a in argv]
    assert run(capsys, *argv)[0] == 2


def test_malformed_json_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert run(capsys, "classify", str(bad))[0] == 2


def test_roots_tsv(capsys):
    code, out, _ = run(capsys, "roots", "A2")
    assert code == 0
    assert out.splitlines() == ["root\ttag\theight", "0,1\tReal\t1", "1,0\tReal\t1", "1,1\tReal\t2"]


def test_delta(capsys):
    doc = json.loads(run(capsys, "delta", fx("affine_a1_delta.json"), "3;0")[1])
    assert doc["result"]["two_delta"] == 6


def test_ci_and_strata(capsys):
    doc = json.loads(run(capsys, "ci", fx("a1_2_w2.json"))[1])
    assert doc["result"]["is_ci"] is False
    doc = json.loads(run(capsys, "strata", fx("affine_a1_2delta.json"))[1])
    assert doc["result"]["bijection"]["labels_match"] is False
    code, out, _ = run(capsys, "strata", fx("a1_1_w2.json"), "--format", "dot")
    assert code == 0 and out.count("digraph") == 2


def test_shipped_checks_pass(capsys, tmp_path):
    code, out, _ = run(capsys, "verify-paper", "--archive", str(tmp_path))
    assert code == 0 and out.rstrip().endswith("0 recorded")
    assert "FAIL" not in out
    doc = json.loads((tmp_path / "verify-paper.json").read_text(encoding="utf-8"))
    assert doc["result"]["passed"] is True


def test_corrupted_fixture_fails_with_anchor(capsys, tmp_path):
    for p in FIXTURES.glob("*.json"):
        shutil.copy(p, tmp_path / p.name)
    checks = json.loads((tmp_path / "checks.json").read_text(encoding="utf-8"))
    checks[0]["expected"]["verdict"] = "Good"
    (tmp_path / "checks.json").write_text(json.dumps(checks), encoding="utf-8")
    code, out, _ = run(capsys, "verify-paper", "--fixtures", str(tmp_path))
    assert code == 1
    failed = [line for line in out.splitlines() if line.startswith("FAIL")]
    assert len(failed) == 1 and checks[0]["anchor"] in failed[0]


def test_missing_fixture_directory(capsys, tmp_path):
    assert run(capsys, "verify-paper", "--fixtures", str(tmp_path))[0] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "coulombkit.cli", "sl2", "--flavors", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["surface"]["strata_count"] == 3
