import json
import subprocess
import sys

import pytest

from hopfverify.algfile import fixture_path
from hopfverify.cli import main

BROKEN = f"file:{fixture_path('broken')}"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_hopf_bicross(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "hopf", "--algebra", "bicross", "--order", "3", "-q")
    assert code == 0
    assert out.strip().endswith("6 checks, all passed")


def test_verify_qybe(capsys):
    code, out, err = run(capsys, "verify", "--suite", "qybe", "--order", "2")
    assert code == 0
    assert "qybe" in out
    assert "[1/1] PASS qybe" in err


def test_verify_broken_file_exits_one_with_jacobi_witness(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "hopf", "--algebra", BROKEN, "--order", "2", "-q")
    assert code == 1
    assert "FAIL  jacobi" in out
    assert "(P+,E1,F1): " in out


def test_json_report_is_deterministic(capsys):
    argv = ["verify", "--suite", "jacobi", "--suite", "limits", "--order", "2", "--format", "json", "-q"]
    code, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv, "--jobs", "2")
    assert code == 0 and first == second
    doc = json.loads(first)
    assert doc["schema"] == "hopfverify.report/1"
    assert doc["passed"] is True
    assert "timings" not in doc
    assert [c["check"] for c in doc["checks"]][:4] == ["jacobi"] * 4


def test_json_failure_witnesses_are_algfile_text(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "jacobi", "--algebra", BROKEN, "-K", "1", "--format", "json", "-q")
    assert code == 1
    doc = json.loads(out)
    residual = doc["checks"][0]["failures"][0]["residual"]
    assert residual.startswith("-2*P+")


def test_json_timings_on_request(capsys):
    _, out, _ = run(capsys, "verify", "--suite", "jacobi", "--algebra", "classical", "-K", "1",
                    "--format", "json", "--timings", "-q")
    doc = json.loads(out)
    assert len(doc["timings"]["seconds"]) == len(doc["checks"])


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--suite", "qybe", "--algebra", "tilde"],
        ["verify", "--algebra", "nope"],
        ["verify", "--order", "-1"],
        ["verify", "--algebra", "file:/does/not/exist.alg"],
        ["map", "--from", "classical", "--to", "tilde", "--expr", "P+"],
        ["eval", "--expr", "P1 + Q7"],
    ],
)
def test_config_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("hopfverify: error:")


def test_parse_error_reports_position(capsys):
    code, _, err = run(capsys, "eval", "--expr", "P1 + P2 $")
    assert code == 2
    assert "line 1, col 9" in err


def test_env_order(capsys, monkeypatch):
    monkeypatch.setenv("HOPFVERIFY_ORDER", "0")
    code, out, _ = run(capsys, "eval", "--expr", "[K3,P+]")
    assert (code, out.strip()) == (0, "P+")
    monkeypatch.setenv("HOPFVERIFY_ORDER", "six")
    assert run(capsys, "eval", "--expr", "P+")[0] == 2


def test_map_examples(capsys):
    code, out, _ = run(capsys, "map", "--from", "tilde", "--to", "bicross", "--expr", "F1~", "-K", "3")
    assert code == 0
    assert out.strip() == (
        "z*exp(1/2*z*P+)*P1 + exp(1/2*z*P+)*F1 + 1/2*z*exp(1/2*z*P+)*P2*J3"
        " + 1/2*z*exp(1/2*z*P+)*P-*E1"
    )
    assert run(capsys, "map", "--from", "bicross", "--to", "tilde", "--expr", "P+")[1].strip() == "P+~"
    assert run(capsys, "map", "--roundtrip", "--expr", "K3")[1].strip() == "K3"
    assert run(capsys, "map", "--from", "classical", "--to", "kinematical", "--expr", "F2")[1].strip() == "J1 + K2"


def test_map_tensor(capsys):
    code, out, _ = run(capsys, "map", "--from", "bicross", "--to", "tilde", "-K", "1", "--expr", "P+ (x) P-")
    assert code == 0
    assert "(x)" in out


def test_eval_examples(capsys):
    code, out, _ = run(capsys, "eval", "--expr", "[F1,[F2,K3]] + [F2,[K3,F1]] + [K3,[F1,F2]]")
    assert (code, out.strip()) == (0, "0")
    code, out, _ = run(capsys, "eval", "--expr", "M2", "-K", "1")
    assert out.strip() == "2*P+*P- + z*P+^2*P- - P1^2 - z*P+*P1^2 - P2^2 - z*P+*P2^2"
    assert run(capsys, "eval", "--order", "0", "--expr", "[K3,P-]")[1].strip() == "-P-"
    code, out, _ = run(capsys, "eval", "--algebra", "tilde", "--expr", "Wtp", "-K", "0")
    assert out.strip() == "P+~*J3~ - P1~*E2~ + P2~*E1~"


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    for word in ("presentations:", "suites:", "qybe", "tilde -> bicross", "kernel:"):
        assert word in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "hopfverify", "eval", "--expr", "[E1,P-]", "-K", "0"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "P1"
