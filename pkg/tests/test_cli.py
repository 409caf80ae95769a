import csv
import json
import subprocess
import sys

import pytest

from arithcx import cli
from arithcx.cfrac import PeriodicCF


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


class TestExamples:
    def test_expand(self, capsys):
        assert run(capsys, "expand", "sqrt(11)") == (0, "[3; (3, 6)]\n", "")

    def test_expand_quadruple(self, capsys):
        code, data = run_json(capsys, "expand", "0", "1", "1", "11")
        assert code == 0 and data["period"] == [3, 6] and data["signature"] == [1, 2]

    def test_rank(self, capsys):
        code, data = run_json(capsys, "rank", "(3+sqrt(5))/2")
        assert code == 0
        assert (data["rank"], data["complexity"], data["method"]) == (0, 1, "family-match")

    def test_sha(self, capsys):
        code, data = run_json(capsys, "sha", "sqrt(10)")
        assert code == 0
        assert (data["h_plus"], data["sha_divisors"], data["sha_order"]) == (2, [2, 2], 4)

    def test_schema_version(self, capsys):
        for argv in (["expand", "sqrt(3)"], ["classgroup", "40"], ["pell", "7"], ["bej-classify", "1", "0", "-3"]):
            code, data = run_json(capsys, *argv)
            assert code == 0 and data["schema_version"] == cli.SCHEMA_VERSION


class TestCommands:
    def test_eval(self, capsys):
        code, data = run_json(capsys, "eval", "[1; (2)]")
        assert code == 0 and data["value"] == "sqrt(2)" and data["quadruple"] == [0, 1, 1, 2]

    def test_matrix(self, capsys):
        code, data = run_json(capsys, "matrix", "[1; (1, 2)]")
        assert data["induced_quadratic"] == [1, 0, -3] and data["det"] == 1
        code, data = run_json(capsys, "matrix", "--symbolic", "1", "2")
        assert data["E"][1][0] == "x1"

    def test_bej_build(self, capsys):
        code, data = run_json(capsys, "bej-build", "1", "2", "1", "0", "-3")
        assert code == 0 and len(data["equations"]) == 3
        code, data = run_json(capsys, "bej-build", "1", "2", "--symbolic")
        assert data["coefficients"] is None and "A" in data["variables"]

    def test_bej_check(self, capsys):
        code, data = run_json(capsys, "bej-check", "sqrt(3)")
        assert data["member"] and data["projection"] == [1, 2] and data["on_conic"]
        code, data = run_json(capsys, "bej-check", "sqrt(3)", "--point", "[1; (1, 3)]")
        assert code == 0 and not data["member"] and "projection" not in data

    def test_bej_classify(self, capsys):
        code, data = run_json(capsys, "bej-classify", "1", "2", "1")
        assert data["count"] == 3

    def test_pell(self, capsys):
        assert run(capsys, "pell", "3", "--sign", "-1")[1] == "y^2 - 3x^2 = -1: no solution\n"
        code, data = run_json(capsys, "pell", "2", "--sign", "-1")
        assert data["solution"] == {"x": 1, "y": 1}
        code, data = run_json(capsys, "pell", "--conic", "1", "0", "-2", "--parity", "1", "--bound", "10")
        assert sorted(map(tuple, data["solutions"])) == sorted(
            (sx * x, sy * y) for x, y in ((1, 1), (5, 7)) for sx in (1, -1) for sy in (1, -1)
        )

    def test_complexity(self, capsys):
        code, data = run_json(capsys, "complexity", "sqrt(11)")
        assert code == 0 and data["complexity"] == 2 and data["predicted_rank"] == 1

    def test_classgroup(self, capsys):
        code, data = run_json(capsys, "classgroup", "40")
        assert data["h_plus"] == 2 and data["group"] == [2]

    def test_corroborate(self, capsys):
        code, data = run_json(capsys, "corroborate-curve", "7", "--height-bound", "50")
        assert code == 0 and data["all_torsion"]
        text = run(capsys, "corroborate-curve", "3", "--height-bound", "10")[1]
        assert "  O order 1" in text


class TestExitCodes:
    @pytest.mark.parametrize(
        "argv",
        [
            ["expand", "sqrt(4)"],
            ["expand", "1", "1", "1", "4"],
            ["eval", "[1; 2]"],
            ["pell", "9"],
            ["pell", "--conic", "1", "0", "-3", "--bound", "0"],
            ["classgroup", "7"],
            ["matrix"],
            ["bej-build", "1", "2"],
            ["corroborate-curve", "2"],
        ],
    )
    def test_validation_error(self, capsys, argv):
        code, out, err = run(capsys, *argv)
        assert code == 2 and out == "" and err.startswith(f"arithcx {argv[0]}: error:")

    def test_soft_failure_partial_report(self, capsys):
        code, data = run_json(capsys, "complexity", "(1+sqrt(5))/2")
        assert code == 3
        assert data["error"] == "NoKnownFamily" and data["expansion"] == "[(1)]"

    def test_no_stable_signature_is_soft(self, capsys):
        code, data = run_json(capsys, "rank", "sqrt(7)", "--window", "3")
        assert code == 3 and data["error"] == "NoStableSignature" and data["signature"] == [1, 4]

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["frobnicate"])
        assert exc.value.code == 2
        capsys.readouterr()

    def test_verify_failure(self, capsys, monkeypatch):
        real = cli.euler_cm_members

        def broken(b_max):
            yield from real(b_max)
            yield b_max + 1, PeriodicCF((1,), (2,)), PeriodicCF((1,), (3,))

        monkeypatch.setattr(cli, "euler_cm_members", broken)
        code, data = run_json(capsys, "verify-family", "euler-cm", "--b-max", "5")
        assert code == 1 and not data["all_pass"]


class TestVerifyFamily:
    def test_cm(self, capsys):
        code, data = run_json(capsys, "verify-family", "euler-cm", "--b-max", "50")
        assert code == 0 and data["all_pass"] and len(data["members"]) == 50

    def test_q(self, capsys):
        code, data = run_json(capsys, "verify-family", "euler-q", "--b-max", "101")
        assert code == 0 and data["all_pass"] and len(data["members"]) == 50
        assert data["members"][0] == {"b": 3, "expansion": "[2; (1, 1)]", "expected": "[2; (1, 1)]", "pass": True}


@pytest.mark.parametrize(
    "argv",
    [["expand", "(3+sqrt(5))/2"], ["classgroup", "221"], ["rank", "sqrt(13)"], ["pell", "--conic", "2", "1", "-1", "--bound", "40"]],
)
@pytest.mark.parametrize("fmt", ["text", "json"])
def test_deterministic(capsys, argv, fmt):
    first = run(capsys, *argv, "--format", fmt)
    second = run(capsys, *argv, "--format", fmt)
    assert first == second


def test_report(tmp_path, capsys):
    out = tmp_path / "rep"
    code, data = run_json(
        capsys, "report", "--out", str(out), "--b-max", "10", "--d-max", "60", "--bound", "30", "--height-bound", "30"
    )
    assert code == 0
    names = {p.name for p in out.iterdir()}
    for stem in ("euler_cm", "euler_q", "class_numbers", "conic_points", "curve_points"):
        assert {f"{stem}.csv", f"{stem}.png"} <= names
        assert (out / f"{stem}.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    with open(out / "euler_cm.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["b", "b1", "a1", "a2"] and rows[3] == ["3", "3", "3", "6"]
    assert len(data["files"]) == 10


def test_entry_point():
    res = subprocess.run([sys.executable, "-m", "arithcx.cli", "expand", "sqrt(6)"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "[2; (2, 4)]\n"
