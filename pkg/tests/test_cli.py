import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from hyplattice import accessory, cli, lame_solver, verify


def run_cli(*args: str) -> subprocess.CompletedProcess:
    cmd = [sys.executable, "-m", "hyplattice", *args]
    return subprocess.run(cmd, capture_output=True, text=True)


def test_help():
    cp = run_cli("--help")
    assert cp.returncode == 0, cp.stderr
    assert "sweep" in cp.stdout and "verify" in cp.stdout


def test_density_subcommand():
    cp = run_cli("a", "--k", "1.0", "--tol", "1e-8")
    assert cp.returncode == 0, cp.stderr
    fields = dict(line.split("=", 1) for line in cp.stdout.strip().splitlines())
    assert set(fields) == {"k", "a", "lambda_star", "residual"}
    assert float(fields["a"]) == pytest.approx(7.41629870921, rel=1e-8)
    assert abs(float(fields["residual"])) <= 1e-8


def test_density_subcommand_json():
    cp = run_cli("a", "--k", "2.0", "--tol", "1e-8", "--json")
    assert cp.returncode == 0, cp.stderr
    data = json.loads(cp.stdout)
    assert set(data) == {"k", "a", "lambda_star", "residual"}
    assert data["k"] == 2.0
    assert data["a"] == pytest.approx(11.374784576585, rel=1e-8)


def test_accessory_subcommand():
    cp = run_cli("accessory", "--k", "2.0", "--tol", "1e-8")
    assert cp.returncode == 0, cp.stderr
    fields = dict(line.split("=", 1) for line in cp.stdout.strip().splitlines())
    assert set(fields) == {
        "lambda_minus", "lambda_plus", "lambda_star", "m", "r", "m1", "r1", "e", "a",
    }
    assert float(fields["lambda_minus"]) <= 0.0 <= float(fields["lambda_plus"])
    assert float(fields["m"]) > 0.0 and float(fields["m1"]) > 0.0


def _parse_csv(text: str):
    lines = text.strip().splitlines()
    assert lines[0] == "k,two_omega,a_native,a_normalized,a_normalized_x2"
    return [[float(cell) for cell in line.split(",")] for line in lines[1:]]


def test_sweep_stdout():
    cp = run_cli("sweep", "--k-min", "0.5", "--k-max", "2.0", "--points", "3", "--tol", "1e-7")
    assert cp.returncode == 0, cp.stderr
    rows = _parse_csv(cp.stdout)
    assert [r[0] for r in rows] == pytest.approx([0.5, 1.0, 2.0], rel=1e-12)
    for r in rows:
        assert r[1] == pytest.approx(r[0] / math.hypot(1.0, r[0]), rel=1e-12)
        assert r[4] == pytest.approx(2.0 * r[3], rel=1e-12)


def test_sweep_file_round_trip(tmp_path: Path):
    out = tmp_path / "rows.csv"
    cp = run_cli(
        "sweep", "--k-min", "0.5", "--k-max", "2.0", "--points", "3",
        "--tol", "1e-7", "--out", str(out),
    )
    assert cp.returncode == 0, cp.stderr
    assert cp.stdout == ""
    raw = out.read_bytes()
    assert b"\r" not in raw
    text = raw.decode("ascii")
    # rewriting every parsed cell at 12 significant digits reproduces the
    # file exactly
    lines = text.strip().splitlines()
    for line in lines[1:]:
        cells = line.split(",")
        assert ",".join(f"{float(c):.12g}" for c in cells) == line
    rows = accessory.sweep_rows(0.5, 2.0, 3, 1e-7)
    want = [
        f"{r.k:.12g},{r.two_omega:.12g},{r.a_native:.12g},"
        f"{r.a_normalized:.12g},{r.a_normalized_x2:.12g}"
        for r in rows
    ]
    assert lines[1:] == want


def test_max_subcommand():
    cp = run_cli("max", "--tol", "1e-8")
    assert cp.returncode == 0, cp.stderr
    body = [ln for ln in cp.stdout.strip().splitlines() if not ln.startswith("#")]
    note = [ln for ln in cp.stdout.strip().splitlines() if ln.startswith("#")]
    fields = dict(line.split("=", 1) for line in body)
    assert set(fields) == {"k_star", "two_omega", "a_normalized", "a_normalized_x2"}
    assert float(fields["two_omega"]) == pytest.approx(0.70711, abs=2e-3)
    assert float(fields["a_normalized_x2"]) == pytest.approx(1.6693, abs=2e-3)
    assert note and "both conventions" in note[0]


def test_verify_fast_subcommand():
    cp = run_cli("verify", "--fast")
    assert cp.returncode == 0, cp.stderr
    lines = cp.stdout.strip().splitlines()
    assert len(lines) == 9
    for line in lines:
        assert line.startswith("PASS ")
        name, rest = line[5:].split(" (", 1)
        assert name.replace("-", "").isalnum()
        assert rest.split("s)", 1)[0].replace(".", "").isdigit()


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["a"],
        ["a", "--k", "99"],
        ["a", "--k", "1.0", "--tol", "1e-2"],
        ["bogus"],
        ["sweep", "--k-min", "2", "--k-max", "1"],
    ],
)
def test_argument_errors_exit_one_with_clean_stdout(argv):
    cp = run_cli(*argv)
    assert cp.returncode == 1
    assert cp.stdout == ""
    assert cp.stderr != ""


def test_unwritable_output_exits_one(tmp_path: Path):
    target = tmp_path / "missing" / "rows.csv"
    cp = run_cli(
        "sweep", "--k-min", "0.5", "--k-max", "2.0", "--points", "2",
        "--tol", "1e-6", "--out", str(target),
    )
    assert cp.returncode == 1
    assert cp.stdout == ""
    assert "error" in cp.stderr or "hyplattice:" in cp.stderr


def test_numerical_failure_exits_two(monkeypatch, capsys):
    def blow_up(k, tol):
        raise lame_solver.BracketNotFound("no admissible interval in the stub")

    monkeypatch.setattr(accessory, "solve_for_aspect", blow_up)
    code = cli.main(["a", "--k", "1.0"])
    captured = capsys.readouterr()
    assert code == 2
    assert captured.out == ""
    assert "hyplattice:" in captured.err


def test_verify_reports_failures(monkeypatch, capsys):
    bad = verify.CheckOutcome(name="stub-check", ok=False, detail="broken", seconds=0.01)
    monkeypatch.setattr(verify, "run_all", lambda fast: [bad])
    code = cli.main(["verify"])
    captured = capsys.readouterr()
    assert code == 1
    assert captured.out.startswith("FAIL stub-check (0.01s) broken")
