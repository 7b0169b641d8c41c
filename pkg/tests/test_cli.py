import json

import pytest

from l2tor import acceptance, cli
from l2tor.exact import PiScalar, parse_scalar


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_sl3_json(capsys):
    code, out, _ = run(capsys, "compute", "SL(3,R)", "--metric", "trace2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["T2"] == "1/6 * pi^-2" and data["schema"] == 1
    assert data["Q"] == "1/3" and data["chi_dual_M"] == 2 and data["rho2"] is None


def test_compute_h3_text(capsys):
    code, out, _ = run(capsys, "compute", "H^3")
    assert code == 0
    assert "1    0             1          1" in out
    assert "T2 = -1/6 * pi^-1" in out


def test_compute_so24_middle_betti(capsys):
    code, out, _ = run(capsys, "compute", "SO(2,4)", "--format", "json")
    data = json.loads(out)
    vol = parse_scalar(data["vol_dual"])
    assert data["betti"][4] != "0" and parse_scalar(data["betti"][4]) == PiScalar(6) / vol
    assert [i for i, b in enumerate(data["betti"]) if b != "0"] == [4]
    assert data["T2"] == "0"


def test_compute_with_volume(capsys):
    code, out, _ = run(capsys, "compute", "SL(3,R) @ trace2", "--vol", "6 * pi^2", "--format", "json")
    assert json.loads(out)["rho2"] == "1"


@pytest.mark.parametrize("desc", ["H^3", "SO(3,5)", "H^3 x H^2", "SO(2,4)", "SL(3,R)", "SL(5,R)", "H^2 @ 4"])
def test_json_scalars_round_trip(capsys, desc):
    from l2tor.invariants import full_report

    _, out, _ = run(capsys, "compute", desc, "--format", "json")
    data = json.loads(out)
    report = full_report(desc)
    assert [parse_scalar(b) for b in data["betti"]] == list(report.betti_per_vol)
    assert parse_scalar(data["T2"]) == report.T2
    if data["vol_dual"] is not None:
        assert parse_scalar(data["vol_dual"]) == report.vol_dual


@pytest.mark.parametrize(
    "argv,code",
    [
        (["compute", "SO(3,"], 2),
        (["compute", "H^3", "--vol", "pi pi"], 2),
        (["compute", "H^3", "--metric", "trace2"], 4),
        (["compute", "H^3", "--metric", "2"], 4),
        (["compute", "H^3", "--metric", "bogus"], 4),
        (["heat", "SL(6,R)", "-p", "10"], 3),
    ],
)
def test_exit_codes_and_no_partial_output(capsys, argv, code):
    got, out, err = run(capsys, *argv, "--format", "json")
    assert got == code and out == "" and err.startswith("error:")


def test_argparse_validation(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--quad-points", "8"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        cli.main(["verify", "--tol", "0"])


def test_heat_gap_and_slope(capsys):
    code, out, _ = run(capsys, "heat", "H^3", "-p", "0")
    assert code == 0 and "gap" in out
    code, out, _ = run(capsys, "heat", "H^3", "-p", "1", "--format", "json")
    data = json.loads(out)
    assert not data["gap"] and len(data["rows"]) == 50
    assert data["slope"] == pytest.approx(-0.5, abs=0.01)
    code, out, _ = run(capsys, "heat", "SO(3,5)", "-p", "7")
    assert out.strip().splitlines()[-1].startswith("fitted exponent: -0.50")


def test_dump_structure(capsys):
    code, out, _ = run(capsys, "dump-structure", "H^5")
    data = json.loads(out)
    f = data["factors"][0]
    assert code == 0 and f["u"] == 2 and f["lambda_params"] == [["0", "1", "0"], ["0", "2", "0"]]


def test_verify_plumbing(capsys, monkeypatch, tmp_path):
    seen = {}

    def fake(tol, quad_points, seed):
        seen.update(tol=tol, quad_points=quad_points, seed=seed)
        c = acceptance.Criterion(1, "stub", 1.0, [acceptance.Row("Q(H^5)", "31/45", "31/45", True)])
        return [c]

    monkeypatch.setattr(acceptance, "run_all", fake)
    report = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--tol", "1e-6", "--report-out", str(report))
    assert code == 0 and seen["tol"] == 1e-6 and seen["quad_points"] == 64
    assert "Q(H^5) expected 31/45 actual 31/45 PASS" in out
    assert json.loads(report.read_text())["passed"] is True
    assert [p.name for p in tmp_path.iterdir()] == ["report.json"]


def test_verify_failure_exit_code(capsys, monkeypatch):
    c = acceptance.Criterion(1, "stub", 1.0, [acceptance.Row("x", "1", "2", False)])
    monkeypatch.setattr(acceptance, "run_all", lambda *a: [c])
    code, out, _ = run(capsys, "verify")
    assert code == 1 and "FAIL" in out
