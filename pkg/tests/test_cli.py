import json
import subprocess
import sys

import pytest

from wirenet import cli
from wirenet.cli import EXIT_CONFIG, EXIT_MISMATCH, EXIT_OK, ConfigError, RunConfig


def run_json(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_parse_fraction_rejects_floats():
    assert cli.parse_fraction("-3/8") == cli.Fraction(-3, 8)
    with pytest.raises(ConfigError):
        cli.parse_fraction("0.25")


def test_parse_point():
    pt = cli.parse_point("chi=(1/4,1/4,1/4),q=(1/2,1/2,1/2)")
    assert set(pt) == {"chi", "q"}
    with pytest.raises(ConfigError):
        cli.parse_point("zeta=(1,1,1)")
    with pytest.raises(ConfigError):
        cli.parse_point("chi=(1,1)")


def test_inconsistent_q_rejected():
    with pytest.raises(ConfigError):
        cli.params_for_point("D", cli.parse_point("chi=(1/4,1/4,1/4),q=(0,0,0)"))


def test_verify_exits_zero(capsys):
    code, data = run_json(["verify", "--no-timestamp"], capsys)
    assert code == EXIT_OK
    assert {r["check"] for r in data["result"]["reports"]} >= {"X3", "X6"}
    assert "timestamp" not in data and len(data["config_hash"]) == 16


def test_classify_commutative_point(capsys):
    code, data = run_json(["classify", "--lattice", "D", "--point", "chi=(0,0,0)", "--no-timestamp"], capsys)
    assert code == EXIT_OK
    (v,) = data["result"]["verdicts"]
    assert v["observed"] == v["predicted"] == "Commutative"


def test_float_point_is_config_error(capsys):
    assert cli.main(["classify", "--point", "chi=(0.25,0,0)"]) == EXIT_CONFIG
    assert "exact rational" in capsys.readouterr().err


def test_bad_values_are_config_errors(capsys):
    assert cli.main(["bloch", "scan", "--lattice", "D", "--tol", "-1"]) == EXIT_CONFIG
    assert cli.main(["lattice", "show", "--lattice", "Q"]) == EXIT_CONFIG
    assert cli.main(["butterfly", "--lattice", "D"]) == EXIT_CONFIG
    assert cli.main(["butterfly", "--flux", "1"]) == EXIT_CONFIG


def test_mismatch_exit_code(capsys, monkeypatch):
    # a point where the observed type disagrees with the predicted one gives exit 4
    orig = cli.closure.classify_point

    def flipped(*a, **kw):
        v = orig(*a, **kw)
        v.agree = False
        return v

    monkeypatch.setattr(cli.closure, "classify_point", flipped)
    assert cli.main(["classify", "--point", "chi=(0,0,0)"]) == EXIT_MISMATCH


def test_deterministic_output(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert cli.main(["bloch", "scan", "--lattice", "D", "--grid", "16", "--out", str(d), "--no-timestamp"]) == 0
    for name in ("scan.json", "scan.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_scan_outputs(tmp_path):
    assert cli.main(["bloch", "scan", "--lattice", "D", "--grid", "16", "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "scan.csv").read_text().splitlines()
    data = json.loads((tmp_path / "scan.json").read_text())
    assert lines[0] == f"# config_hash={data['config_hash']}"
    assert lines[1] == "phi1,phi2,phi3,e1,e2,min_gap"
    assert len(lines) - 2 == data["result"]["flagged"]
    assert data["result"]["max_locus_distance_spacings"] < 2
    assert "timestamp" in data


def test_config_file_round_trip(tmp_path, capsys):
    cfg = RunConfig(command="bloch bands", lattice="G", grid=4, timestamp=False)
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg.to_json()))
    code, data = run_json(["bloch", "bands", "--config", str(path)], capsys)
    assert code == 0
    assert data["config_hash"] == cfg.digest()
    assert len(data["result"]["eigenvalues"]) == 4 * 4 + 1
    # flags override the file
    code, data = run_json(["bloch", "bands", "--config", str(path), "--grid", "2"], capsys)
    assert len(data["result"]["eigenvalues"]) == 4 * 2 + 1


def test_config_for_other_command_rejected(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"command": "verify"}))
    assert cli.main(["classify", "--config", str(path)]) == EXIT_CONFIG
    path.write_text(json.dumps({"bogus": 1}))
    assert cli.main(["classify", "--config", str(path)]) == EXIT_CONFIG


def test_digest_ignores_output_location():
    a = RunConfig(command="verify", out="x")
    b = RunConfig(command="verify", out="y", timestamp=False)
    assert a.digest() == b.digest()
    assert a.digest() != RunConfig(command="verify", seed=1).digest()


def test_lattice_show(capsys):
    code, data = run_json(["lattice", "show", "--lattice", "G", "--no-timestamp"], capsys)
    assert code == 0
    r = data["result"]
    assert r["name"] == "G" and len(r["positions"]) == 4 and len(r["cycles"]) == 6
    # one cycle per edge; tree edges close no cycle
    assert r["cycles"][:3] == [["0", "0", "0"]] * 3


def test_butterfly_single_flux(capsys):
    code, data = run_json(["butterfly", "--flux", "1/3", "--twists", "4", "--no-timestamp"], capsys)
    assert code == 0
    (f,) = data["result"]["fluxes"]
    # the transverse 2 cos term can merge the N subbands, never split them further
    assert f["flux"] == "1/3" and 1 <= len(f["bands"]) <= 3


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "wirenet", "lattice", "show", "--lattice", "P"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["result"]["name"] == "P"
