import json
import subprocess
import sys

import pytest

from landauer_qubit.cli import main, parse_values, read_config, run


def test_parse_values():
    assert parse_values("0.5") == (0.5,)
    assert parse_values("0,1, 2") == (0.0, 1.0, 2.0)
    grid = parse_values("log:1e-6:1e-1:16")
    assert len(grid) == 16 and grid[0] == pytest.approx(1e-6)
    with pytest.raises(ValueError):
        parse_values("log:1:2")
    with pytest.raises(ValueError):
        parse_values("a,b")


def test_length_command():
    text = run(["length", "--alpha", "0,1,2", "--epsilon", "0"])
    lines = text.splitlines()
    assert lines[0].startswith("#")
    assert lines[1].startswith("alpha,epsilon,f_eps")
    assert lines[2].split(",")[2] == "1.19814023474"


def test_global_flags_before_subcommand():
    assert run(["--alpha", "1", "length"]) == run(["length", "--alpha", "1"])


def test_bound_json():
    doc = json.loads(run(["bound", "--alpha", "0", "--epsilon", "0.01", "--tau", "2", "--format", "json"]))
    row = dict(zip(doc["columns"], doc["rows"][0]))
    assert row["precise_bound"] == pytest.approx(0.9969545 / 2, rel=1e-6)


def test_protocol_and_simulate_round_trip(tmp_path):
    proto_path = tmp_path / "p.csv"
    assert main(["protocol", "--alpha", "1", "--epsilon", "0.01", "--out", str(proto_path)]) == 0
    direct = json.loads(run(["simulate", "--alpha", "1", "--epsilon", "0.01", "--tau", "50", "--format", "json"]))
    via_csv = json.loads(run(["simulate", "--alpha", "1", "--epsilon", "0.01", "--tau", "50", "--format", "json",
                              "--protocol-csv", str(proto_path)]))
    assert via_csv["irr_work"] == pytest.approx(direct["irr_work"], rel=1e-6)


def test_simulate_trajectory_csv():
    text = run(["simulate", "--kind", "linear", "--epsilon", "0.01", "--tau", "10", "--trajectory"])
    assert text.splitlines()[0] == "t,t_tilde,lambda,p_e,p_eq,w_cum,wir_cum"


def test_sweep_command():
    text = run(["sweep", "--alpha", "1", "--epsilon", "0.01", "--tau", "100", "--protocols", "optimal,linear"])
    header, row = text.splitlines()[1:3]
    cols = dict(zip(header.split(","), row.split(",")))
    assert cols["irr_work_quadratic"] == ""
    assert float(cols["irr_work_optimal"]) < float(cols["irr_work_linear"])


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# erasure parameters\nalpha = 0\nepsilon = 0.01\nformat = json\n")
    assert read_config(cfg)["alpha"] == "0"
    from_file = json.loads(run(["bound", "--config", str(cfg)]))
    assert from_file["rows"][0][0] == 0
    overridden = json.loads(run(["bound", "--config", str(cfg), "--alpha", "2"]))
    assert overridden["rows"][0][0] == 2


def test_out_flag_writes_file(tmp_path, capsys):
    out = tmp_path / "h.csv"
    assert main(["reproduce", "headline", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert "bound_kT_per_gamma0_tau" in out.read_text()


@pytest.mark.parametrize("argv", [
    ["length", "--epsilon", "0.7"],
    ["reproduce", "fig9"],
    ["bound", "--beta", "x"],
    ["simulate", "--kind", "power"],
])
def test_structured_errors(argv, capsys):
    assert main(argv) != 0
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert set(err) >= {"error", "message"}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "landauer_qubit", "reproduce", "headline"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "0.996954505359" in proc.stdout
    bad = subprocess.run([sys.executable, "-m", "landauer_qubit", "length", "--alpha", "-1"],
                         capture_output=True, text=True, check=False)
    assert bad.returncode == 2
    assert json.loads(bad.stderr)["error"] == "DomainError"
