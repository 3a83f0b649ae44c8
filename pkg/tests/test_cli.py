import json
import subprocess
import sys

import pytest

from mashgrip.cli import main
from mashgrip.harness import presets


@pytest.fixture
def scenario_file(tmp_path):
    def write(d, name="s.json"):
        path = tmp_path / name
        path.write_text(json.dumps(d))
        return str(path)

    return write


def test_simulate_ok(scenario_file, tmp_path):
    out = tmp_path / "log.json"
    assert main(["simulate", scenario_file(presets.small_ball()), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["terminal"] == "Completed"


def test_simulate_abort_exit_3(scenario_file, tmp_path):
    assert main(["simulate", scenario_file(presets.tape_small_single()), "--out", str(tmp_path / "l.json")]) == 3


def test_simulate_timeout_exit_3(scenario_file, tmp_path):
    assert main(["simulate", scenario_file(presets.empty()), "--out", str(tmp_path / "l.json")]) == 3


def test_validate(scenario_file, capsys):
    assert main(["validate", scenario_file(presets.small_ball())]) == 0
    assert main(["validate", scenario_file({"dt": -1, "strategy": {"kind": "X"}})]) == 1
    err = capsys.readouterr().err
    assert "dt" in err and "strategy.kind" in err


def test_characterize_stdout(capsys):
    assert main(["characterize", "extension"]) == 0
    assert capsys.readouterr().out.startswith("pressure_kPa,length_mm\n")


def test_characterize_config(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"pressures": [50]}))
    assert main(["characterize", "extension", "--config", str(cfg)]) == 0
    assert capsys.readouterr().out == "pressure_kPa,length_mm\n50.0,152.275\n"


def test_characterize_bad_config(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text("{")
    assert main(["characterize", "extension", "--config", str(cfg)]) == 1


def test_characterize_domain_error(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"pressures": [150]}))
    assert main(["characterize", "extension", "--config", str(cfg)]) == 1


def test_calibrate(scenario_file, tmp_path):
    p = scenario_file({"model": "layer_gap", "data": [[0, 85.3], [30, 256]]}, "p.json")
    out = tmp_path / "r.json"
    assert main(["calibrate", p, "--out", str(out)]) == 0
    assert json.loads(out.read_text())["parameters"]["layer_gap"] == pytest.approx(13.394, rel=1e-4)


def test_calibrate_numeric_exit_2(scenario_file):
    p = scenario_file({"model": "grip_force_gain", "data": [[1, 0.1], [None, 0.2]]}, "p.json")
    assert main(["calibrate", p]) == 2


def test_console_script_module(scenario_file):
    r = subprocess.run([sys.executable, "-m", "mashgrip", "validate", scenario_file(presets.multi_object())], capture_output=True, text=True)
    assert r.returncode == 0 and "MultiObject" in r.stdout
