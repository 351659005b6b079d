import json
import subprocess
import sys

import pytest

from hybridclust.cli import main
from hybridclust.harness import CSV_COLUMNS

CONFIG = """
name: cli
bs_array: {w: 4, v: 4}
users: 4
n_rf: [4]
snr_db: [-5]
trials: 2
schemes: [fhp_hac, mkm_ahp]
"""


@pytest.fixture
def cfg_file(tmp_path):
    path = tmp_path / "cfg.yaml"
    path.write_text(CONFIG)
    return path


def test_run_csv(cfg_file, tmp_path, capsys):
    out = tmp_path / "r.csv"
    assert main(["run", "--config", str(cfg_file), "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS) and len(lines) == 3
    assert "wrote 2 records" in capsys.readouterr().out


def test_run_json_with_seed_override(cfg_file, tmp_path):
    out = tmp_path / "r.json"
    assert main(["run", "--config", str(cfg_file), "--out", str(out), "--format", "json", "--seed", "5"]) == 0
    doc = json.loads(out.read_text())
    assert doc["config"]["master_seed"] == 5
    assert all(r["seed"] == 5 for r in doc["records"])


def test_run_scenario_with_trial_override(tmp_path):
    out = tmp_path / "fig6.csv"
    assert main(["run", "--scenario", "fig6", "--trials", "1", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 1 + 3 * 4


def test_validate(cfg_file, capsys):
    assert main(["validate", "--config", str(cfg_file)]) == 0
    assert "name: cli" in capsys.readouterr().out


def test_validate_reports_field(tmp_path, capsys):
    bad = tmp_path / "bad.yaml"
    bad.write_text("trials: 0\n")
    assert main(["validate", "--config", str(bad)]) != 0
    assert "trials" in capsys.readouterr().err


def test_missing_config_file(tmp_path, capsys):
    assert main(["validate", "--config", str(tmp_path / "nope.yaml")]) != 0
    assert "error" in capsys.readouterr().err


def test_scenarios_listing(capsys):
    assert main(["scenarios"]) == 0
    out = capsys.readouterr().out
    for name in ("fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"):
        assert name in out
    assert main(["scenarios", "--show", "fig4"]) == 0
    assert "fig4-rzf-8x32" in capsys.readouterr().out


def test_module_entry_point(cfg_file):
    proc = subprocess.run([sys.executable, "-m", "hybridclust", "validate", "--config", str(cfg_file)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    proc = subprocess.run([sys.executable, "-m", "hybridclust", "frobnicate"], capture_output=True, text=True)
    assert proc.returncode != 0
