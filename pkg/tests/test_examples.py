import runpy
import shutil
from pathlib import Path

import pytest

from hiddenspin.cli import main
from hiddenspin.scenario_io import load_scenario

ROOT = Path(__file__).resolve().parents[1]
SCENARIOS = sorted((ROOT / "scenarios").glob("*.scn"))


@pytest.mark.parametrize("path", SCENARIOS, ids=lambda p: p.stem)
def test_shipped_scenario_runs(path, tmp_path, capsys):
    load_scenario(path)
    shutil.copy(path, tmp_path / path.name)
    assert main(["evolve", str(tmp_path / path.name)]) == 0
    assert any(tmp_path.glob("*.csv"))


def test_convergence_script(capsys):
    mod = runpy.run_path(str(ROOT / "scripts" / "convergence.py"))
    assert mod["main"](["--levels", "3"]) == 0
    out = capsys.readouterr().out
    assert "orbit" in out and "spin" in out


def test_precession_rates_helpers():
    mod = runpy.run_path(str(ROOT / "scripts" / "precession_rates.py"))
    got, want = mod["wave_rate"](0.1, 1.0, 1, 0.01)
    assert got == pytest.approx(want, rel=1e-6)
