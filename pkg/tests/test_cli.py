import pytest
import json
import sys
import os

from loguru import logger
from typer.testing import CliRunner

# Add src to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

import cohom_config
from app import app
from cohom_verify import EXIT_USAGE


@pytest.fixture
def runner(tmp_path, monkeypatch):
    monkeypatch.setenv("SUPERCOHOM_CACHE", str(tmp_path / "cache"))
    monkeypatch.setattr(cohom_config, "_settings", None)
    yield CliRunner()
    # the CLI points loguru at the runner's captured stderr
    logger.remove()
    logger.add(sys.stderr)


def test_algebra_info(runner):
    result = runner.invoke(app, ["algebra", "sl:2:1", "info"])
    assert result.exit_code == 0, result.output
    assert "sl:2:1" in result.output
    assert "4 / 4" in result.output


@pytest.mark.parametrize("args", [
    ["algebra", "sl:2:2"],
    ["algebra", "sl-2-1"],
    ["algebra", "sl:2:1", "draw"],
    ["cohomology", "--algebra", "sl:2:1", "--module", "spinor"],
    ["cohomology", "--algebra", "sl:2:1", "--module", "trivial", "--method", "fast"],
    ["verify-paper", "--suite", "nope"],
    ["cache", "compact"],
])
def test_usage_errors(runner, args):
    result = runner.invoke(app, args)
    assert result.exit_code == EXIT_USAGE, result.output


def test_cohomology_writes_report(runner, tmp_path):
    out = tmp_path / "reports" / "h0.json"
    result = runner.invoke(app, [
        "cohomology", "--algebra", "sl:2:1", "--module", "trivial",
        "--degree", "0", "--method", "both", "--no-cache", "--out", str(out),
    ])
    assert result.exit_code == 0, result.output
    data = json.loads(out.read_text())
    assert data["dim_H"] == 1
    assert data["flagged"] is False


def test_cohomology_of_polynomial_module(runner, tmp_path):
    out = tmp_path / "h2.json"
    result = runner.invoke(app, [
        "cohomology", "--algebra", "gl:2:1", "--module", "real:2", "--degree", "2", "--out", str(out),
    ])
    assert result.exit_code == 0, result.output
    assert json.loads(out.read_text())["dim_H"] == 1


def test_cache_list_and_clear(runner):
    result = runner.invoke(app, ["cohomology", "--algebra", "sl:2:1", "--module", "adjoint", "--degree", "0"])
    assert result.exit_code == 0, result.output
    listed = runner.invoke(app, ["cache", "list"])
    assert "sl:2:1|adjoint" in listed.output
    cleared = runner.invoke(app, ["cache", "clear"])
    assert "Removed 1" in cleared.output
    assert "sl:2:1|adjoint" not in runner.invoke(app, ["cache", "list"]).output


def test_screen_command(runner, tmp_path):
    out = tmp_path / "screen.json"
    result = runner.invoke(app, ["--quiet", "screen", "--algebra", "sl:2:1", "--window", "2", "--out", str(out)])
    assert result.exit_code == 0, result.output
    data = json.loads(out.read_text())
    assert data["status"] == "ok"
    assert "(0,0|0)" in data["stages"]["d_module"]
