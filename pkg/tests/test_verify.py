import pytest
import json
import time
import sys
import os

# Add src to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

import cohom_verify
from cohom_config import BudgetExceeded
from cohom_verify import (
    CHECKS,
    EXIT_BUDGET,
    EXIT_MISMATCH,
    EXIT_OK,
    SUITES,
    CheckResult,
    VerifyReport,
    checks_for,
    run_check,
    verify_paper,
)


def test_suites_partition_the_checks():
    named = [name for suite in SUITES if suite != "all" for name in checks_for(suite)]
    assert sorted(named) == sorted(CHECKS)
    assert checks_for("all") == list(CHECKS)
    assert "oracle_equivalence" in checks_for("core")
    assert "sl32_screen" in checks_for("sl32-heavy")
    with pytest.raises(ValueError):
        checks_for("everything")


def test_check_after_deadline_is_skipped():
    result = run_check("eps_relation", deadline=time.time() - 1)
    assert result.status == "skipped"
    assert result.notes


def test_cheap_checks_pass():
    for name in ("eps_relation", "algebra_identities"):
        result = run_check(name)
        assert result.status == "ok", (result.expected, result.observed)


def test_check_statuses(monkeypatch):
    def boom():
        raise RuntimeError("boom")

    def too_slow():
        raise BudgetExceeded("out of time")

    monkeypatch.setitem(CHECKS, "fake_mismatch", ("core", lambda: ("1", "2")))
    monkeypatch.setitem(CHECKS, "fake_error", ("core", boom))
    monkeypatch.setitem(CHECKS, "fake_budget", ("core", too_slow))
    assert run_check("fake_mismatch").status == "mismatch"
    error = run_check("fake_error")
    assert error.status == "error"
    assert "RuntimeError: boom" in error.notes
    assert run_check("fake_budget").status == "skipped"


@pytest.mark.parametrize("statuses,code", [
    (["ok", "ok"], EXIT_OK),
    (["ok", "skipped"], EXIT_BUDGET),
    (["skipped", "mismatch"], EXIT_MISMATCH),
    (["error"], EXIT_MISMATCH),
    ([], EXIT_OK),
])
def test_exit_codes(statuses, code):
    report = VerifyReport("core", [CheckResult(f"c{i}", "core", s) for i, s in enumerate(statuses)])
    assert report.exit_code == code


def test_report_files(tmp_path):
    report = VerifyReport("core", [
        CheckResult("a", "core", "ok", "1", "1", 0.5),
        CheckResult("b", "core", "mismatch", "1", "2", 0.1, ["note"]),
    ])
    tsv = report.write(tmp_path / "out" / "verify.json")
    data = json.loads((tmp_path / "out" / "verify.json").read_text())
    assert data["exit_code"] == EXIT_MISMATCH
    assert [r["status"] for r in data["results"]] == ["ok", "mismatch"]
    lines = tsv.read_text().splitlines()
    assert tsv.suffix == ".tsv"
    assert lines[0].split("\t")[:3] == ["name", "suite", "status"]
    assert lines[2].startswith("b\tcore\tmismatch\t1\t2")


def test_verify_paper_runs_a_suite(monkeypatch):
    monkeypatch.setattr(cohom_verify, "CHECKS", {
        "second": ("core", lambda: ("x", "x")),
        "first": ("core", lambda: ("[True]", "[True]")),
        "other": ("sl-m1", lambda: ("1", "2")),
    })
    report = verify_paper("core", jobs=1)
    assert [r.name for r in report.results] == ["first", "second"]
    assert report.exit_code == EXIT_OK
    assert report.settings["jobs"] == 1
    assert verify_paper("all").exit_code == EXIT_MISMATCH


def test_negative_control_samples_only_computable_modules():
    result = run_check("negative_control")
    assert result.status == "ok", (result.expected, result.observed)
    assert result.expected.count(", 0)") == cohom_verify.NEGATIVE_CONTROL_SAMPLES


def test_negative_control_reports_a_short_sample(monkeypatch):
    monkeypatch.setattr(cohom_verify, "NEGATIVE_CONTROL_MAX_DIM", 0)
    result = run_check("negative_control")
    assert result.status == "mismatch"
    assert result.observed == "[('sampled', 0)]"
