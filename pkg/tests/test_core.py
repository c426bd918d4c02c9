"""
Tests for core ClaimAuditor functionality.

This module contains tests for the ClaimAuditor class, including group
scheduling, failure isolation, seed derivation and report assembly.

Test Coverage:
    - ClaimAuditor initialization and configuration
    - Running all groups or a selection
    - Failure isolation as tool errors
    - Determinism across worker counts
    - Report provenance and writing
    - Context manager functionality
"""

import json

import pytest

from obsaudit.claims import GroupContext
from obsaudit.config import LIMITS, RunConfig
from obsaudit.core import ClaimAuditor
from obsaudit.exceptions import CapExceededError, ValidationError
from obsaudit.report import derive_seed
from obsaudit.verdict import AuditVerdict, Status


def _verdict(claim_id, status=Status.CONFIRMED, computed="1"):
    return AuditVerdict(
        claim_id=claim_id,
        paper_ref="S0",
        claimed="1",
        computed=computed,
        status=status,
        rerun="obsaudit audit",
    )


def passing_group(ctx: GroupContext):
    return [_verdict(f"{ctx.group}-b"), _verdict(f"{ctx.group}-a")]


def seeded_group(ctx: GroupContext):
    return [_verdict(f"{ctx.group}-seed", computed=str(ctx.group_seed))]


def failing_group(ctx: GroupContext):
    raise CapExceededError("Arity 40 exceeds cap 28")


class TestClaimAuditor:
    """
    Test cases for ClaimAuditor class.

    These tests run small registries of stand-in groups so that scheduling
    and error handling are checked independently of the real battery.
    """

    @pytest.fixture
    def config(self, tmp_path):
        """Create a test configuration fixture."""
        return RunConfig(seed=5, output_dir=str(tmp_path))

    @pytest.fixture
    def groups(self):
        """A registry with a passing, a seeded and a failing group."""
        return {"alpha": passing_group, "beta": seeded_group, "gamma": failing_group}

    def test_init(self, config, groups):
        """Test auditor initialization with a custom registry."""
        with ClaimAuditor(config, groups) as auditor:
            assert auditor.config == config
            assert list(auditor.groups) == ["alpha", "beta", "gamma"]

    def test_init_configures_limits(self, tmp_path):
        """Test that the auditor pushes its caps into LIMITS."""
        with ClaimAuditor(RunConfig(output_dir=str(tmp_path), dense_cap=6)):
            assert LIMITS.dense_cap == 6

    def test_run_sorts_verdicts(self, config, groups):
        """Test that verdicts are ordered by claim id."""
        with ClaimAuditor(config, groups) as auditor:
            report = auditor.run(only=["alpha"])

        assert [v.claim_id for v in report.verdicts] == ["alpha-a", "alpha-b"]
        assert report.summary["CONFIRMED"] == 2

    def test_failure_becomes_tool_error(self, config, groups):
        """Test that a failing group does not abort the battery."""
        with ClaimAuditor(config, groups) as auditor:
            report = auditor.run()

        assert len(report.verdicts) == 3
        assert len(report.errors) == 1
        error = report.errors[0]
        assert error.group == "gamma"
        assert error.error_type == "CapExceededError"
        assert "exceeds cap" in error.message
        assert report.summary["TOOL-ERRORS"] == 1

    def test_unknown_group(self, config, groups):
        """Test that unknown names are rejected before anything runs."""
        with ClaimAuditor(config, groups) as auditor:
            with pytest.raises(ValidationError, match="Unknown claim group 'delta'"):
                auditor.run(only=["alpha", "delta"])

    def test_run_group_unknown(self, config, groups):
        """Test run_group with an unknown name."""
        with ClaimAuditor(config, groups) as auditor:
            with pytest.raises(ValidationError):
                auditor.run_group("delta")

    def test_group_seed(self, config, groups):
        """Test that each group receives the seed derived from its name."""
        with ClaimAuditor(config, groups) as auditor:
            verdicts = auditor.run_group("beta")

        assert verdicts[0].computed == str(derive_seed(5, "beta"))

    def test_on_done(self, config, groups):
        """Test that the callback sees every group in registry order."""
        finished = []
        with ClaimAuditor(config, groups) as auditor:
            auditor.run(only=["gamma", "alpha"], on_done=finished.append)

        assert finished == ["alpha", "gamma"]

    def test_jobs_do_not_change_report(self, tmp_path, groups):
        """Test byte-identical reports for one and four workers."""
        reports = []
        for jobs in (1, 4):
            config = RunConfig(seed=5, jobs=jobs, output_dir=str(tmp_path / str(jobs)))
            with ClaimAuditor(config, groups) as auditor:
                reports.append(auditor.run().to_json())

        assert reports[0] == reports[1]

    def test_provenance(self, config, groups):
        """Test that output-only settings are left out of the report."""
        with ClaimAuditor(config, groups) as auditor:
            report = auditor.run(only=["alpha"])

        assert report.config["seed"] == 5
        assert report.config["groups"] == ["alpha"]
        for key in ("output_dir", "format", "use_cache", "jobs"):
            assert key not in report.config

    def test_write_report(self, config, groups, tmp_path):
        """Test that report.json lands in the output directory."""
        with ClaimAuditor(config, groups) as auditor:
            path = auditor.write_report(auditor.run())

        assert path == tmp_path / "report.json"
        data = json.loads(path.read_text())
        assert data["schema"] == 1
        assert data["errors"][0]["group"] == "gamma"


class TestBattery:
    """Test cases against the real claim registry."""

    def test_worked_example(self, tmp_path):
        """Test the documented example."""
        with ClaimAuditor(RunConfig(output_dir=str(tmp_path))) as auditor:
            report = auditor.run(only=["worked-example"])

        assert report.find("S5.3-nullity").status is Status.REFUTED
        assert report.errors == []

    def test_find_missing(self, tmp_path):
        """Test looking up an id that is not in the report."""
        with ClaimAuditor(RunConfig(output_dir=str(tmp_path))) as auditor:
            report = auditor.run(only=["complexity"])

        with pytest.raises(KeyError):
            report.find("S5.3-nullity")

    def test_group_alone_matches_battery(self, tmp_path):
        """Test that a group's verdicts do not depend on its neighbours."""
        config = RunConfig(output_dir=str(tmp_path), jobs=2)
        with ClaimAuditor(config) as auditor:
            alone = auditor.run(only=["cft"]).verdicts
            together = auditor.run(only=["cft", "code", "lfunction"]).verdicts

        assert [v for v in together if v.claim_id.startswith("S10-")] == alone

    @pytest.mark.slow
    def test_full_battery(self, tmp_path):
        """Test the whole battery runs without tool errors."""
        with ClaimAuditor(RunConfig(output_dir=str(tmp_path), jobs=4)) as auditor:
            report = auditor.run()

        assert report.summary["TOOL-ERRORS"] == 0
        assert report.summary["REFUTED"] > 0
        assert report.find("S5.2-matrix").status is Status.CONFIRMED
