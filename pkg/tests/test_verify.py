"""Tests for the named checks and their reports."""

from __future__ import annotations

import pytest

from minrep.analysis.verify import CHECKS, ORACLE_OPSETS, VerifyContext, plan, verify
from minrep.core.config import Settings
from minrep.core.errors import InsufficientRange
from minrep.core.models import Counterexample, VerificationReport
from minrep.engine.table import EngineConfig, build_table

QUIET = EngineConfig(progress=False)

SWEEP_CHECKS = [
    "thm_1_1",
    "thm_1_2",
    "thm_1_3",
    "cor_1_3",
    "thm_1_4",
    "thm_1_5",
    "thm_1_6",
    "thm_2_1",
    "thm_2_1_strong",
    "cor_2_1",
    "thm_2_2",
    "thm_2_3",
    "prop_2_1",
    "thm_4_1",
    "obs_3_1",
    "obs_3_2",
    "obs_3_3",
    "obs_3_4",
]


@pytest.fixture(scope="module")
def ctx() -> VerifyContext:
    settings = Settings(default_limit=5000, linear_sweep_limit=500)
    return VerifyContext(settings=settings, limit=5000, config=QUIET)


class TestChecks:
    """Each check passes on a desk-sized sweep."""

    @pytest.mark.parametrize("check_id", SWEEP_CHECKS)
    def test_check_passes(self, ctx: VerifyContext, check_id: str) -> None:
        """No counterexample at N = 5000."""
        report = verify(check_id, ctx)
        assert report.passed, report.counterexample
        assert report.outcome == "pass"
        assert report.opset == CHECKS[check_id].default_ops or check_id == "obs_3_3"

    @pytest.mark.parametrize("op_id", ORACLE_OPSETS)
    def test_oracle_match(self, ctx: VerifyContext, op_id: str) -> None:
        """Table minima agree with enumeration up to length 14."""
        report = verify("oracle_match", ctx, op_id)
        assert report.passed, report.counterexample
        assert report.opset == op_id

    def test_equality_on_powers_of_four(self, ctx: VerifyContext) -> None:
        """5log4(n) - 1 is met exactly at 4, 16, 64, 256, 1024 and 4096."""
        report = verify("cor_2_1", ctx)
        assert report.boundary_hits == (4, 16, 64, 256, 1024, 4096)

    def test_range_labels(self, ctx: VerifyContext) -> None:
        """Reports name the range they covered."""
        assert verify("thm_2_1_strong", ctx).range_verified == "n=1..5000"
        assert verify("thm_1_1", ctx).range_verified == "n=1..500"
        assert verify("thm_2_3", ctx).range_verified == "k=11..100"


class TestLogstarConvention:
    """The ^ bound depends on how logstar3 is rounded."""

    def test_iterated_convention_fails_at_two(self) -> None:
        """With the iterated logstar, c(2) = 2 is below 4 * 1 - 1."""
        ctx = VerifyContext(settings=Settings(), limit=200, config=QUIET, logstar_convention="iterated")
        report = verify("thm_4_1", ctx)
        assert not report.passed
        assert report.counterexample == Counterexample(2, "c>=3", "c=2")
        assert report.outcome == "fail"

    def test_floor_convention_hits_towers(self) -> None:
        """With the floor convention 3 and 27 sit on the bound."""
        ctx = VerifyContext(settings=Settings(), limit=200, config=QUIET)
        report = verify("thm_4_1", ctx)
        assert report.passed
        assert 3 in report.boundary_hits
        assert 27 in report.boundary_hits


class TestContext:
    """Table caching and pinning."""

    def test_pinned_table_is_not_extended(self) -> None:
        """A supplied table too small for the sweep raises InsufficientRange."""
        ctx = VerifyContext(settings=Settings(), limit=5000, config=QUIET)
        ctx.add_table(build_table("1S*", 1000, QUIET))
        with pytest.raises(InsufficientRange):
            verify("thm_2_1_strong", ctx)

    def test_unpinned_table_grows(self) -> None:
        """An unpinned table is extended on demand."""
        ctx = VerifyContext(settings=Settings(), limit=3000, config=QUIET)
        ctx.add_table(build_table("1S*", 1000, QUIET), pinned=False)
        assert ctx.table("1S*").limit == 3000
        assert ctx.table("1S*", 2000).limit == 3000


class TestPlan:
    """Tests for expanding check ids."""

    def test_all_expands_oracle(self) -> None:
        """'all' runs every check and the oracle once per opset."""
        steps = plan(["all"])
        assert len(steps) == len(CHECKS) - 1 + len(ORACLE_OPSETS)
        assert [ops for cid, ops in steps if cid == "oracle_match"] == list(ORACLE_OPSETS)

    def test_unknown_check(self) -> None:
        """Unknown ids raise KeyError."""
        with pytest.raises(KeyError):
            plan(["thm_9_9"])


class TestReports:
    """Report invariants."""

    def test_fail_needs_counterexample(self) -> None:
        """A failed report without a counterexample is rejected."""
        with pytest.raises(ValueError):
            VerificationReport("x", "1S*", "n=1..1", False)

    def test_describe_has_no_commas(self) -> None:
        """Counterexamples fit in one CSV cell."""
        assert Counterexample(2, "c>=3", "c=2").describe() == "n=2 expected=c>=3 actual=c=2"
