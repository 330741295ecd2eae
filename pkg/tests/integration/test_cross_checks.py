"""
Integration tests for the cross-check suite.
"""
import math

import pytest

from app.core.exceptions import EmptyClassError, VerificationError
from app.models.table import TableKind, TableMode
from app.services import (
    blocks_service,
    chain_service,
    lastfall_service,
    topdown_service,
    verification_service
)


@pytest.mark.integration
class TestRunChecks:
    """Test the check runner."""

    def test_all_pass_on_small_widths(self):
        """Test every check up to width 8."""
        results = verification_service.run_checks(8, seed=0)
        assert [r.name for r in results] == list(verification_service.CHECKS)
        assert all(r.passed for r in results), [r.detail for r in results if not r.passed]

    @pytest.mark.slow
    def test_all_pass_to_brute_force_limit(self):
        """Test every check up to width 10."""
        assert all(r.passed for r in verification_service.verify(10, seed=5))

    def test_subset(self):
        """Test running named checks only."""
        results = verification_service.run_checks(4, names=["worked_example", "row_sums"])
        assert [r.name for r in results] == ["worked_example", "row_sums"]

    def test_failure_detail(self, mocker):
        """Test that a returned problem is reported as failure."""
        mocker.patch.dict(verification_service.CHECKS, {"oracle": lambda max_n, seed: "n=3: off by one"})
        results = verification_service.run_checks(4, names=["oracle"])
        assert results[0].passed is False
        assert results[0].detail == "n=3: off by one"

    def test_exception_becomes_failure(self, mocker):
        """Test that an application error inside a check is caught."""
        def raising(max_n, seed):
            raise EmptyClassError(3, 3)

        mocker.patch.dict(verification_service.CHECKS, {"oracle": raising})
        results = verification_service.run_checks(4, names=["oracle"])
        assert not results[0].passed
        assert results[0].detail.startswith("EMPTY_CLASS")

    def test_verify_raises(self, mocker):
        """Test that verify fails loudly."""
        mocker.patch.dict(verification_service.CHECKS, {"oracle": lambda max_n, seed: "broken"})
        with pytest.raises(VerificationError) as exc_info:
            verification_service.verify(4)
        assert exc_info.value.details["failed"] == ["oracle"]
        assert exc_info.value.exit_code == 2


@pytest.mark.integration
class TestBackendsAgree:
    """Test the three counting routes against each other."""

    @pytest.mark.slow
    def test_up_to_width_fourteen(self):
        """Test last-fall, top-down and sequence sums to width 14."""
        assert verification_service.check_backends(14, 0) is None

    def test_large_row_sum(self):
        """Test Σ_d D(40, d) = 40!."""
        table = lastfall_service.build_table(40, TableKind.WEIGHTED, TableMode.ROLLING)
        assert sum(lastfall_service.row(table, 40)) == math.factorial(40)

    @pytest.mark.slow
    def test_row_sums_to_width_hundred(self):
        """Test Σ_d D(n, d) = n! for every n <= 100."""
        table = lastfall_service.build_table(100, TableKind.WEIGHTED, TableMode.ROLLING)
        sums = lastfall_service.motzkin_numbers(table)
        assert sums == [math.factorial(n) for n in range(101)]
        assert verification_service.check_row_sums(100, 0) is None

    def test_row_sums_take_own_bound(self, mocker):
        """Test that row_sum_max_n reaches the row_sums check only."""
        seen = {}

        def record(name):
            def check(max_n, seed):
                seen[name] = max_n
            return check

        mocker.patch.dict(verification_service.CHECKS, {
            "oracle": record("oracle"),
            "row_sums": record("row_sums"),
        })
        verification_service.run_checks(6, names=["oracle", "row_sums"], row_sum_max_n=100)
        assert seen == {"oracle": 6, "row_sums": 100}

    def test_top_down_weighted_middle_row(self):
        """Test D(14, ·) from the top-down program against the last-fall one."""
        table = lastfall_service.build_table(14, TableKind.WEIGHTED, TableMode.ROLLING)
        expected = lastfall_service.row(table, 14)
        assert topdown_service.topdown_row(topdown_service.TopDownTable(TableKind.WEIGHTED), 14) == expected


@pytest.mark.integration
class TestChainStructure:
    """Test connectivity and stationarity on small classes."""

    def test_slow_class_connected(self):
        """Test that the six members of S(8, 9) are reachable from the start."""
        reached = verification_service.reachable(chain_service.initial_state(8, 9))
        assert reached == set(blocks_service.enumerate_sequences(8, 9))

    @pytest.mark.slow
    def test_connected_to_width_twelve(self):
        """Test connectivity of every S(n, A) with n <= 12."""
        for n in range(13):
            for area in range(n * n // 4 + 1):
                reached = verification_service.reachable(chain_service.initial_state(n, area))
                assert len(reached) == len(blocks_service.enumerate_sequences(n, area)), (n, area)

    def test_stationarity_gap(self):
        """Test that π is stationary on S(10, 16)."""
        assert verification_service.stationarity_gap(10, 16) == 0

    def test_stationarity_check(self):
        """Test the registered stationarity check up to width 8."""
        assert "stationarity" in verification_service.CHECKS
        assert verification_service.check_stationarity(8, 0) is None


@pytest.mark.integration
class TestScaling:
    """Test the scaling report."""

    def test_fit(self):
        """Test that a fitted exponent is attached to every row."""
        rows, slope = verification_service.scaling_report([10, 20, 30])
        assert [row.n for row in rows] == [10, 20, 30]
        assert all(row.fitted_exponent == slope for row in rows)
        assert math.isfinite(slope)

    def test_single_width(self):
        """Test that one width gives no fit."""
        rows, slope = verification_service.scaling_report([10])
        assert math.isnan(slope)
        assert rows[0].fitted_exponent is None
