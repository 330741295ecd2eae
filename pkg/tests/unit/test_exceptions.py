"""
Unit tests for the exception hierarchy.
"""
from app.core.exceptions import (
    EXIT_USAGE,
    EXIT_VERIFICATION,
    AppException,
    BadSymbolError,
    EmptyClassError,
    InvariantViolation,
    NotMixedError,
    UsageError,
    ValidationError,
    VerificationError,
    WrongModeError
)


class TestExitCodes:
    """Test exit codes carried by exceptions."""

    def test_usage_and_domain_errors_exit_1(self):
        """Test that usage and domain errors map to exit code 1."""
        assert UsageError("bad flag").exit_code == EXIT_USAGE
        assert EmptyClassError(3, 9).exit_code == EXIT_USAGE
        assert WrongModeError("full", "rolling").exit_code == EXIT_USAGE

    def test_verification_errors_exit_2(self):
        """Test that failed checks and broken invariants map to exit code 2."""
        assert VerificationError(["oracle"]).exit_code == EXIT_VERIFICATION
        assert InvariantViolation("broken").exit_code == EXIT_VERIFICATION


class TestErrorDetails:
    """Test error codes and details."""

    def test_bad_symbol(self):
        """Test that bad symbols carry symbol and position."""
        exc = BadSymbolError("X", 3)
        assert isinstance(exc, ValidationError)
        assert isinstance(exc, AppException)
        assert exc.error_code == "BAD_SYMBOL"
        assert exc.details == {"symbol": "X", "position": 3}

    def test_not_mixed_message(self):
        """Test that not-mixed errors report the last distance."""
        exc = NotMixedError(100, 0.05, 0.25)
        assert "0.2500" in exc.message
        assert exc.details["steps"] == 100

    def test_verification_lists_failed_checks(self):
        """Test that verification errors name every failed check."""
        exc = VerificationError(["oracle", "roundtrips"])
        assert "oracle" in exc.message and "roundtrips" in exc.message

    def test_default_error_code_is_class_name(self):
        """Test that a bare AppException uses its class name as code."""
        assert AppException("boom").error_code == "AppException"
