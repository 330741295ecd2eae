"""
Custom exception classes for the application.
"""
from typing import Any, Optional


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2


class AppException(Exception):
    """Base exception for application errors."""

    def __init__(
        self,
        message: str,
        exit_code: int = EXIT_USAGE,
        error_code: Optional[str] = None,
        details: Optional[dict[str, Any]] = None
    ):
        """
        Initialize application exception.

        Args:
            message: Human-readable error message
            exit_code: Process exit status reported by the CLI
            error_code: Application-specific error code
            details: Additional error details
        """
        self.message = message
        self.exit_code = exit_code
        self.error_code = error_code or self.__class__.__name__
        self.details = details or {}
        super().__init__(self.message)


class UsageError(AppException):
    """Command-line usage error (bad flag or out-of-range value)."""

    def __init__(self, message: str, flag: Optional[str] = None):
        """
        Initialize usage error.

        Args:
            message: Error message
            flag: Offending flag, if known
        """
        super().__init__(
            message=message,
            error_code="USAGE_ERROR",
            details={"flag": flag} if flag else {}
        )


class ValidationError(AppException):
    """Validation error for a domain value."""

    def __init__(self, message: str, error_code: str = "VALIDATION_ERROR", **details: Any):
        """
        Initialize validation error.

        Args:
            message: Error message
            error_code: Specific error code
            details: Additional error details
        """
        super().__init__(
            message=message,
            error_code=error_code,
            details=details
        )


class BadSymbolError(ValidationError):
    """Path contains a symbol outside {U, H, D}."""

    def __init__(self, symbol: str, position: int):
        """
        Initialize bad symbol error.

        Args:
            symbol: Offending symbol
            position: 1-indexed move position
        """
        super().__init__(
            f"Symbol '{symbol}' at move {position} is not one of U, H, D",
            error_code="BAD_SYMBOL",
            symbol=symbol,
            position=position
        )


class NegativeHeightError(ValidationError):
    """Path prefix dips below the axis."""

    def __init__(self, position: int):
        """
        Initialize negative height error.

        Args:
            position: 1-indexed move that goes below zero
        """
        super().__init__(
            f"Path goes below the axis at move {position}",
            error_code="NEGATIVE_HEIGHT",
            position=position
        )


class NonzeroEndError(ValidationError):
    """Path does not return to the axis."""

    def __init__(self, height: int):
        """
        Initialize nonzero end error.

        Args:
            height: Final height of the path
        """
        super().__init__(
            f"Path ends at height {height} instead of 0",
            error_code="NONZERO_END",
            height=height
        )


class BadSequenceError(ValidationError):
    """Building sequence violates its width, area or peak constraints."""

    def __init__(self, message: str):
        super().__init__(message, error_code="BAD_SEQUENCE")


class BadPermutationError(ValidationError):
    """Image list is not a bijection on {1..n}."""

    def __init__(self, message: str):
        super().__init__(message, error_code="BAD_PERMUTATION")


class TooLargeError(AppException):
    """Brute-force enumeration requested beyond its limit."""

    def __init__(self, n: int, limit: int):
        """
        Initialize too large error.

        Args:
            n: Requested size
            limit: Largest supported size
        """
        super().__init__(
            message=f"n={n} exceeds the brute-force limit of {limit}",
            error_code="TOO_LARGE",
            details={"n": n, "limit": limit}
        )


class CapExceededError(AppException):
    """Enumeration produced more objects than the configured cap."""

    def __init__(self, n: int, area: int, cap: int):
        super().__init__(
            message=f"S({n},{area}) has more than {cap} building sequences",
            error_code="CAP_EXCEEDED",
            details={"n": n, "area": area, "cap": cap}
        )


class OutOfRangeError(AppException):
    """Requested table entry lies outside what was built or retained."""

    def __init__(self, message: str, **details: Any):
        super().__init__(
            message=message,
            error_code="OUT_OF_RANGE",
            details=details
        )


class EmptyClassError(AppException):
    """Sampling requested from an empty class of paths."""

    def __init__(self, n: int, area: int):
        """
        Initialize empty class error.

        Args:
            n: Path width
            area: Path area
        """
        super().__init__(
            message=f"No path of width {n} and area {area} exists",
            error_code="EMPTY_CLASS",
            details={"n": n, "area": area}
        )


class WrongModeError(AppException):
    """Operation needs a table built in a different memory mode."""

    def __init__(self, required: str, actual: str):
        """
        Initialize wrong mode error.

        Args:
            required: Mode the operation needs
            actual: Mode the table was built in
        """
        super().__init__(
            message=(
                f"Operation requires a {required} table but it was built in {actual} mode; "
                "backtrace sampling needs every layer"
            ),
            error_code="WRONG_MODE",
            details={"required": required, "actual": actual}
        )


class InfeasibleError(AppException):
    """No building sequence exists for the requested width and area."""

    def __init__(self, n: int, area: int):
        super().__init__(
            message=f"No building sequence of width {n} and area {area} exists",
            error_code="INFEASIBLE",
            details={"n": n, "area": area}
        )


class NotMixedError(AppException):
    """Total variation never fell below the threshold within the horizon."""

    def __init__(self, steps: int, epsilon: float, last_tv: float):
        """
        Initialize not mixed error.

        Args:
            steps: Horizon that was exhausted
            epsilon: Mixing threshold
            last_tv: Total variation at the last scheduled step
        """
        super().__init__(
            message=(
                f"Total variation {last_tv:.4f} still above {epsilon} after {steps} steps"
            ),
            error_code="NOT_MIXED",
            details={"steps": steps, "epsilon": epsilon, "last_tv": last_tv}
        )


class VerificationError(AppException):
    """One or more cross-checks failed."""

    def __init__(self, failed: list[str]):
        """
        Initialize verification error.

        Args:
            failed: Names of the failed checks
        """
        super().__init__(
            message=f"{len(failed)} check(s) failed: {', '.join(failed)}",
            exit_code=EXIT_VERIFICATION,
            error_code="VERIFICATION_FAILED",
            details={"failed": failed}
        )


class InvariantViolation(AppException):
    """An internal invariant was broken during a construction."""

    def __init__(self, message: str, **details: Any):
        super().__init__(
            message=message,
            exit_code=EXIT_VERIFICATION,
            error_code="INVARIANT_VIOLATION",
            details=details
        )
