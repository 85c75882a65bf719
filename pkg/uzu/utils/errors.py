"""
Exception hierarchy for uzu.
Each error carries the process exit status the CLI reports for it.
"""

EXIT_SUCCESS = 0
EXIT_INVALID_INPUT = 1
EXIT_CHECK_FAILURE = 2
EXIT_NUMERIC_FAILURE = 3


class UzuError(Exception):
    """Base class for all errors raised by uzu."""

    exit_code = EXIT_INVALID_INPUT


class InvalidInputError(UzuError, ValueError):
    """Raised when an argument, grid or field violates its preconditions."""

    exit_code = EXIT_INVALID_INPUT


class CheckFailure(UzuError):
    """Raised when a verification check does not meet its tolerance."""

    exit_code = EXIT_CHECK_FAILURE


class NumericFailureError(UzuError, ArithmeticError):
    """Raised when an eigensolver or quadrature fails to produce a usable result."""

    exit_code = EXIT_NUMERIC_FAILURE


class NoSignChangeError(InvalidInputError):
    """Raised when a bisection bracket has the same eigenvalue sign at both ends."""
