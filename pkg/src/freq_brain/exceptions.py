"""Exception hierarchy; each family maps to one CLI exit code."""


class FreqBrainError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ConfigError(FreqBrainError):
    """Invalid, missing or unknown configuration."""

    exit_code = 1


class DataError(FreqBrainError, ValueError):
    """Input data is missing, malformed or unusable."""

    exit_code = 2


class NumericError(FreqBrainError, ArithmeticError):
    """A numerical routine failed (non-convergence, non-finite values)."""

    exit_code = 3


class ShapeError(NumericError, ValueError):
    """Operand dimensions do not agree."""
