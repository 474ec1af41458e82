"""
Exception hierarchy for hilbertcone.

Input problems derive from ValueError so callers that only know the
builtin hierarchy still catch them.
"""


class HilbertConeError(Exception):
    """Base class for all errors raised by hilbertcone."""


class ParseError(HilbertConeError, ValueError):
    """Malformed input text."""

    def __init__(self, message: str, line_number: int = 0):
        self.line_number = line_number
        if line_number:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class ConfigurationError(HilbertConeError, ValueError):
    """Inconsistent task, grading or threshold selection, or an unsupported cone."""


class DimensionError(HilbertConeError, ValueError):
    """Matrix shapes do not fit the requested operation."""


class SingularMatrixError(HilbertConeError, ArithmeticError):
    """A nonsingular matrix was required."""


class ConsistencyError(HilbertConeError, AssertionError):
    """An internal cross-check failed."""
