"""
Exception hierarchy shared by every ResamplePilot component.

The command line maps each branch to an exit status: configuration problems
exit 1, data problems exit 2, pipeline problems exit 3.
"""
from typing import Optional


class ResamplePilotError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(ResamplePilotError):
    """Invalid or unreadable run configuration."""


class DatasetError(ResamplePilotError, ValueError):
    """Problem with input data."""


class DatasetParseError(DatasetError):
    """A KEEL or CSV document could not be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class DatasetValidationError(DatasetError):
    """Data parsed but violates a dataset invariant."""


class SamplingError(ResamplePilotError):
    """A resampling stage failed."""


class ProgramEvaluationError(SamplingError, ArithmeticError):
    """A GP program produced a non-finite value."""


class DegenerateFitnessError(SamplingError, ArithmeticError):
    """A fitness component is undefined for the given triangle."""


class GranularBallError(SamplingError):
    """Granular-ball construction contract violated."""


class RebalancingError(SamplingError):
    """Undersampling eliminated a class entirely."""


class EvaluationError(SamplingError, ValueError):
    """Classifier or metric preconditions not met."""
