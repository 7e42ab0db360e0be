"""Exception types shared by every layer of the package.

Domain violations (bad arguments, impossible geometry) raise ``DomainError``.
Failures that appear only at runtime inside an otherwise valid call (overflow
of an unscaled result, a root bracket that never closes, a scan that hits its
cap) raise subclasses of ``NumericError`` so callers can distinguish "you
asked a malformed question" from "the computation could not be completed".
"""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class NumericError(ArithmeticError):
    """Base class for runtime numeric failures inside a valid call."""


class RangeOverflowError(NumericError):
    """An unscaled result exceeds double range; use the log-scaled variant."""


class NoRootError(NumericError):
    """A root bracket could not be established or refined to tolerance."""


class DegenerateSpectrumError(NumericError):
    """Two-group spectrum requested where the two scales coincide."""


class UnboundedRangeError(NumericError):
    """A scan reached its cap without the sought sign change."""


class ConfigError(ValueError):
    """A config file or CLI parameter set is malformed or inconsistent."""


class SweepError(RuntimeError):
    """A sweep aborted part-way; ``partial_rows`` holds completed rows."""

    def __init__(self, message: str, partial_rows=None):
        super().__init__(message)
        self.partial_rows = list(partial_rows) if partial_rows is not None else []
