"""Exception hierarchy shared by all quadnet modules."""

from __future__ import annotations


class QuadnetError(Exception):
    """Base class for all errors raised by this package."""


class PhysicalityError(QuadnetError):
    """A covariance matrix violates the uncertainty relation beyond tolerance."""


class ConventionSearchError(QuadnetError):
    """No phase/sign convention reproduces the reference correlations."""


class FitNonConvergenceError(QuadnetError):
    """A calibration fit objective was too flat to locate a minimum."""


class NetworkParseError(QuadnetError):
    """Base class for network-file parse errors.

    Parameters
    ----------
    message : str
        Human-readable description.
    line : int
        1-based line number of the offending token.
    column : int
        1-based column number of the offending token.
    """

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class UnknownKeywordError(NetworkParseError):
    """A line starts with a keyword outside the network grammar."""


class UndeclaredLabelError(NetworkParseError):
    """An element references a mode label that was never declared."""


class ParameterRangeError(NetworkParseError):
    """A numeric parameter lies outside its physical range."""


class NetworkFormatError(NetworkParseError):
    """Structurally malformed network text (arity, duplicates, missing output)."""
