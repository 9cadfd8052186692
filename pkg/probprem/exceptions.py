"""Custom exceptions for probprem."""

from __future__ import annotations

from typing import Sequence


class ProbPremError(Exception):
    """Base class for every error raised by probprem."""


class LotteryError(ProbPremError, ValueError):
    """Raised when lottery atoms are invalid (bad probability, bad mass)."""


class SpecError(ProbPremError, ValueError):
    """Raised when a spread specification violates its bounds."""


class DomainViolation(ProbPremError, ValueError):
    """Raised when an argument lies outside a model's domain."""


class KinkError(ProbPremError, ValueError):
    """Raised when a two-sided derivative is requested at a kink."""


class SolverError(ProbPremError, RuntimeError):
    """Raised when a root finder fails to produce a root."""


class NoBracket(SolverError):
    """Raised when the bracket scan finds no sign change.

    The scanned abscissae and residuals are kept so callers can report them.
    """

    def __init__(
        self,
        message: str,
        points: Sequence[float] = (),
        values: Sequence[float] = (),
    ) -> None:
        super().__init__(message)
        self.points = tuple(points)
        self.values = tuple(values)
