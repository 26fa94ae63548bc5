"""Exception hierarchy shared by every module of the package."""
from __future__ import annotations


class PKSpecialError(Exception):
    """Base class for all package errors."""


class ArgumentError(PKSpecialError, ValueError):
    """Malformed call: bad interval, bad order, invalid settings."""


class DomainError(PKSpecialError, ValueError):
    """Argument outside the mathematical domain of a function."""


class UnsupportedOrderError(ArgumentError):
    """Requested derivative order exceeds the supported cap."""


class EvaluationError(PKSpecialError, ArithmeticError):
    """A numerical evaluation produced a non-finite or unconverged value.

    Parameters
    ----------
    message : str
        Human readable description.
    abscissa : float, optional
        Integration node at which the integrand misbehaved, if known.
    """

    def __init__(self, message: str, abscissa: float | None = None):
        super().__init__(message)
        self.abscissa = abscissa


class CapacityError(PKSpecialError, OverflowError):
    """Exact integer arithmetic exceeded the supported range."""


class ConsistencyError(PKSpecialError, RuntimeError):
    """An internal invariant was broken (sign pattern, ordering)."""
