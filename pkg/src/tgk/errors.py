"""Exception and warning types shared across the package.

The CLI maps these onto distinct exit codes: configuration problems (1),
domain/precondition violations (2), numeric overflow (3), ill-posedness (4).
"""

from __future__ import annotations


class TgkError(Exception):
    """Base class for all package errors."""


class ConfigError(TgkError):
    """Scenario file missing, malformed, or schema-violating."""


class DomainError(TgkError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at a pole (non-positive integer of the gamma function)."""


class InvalidParamsError(DomainError):
    """Parameter triple violates the admissibility condition of the series."""


class SeriesOverflowError(TgkError, OverflowError):
    """Series value exceeds the floating range.

    ``log10_magnitude`` carries the base-10 log of the partial sum at the point
    the evaluation was abandoned, so callers can still reason about growth.
    """

    def __init__(self, message: str, log10_magnitude: float, sign: float = 1.0):
        super().__init__(message)
        self.log10_magnitude = log10_magnitude
        self.sign = sign


class NegativeSymbolError(TgkError):
    """A Fourier symbol evaluated to a negative value."""


class ResolutionError(TgkError):
    """Quadrature grid too coarse to resolve the requested eigenfunction."""


class BoundarySupportError(TgkError):
    """Grid data does not decay at the box boundary; periodization would alias."""


class IllPosedDecayError(TgkError):
    """Decay-at-infinity requested for an operator with a zero eigenvalue and
    nonzero mean data; no solution exists."""


class SeedRegimeError(TgkError):
    """Backward-integration start point not deep enough in the decay regime."""


class StiffnessError(TgkError):
    """Adaptive ODE stepping failed to reach the requested tolerance."""


class PrecisionError(TgkError):
    """Extended-precision summation could not certify the requested remainder."""


class QuadratureWarning(UserWarning):
    """Kernel mass outside the truncated box exceeds the reporting threshold."""


class OverflowWarning(RuntimeWarning):
    """Evaluation close to a singular point; result may lose accuracy."""
