"""Numerical machinery for degenerate fractional elliptic boundary value
problems of Tricomi-Gellerstedt-Keldysh type: Kilbas-Saigo and Mittag-Leffler
special functions with error control, sequential Caputo calculus on grids,
eigenfunction-expansion and Fourier-multiplier solvers, and a claim-auditing
verification layer.
"""

from .errors import (
    BoundarySupportError,
    ConfigError,
    DomainError,
    IllPosedDecayError,
    InvalidParamsError,
    NegativeSymbolError,
    OverflowWarning,
    PoleError,
    PrecisionError,
    QuadratureWarning,
    ResolutionError,
    SeedRegimeError,
    SeriesOverflowError,
    StiffnessError,
)
from .specfun import EvalResult, KSParams, airy_ai, bessel_k, kilbas_saigo, log_gamma, mittag_leffler

__all__ = [
    "BoundarySupportError",
    "ConfigError",
    "DomainError",
    "EvalResult",
    "IllPosedDecayError",
    "InvalidParamsError",
    "KSParams",
    "NegativeSymbolError",
    "OverflowWarning",
    "PoleError",
    "PrecisionError",
    "QuadratureWarning",
    "ResolutionError",
    "SeedRegimeError",
    "SeriesOverflowError",
    "StiffnessError",
    "airy_ai",
    "bessel_k",
    "kilbas_saigo",
    "log_gamma",
    "mittag_leffler",
]

__version__ = "0.1.0"
