"""Simulation toolkit for orthogonal-state quantum search and time-optimal evolution."""

from ._backend import BACKEND, COMPILED
from .errors import (
    CoincidentStates,
    DegenerateOverlap,
    DegenerateResult,
    DimensionMismatch,
    EmptyTrajectory,
    EpsilonOutOfRange,
    NoProgress,
    NonUnitAxis,
    NotHermitian,
    NotNormalized,
    NotOrthogonal,
    NumericalAssertionError,
    OrthogonalSourceTarget,
    OrthoSearchError,
    StepTooLarge,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "COMPILED",
    "CoincidentStates",
    "DegenerateOverlap",
    "DegenerateResult",
    "DimensionMismatch",
    "EmptyTrajectory",
    "EpsilonOutOfRange",
    "NoProgress",
    "NonUnitAxis",
    "NotHermitian",
    "NotNormalized",
    "NotOrthogonal",
    "NumericalAssertionError",
    "OrthoSearchError",
    "OrthogonalSourceTarget",
    "StepTooLarge",
]
