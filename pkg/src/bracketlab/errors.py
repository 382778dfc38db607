"""Exception types shared across the package."""
from __future__ import annotations

__all__ = ["BracketLabError", "ASolveError", "OrthogonalProjectorUnavailable",
           "SimulationDiverged"]


class BracketLabError(RuntimeError):
    """Base class for package-specific failures."""


class ASolveError(BracketLabError):
    """The constraint-coupling solve did not converge."""


class OrthogonalProjectorUnavailable(BracketLabError):
    """The Gram operator of a semi-local constraint set is unbounded in the
    velocity cutoff, so no orthogonal projector exists."""


class SimulationDiverged(BracketLabError):
    """A time integration produced non-finite values."""
