"""Pseudo-spectral laboratory for constrained Hamiltonian field brackets.

The package builds noncanonical Poisson operators for a family of fluid and
kinetic models, reduces them onto constraint surfaces (orthogonal and
Dirac-type projections), and ships seeded numerical suites that certify the
algebraic identities the constructions must satisfy.
"""
from .brackets import (BracketOperator, ProjectedBracketOperator,
                       antisymmetry_residual, bracket_functional,
                       bracket_value, casimir_residual, jacobi_residual)
from .constraints import (ConstraintCoupling, ConstraintSet,
                          frechet_pair_residual, gram_rayleigh_estimate)
from .errors import (ASolveError, BracketLabError,
                     OrthogonalProjectorUnavailable, SimulationDiverged)
from .fields import (Schema, Slot, State, integrate, pairing, random_field,
                     random_state, state_norm)
from .functionals import (BlackBoxFunctional, Functional, LinearFunctional,
                          QuadraticFunctional, directional_residual)
from .grids import Grid
from .reduction import (DiracBracket, Projector, dirac_bracket,
                        dirac_projector, orthogonal_projector,
                        projected_bracket, projector_residuals,
                        solenoidal_projector)
from .systems import SYSTEMS, SystemSpec, build_grid, get_system

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Grid", "Slot", "Schema", "State", "integrate", "pairing", "state_norm",
    "random_field", "random_state",
    "Functional", "LinearFunctional", "QuadraticFunctional",
    "BlackBoxFunctional", "directional_residual",
    "BracketOperator", "ProjectedBracketOperator", "bracket_value",
    "bracket_functional", "antisymmetry_residual", "jacobi_residual",
    "casimir_residual",
    "ConstraintSet", "ConstraintCoupling", "frechet_pair_residual",
    "gram_rayleigh_estimate",
    "Projector", "solenoidal_projector", "orthogonal_projector",
    "dirac_projector", "DiracBracket", "dirac_bracket", "projected_bracket",
    "projector_residuals",
    "SYSTEMS", "SystemSpec", "get_system", "build_grid",
    "BracketLabError", "ASolveError", "OrthogonalProjectorUnavailable",
    "SimulationDiverged",
]
