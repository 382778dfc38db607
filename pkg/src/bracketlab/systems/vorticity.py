"""3-D vorticity dynamics: a bracket that only closes on divergence-free
states, and its corrected form with the solenoidal projector."""
from __future__ import annotations

import numpy as np

from ..brackets import BracketOperator
from ..calculus import curl, grad, inv_div_grad, solenoidal_part
from ..fields import Schema, Slot, State, random_field
from ..functionals import LinearFunctional, QuadraticFunctional
from ..grids import Grid
from ..reduction import projected_bracket, solenoidal_projector
from .base import CasimirFamily, SystemSpec

__all__ = ["vorticity_system", "velocity_from_vorticity", "curl_transport_rhs"]


def _cross(a, b):
    return np.cross(a, b, axis=0)


class VorticityBracket(BracketOperator):
    """J(w) a = curl((curl a) x w); linear in the state w."""

    def __init__(self, schema: Schema):
        super().__init__("tainted", schema, affine_in_state=True)

    def apply(self, chi: State, a: State) -> State:
        g = self.schema.grid
        w = chi["omega"]
        out = curl(g, _cross(curl(g, a["omega"]), w))
        return State(self.schema, {"omega": out})

    def state_derivative(self, chi: State, u: State, a: State) -> State:
        return self.apply(u, a)

    def state_kernel(self, b: State, c: State) -> State:
        g = self.schema.grid
        kern = _cross(curl(g, b["omega"]), curl(g, c["omega"]))
        return State(self.schema, {"omega": kern})


def velocity_from_vorticity(grid: Grid, w: np.ndarray) -> np.ndarray:
    """Mean-free divergence-free velocity with curl v = solenoidal part of w."""
    return -curl(grid, inv_div_grad(grid, w))


def curl_transport_rhs(grid: Grid, w: np.ndarray) -> np.ndarray:
    """curl(v x w) with v reconstructed from w (the expected dynamics)."""
    return curl(grid, _cross(velocity_from_vorticity(grid, w), w))


def vorticity_system(grid: Grid | None = None) -> SystemSpec:
    grid = grid or Grid.spatial(16)
    if grid.ndim_x != 3 or grid.ndim_v != 0:
        raise ValueError("vorticity dynamics needs a 3-D spatial grid")
    schema = Schema(grid, (Slot("omega", "vector"),))

    tainted = VorticityBracket(schema)
    projector = solenoidal_projector(schema, ["omega"])
    corrected = projected_bracket(tainted, projector, name="corrected")

    def apply_K(chi: State) -> State:
        # H = 1/2 int |v|^2 with v = -curl(inv_div_grad(w)); derivative below
        return State(schema, {"omega": -inv_div_grad(grid, solenoidal_part(grid, chi["omega"]))})

    hamiltonian = QuadraticFunctional(schema, apply_K, name="kinetic-energy")

    def div_omega_casimir(seed: int) -> LinearFunctional:
        wfun = random_field(grid, "scalar", (seed, 77), band=2, amplitude=1.0)
        kernel = State(schema, {"omega": -grad(grid, wfun)})
        return LinearFunctional(kernel, name="weighted-divergence")

    return SystemSpec(
        name="vorticity",
        schema=schema,
        brackets={"tainted": tainted, "corrected": corrected},
        default_bracket="corrected",
        hamiltonian=hamiltonian,
        closed_forms={"projector": projector},
        casimirs={"div_omega": CasimirFamily(
            "div_omega", div_omega_casimir, ("corrected", "tainted"))},
    )
