"""Small 1-D two-field model used to cross-check the constrained-coupling
machinery against dense linear algebra."""
from __future__ import annotations

import numpy as np

from ..brackets import BracketOperator
from ..constraints import ConstraintCoupling, ConstraintSet
from ..fields import Schema, Slot, State
from ..grids import Grid, deriv_wavenumbers
from .base import SystemSpec

__all__ = ["toy_system"]


def _ddx(grid: Grid, f: np.ndarray) -> np.ndarray:
    k = deriv_wavenumbers(grid, 0)
    return np.fft.ifft(1j * k * np.fft.fft(f)).real


class ToyBracket(BracketOperator):
    """Constant skew operator [[0, M], [-M*, 0]] with M = g(x) + d/dx.

    On the periodic line M has no kernel (the would-be null mode
    exp(-integral of g) is not periodic), which keeps the constrained
    coupling built on top of it invertible.
    """

    def __init__(self, schema: Schema, g: np.ndarray):
        super().__init__("toy", schema, affine_in_state=True)
        self.constant_in_state = True
        self.g = g

    def apply(self, chi: State, a: State) -> State:
        grid = self.schema.grid
        out_r = self.g * a["u"] + _ddx(grid, a["u"])
        out_u = -self.g * a["r"] + _ddx(grid, a["r"])
        return State(self.schema, {"r": out_r, "u": out_u})

    def state_derivative(self, chi: State, u: State, a: State) -> State:
        return self.schema.zeros()


class ToyConstraints(ConstraintSet):
    """Single pointwise pin h(x) r + p(x) u mixing both fields.

    One 16-point constraint against a 32-point state leaves a nontrivial
    surface, and the mixed weights keep the saddle operator full rank.
    """

    def __init__(self, schema: Schema, constraint_schema: Schema,
                 h: np.ndarray, p: np.ndarray):
        super().__init__("toy-pin", schema, constraint_schema)
        self.h = h
        self.p = p

    def value(self, chi: State) -> State:
        return State(self.constraint_schema,
                     {"pin": self.h * chi["r"] + self.p * chi["u"]})

    def qhat(self, u: State) -> State:
        return self.value(u)

    def qhat_adjoint(self, w: State) -> State:
        return State(self.state_schema,
                     {"r": self.h * w["pin"], "u": self.p * w["pin"]})

    def gram_inverse(self, w: State) -> State:
        return State(self.constraint_schema,
                     {"pin": w["pin"] / (self.h ** 2 + self.p ** 2)})


def toy_system(grid: Grid | None = None) -> SystemSpec:
    grid = grid or Grid.spatial((16,))
    if grid.ndim_x != 1 or grid.ndim_v != 0:
        raise ValueError("the toy model is one-dimensional")
    schema = Schema(grid, (Slot("r", "scalar"), Slot("u", "scalar")))
    cschema = Schema(grid, (Slot("pin", "scalar"),))

    x = grid.x_axis(0)
    g = 1.0 + 0.4 * np.cos(x)
    # the near-Nyquist content in p keeps the coupling operator well
    # conditioned (its slow mode tracks (h p)^(-1/2), so a smooth product
    # would leave an almost-null vector at this resolution)
    h = 1.0 + 0.3 * np.sin(x) + 0.2 * np.cos(3.0 * x)
    p = 0.8 + 0.3 * np.sin(7.0 * x)
    bracket = ToyBracket(schema, g)
    constraints = ToyConstraints(schema, cschema, h, p)
    coupling = ConstraintCoupling(bracket, constraints, krylov_tol=1e-12)

    return SystemSpec(
        name="toy",
        schema=schema,
        brackets={"toy": bracket},
        default_bracket="toy",
        constraints={"pin": constraints},
        couplings={"pin": coupling},
    )
