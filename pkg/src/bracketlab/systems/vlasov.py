"""Kinetic models on a phase-space grid: a distribution coupled to
electromagnetic fields, plus the electrostatic reduction obtained by
pinning curl E and the magnetic field."""
from __future__ import annotations

import numpy as np

from ..brackets import BracketOperator
from ..calculus import (
    compressible_part,
    curl,
    div,
    grad,
    inv_div_grad,
    inv_lap,
    inv_sqrt_neg_lap,
    mean_part,
    solenoidal_part,
    v_grad,
    v_integrate,
    x_grad,
)
from ..constraints import ConstraintCoupling, ConstraintSet
from ..fields import Schema, Slot, State, integrate, random_field
from ..functionals import Functional, LinearFunctional
from ..grids import Grid
from ..reduction import DiracBracket
from .base import CasimirFamily, SystemSpec

__all__ = [
    "VMBracket",
    "KineticHamiltonian",
    "charge_density",
    "velocity_moment",
    "vlasov_maxwell_system",
    "vlasov_poisson_reduction",
]

_PARENT_OPS = {"inv_lap": inv_lap, "inv_sqrt_neg_lap": inv_sqrt_neg_lap}


def _to_phase(grid: Grid, arr: np.ndarray) -> np.ndarray:
    """Broadcast a spatial array (or stack of them) over the velocity axes."""
    return arr.reshape(arr.shape + (1,) * grid.ndim_v)


def _dot(a, b):
    return np.einsum("i...,i...->...", a, b)


def canonical_bracket(grid: Grid, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """[x, y] = grad_x x . grad_v y - grad_v x . grad_x y on phase space."""
    return (_dot(x_grad(grid, x), v_grad(grid, y))
            - _dot(v_grad(grid, x), x_grad(grid, y)))


def gyro_bracket(grid: Grid, B: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """B . (grad_v x cross grad_v y) with a spatial field B."""
    c = np.cross(v_grad(grid, x), v_grad(grid, y), axis=0)
    return _dot(_to_phase(grid, B), c)


def charge_density(grid: Grid, f: np.ndarray) -> np.ndarray:
    return v_integrate(grid, f)


def velocity_moment(grid: Grid, f: np.ndarray, a_f: np.ndarray) -> np.ndarray:
    """int d^3v f grad_v a_f, one spatial component per velocity axis."""
    gv = v_grad(grid, a_f)
    return np.stack([v_integrate(grid, f * gv[k]) for k in range(grid.ndim_v)])


def _kinetic_weight(grid: Grid) -> np.ndarray:
    kin = sum(grid.velocity_mesh(j) ** 2 for j in range(grid.ndim_v))
    return 0.5 * np.broadcast_to(kin, grid.shape).copy()


class KineticHamiltonian(Functional):
    """Particle kinetic energy plus field energy."""

    def __init__(self, schema: Schema):
        super().__init__(schema, name="total-energy")
        self._kin = _kinetic_weight(schema.grid)

    def value(self, chi: State) -> float:
        grid = self.schema.grid
        particles = integrate(grid, chi["f"] * self._kin)
        fields = 0.5 * integrate(grid, _dot(chi["E"], chi["E"]) + _dot(chi["B"], chi["B"]))
        return float(particles + fields)

    def derivative(self, chi: State) -> State:
        return State(self.schema, {
            "f": self._kin.copy(), "E": chi["E"].copy(), "B": chi["B"].copy(),
        })


class VMBracket(BracketOperator):
    """Kinetic-electromagnetic operator on (f, E, B) kernels.

    ``magnetic`` selects whether the raw field or its solenoidal part enters
    the velocity-space rotation term.  ``parent_op`` optionally adds the
    gradient-coupling terms of the enclosing family (a negative-definite
    multiplier D applied between div E and div B kernels).
    """

    def __init__(self, magnetic: str, schema: Schema, parent_op: str | None = None):
        if magnetic not in ("tainted", "projected"):
            raise ValueError("magnetic must be 'tainted' or 'projected'")
        if parent_op is not None and parent_op not in _PARENT_OPS:
            raise ValueError(f"parent_op must be one of {tuple(_PARENT_OPS)}")
        name = magnetic if parent_op is None else f"parent[{parent_op}]"
        super().__init__(name, schema, affine_in_state=False)
        self.magnetic = magnetic
        self.parent_op = parent_op

    def _beff(self, B: np.ndarray) -> np.ndarray:
        grid = self.schema.grid
        return solenoidal_part(grid, B) if self.magnetic == "projected" else B

    def apply(self, chi: State, a: State) -> State:
        grid = self.schema.grid
        f = chi["f"]
        Beff = self._beff(chi["B"])
        a_f, a_E, a_B = a["f"], a["E"], a["B"]

        gv_f = v_grad(grid, f)
        out_f = (-canonical_bracket(grid, f, a_f)
                 - gyro_bracket(grid, Beff, f, a_f)
                 - _dot(gv_f, _to_phase(grid, a_E)))
        out_E = -velocity_moment(grid, f, a_f) + curl(grid, a_B)
        out_B = -curl(grid, a_E)
        if self.parent_op is not None:
            op = _PARENT_OPS[self.parent_op]
            out_E = out_E + grad(grid, op(grid, div(grid, a_B)))
            out_B = out_B - grad(grid, op(grid, div(grid, a_E)))
        return State(self.schema, {"f": out_f, "E": out_E, "B": out_B})

    def state_derivative(self, chi: State, u: State, a: State) -> State:
        grid = self.schema.grid
        Beff = self._beff(chi["B"])
        dBeff = self._beff(u["B"])
        a_f, a_E = a["f"], a["E"]

        d_f = (-canonical_bracket(grid, u["f"], a_f)
               - gyro_bracket(grid, Beff, u["f"], a_f)
               - gyro_bracket(grid, dBeff, chi["f"], a_f)
               - _dot(v_grad(grid, u["f"]), _to_phase(grid, a_E)))
        d_E = -velocity_moment(grid, u["f"], a_f)
        return State(self.schema, {
            "f": d_f, "E": d_E, "B": np.zeros((3,) + grid.shape_x),
        })


def _kinetic_schema(grid: Grid) -> Schema:
    return Schema(grid, (Slot("f", "phase"), Slot("E", "vector"), Slot("B", "vector")))


def _gauss_family(schema: Schema, brackets: tuple[str, ...]) -> CasimirFamily:
    grid = schema.grid

    def build(seed: int) -> LinearFunctional:
        wfun = random_field(grid, "scalar", (seed, 51), band=2)
        kernel = schema.zeros()
        kernel["f"] = np.broadcast_to(_to_phase(grid, -wfun), grid.shape).copy()
        kernel["E"] = -grad(grid, wfun)
        return LinearFunctional(kernel, name="weighted-gauss-law")

    return CasimirFamily("gauss", build, brackets)


def _div_b_family(schema: Schema, brackets: tuple[str, ...]) -> CasimirFamily:
    grid = schema.grid

    def build(seed: int) -> LinearFunctional:
        wfun = random_field(grid, "scalar", (seed, 53), band=2)
        kernel = schema.zeros()
        kernel["B"] = -grad(grid, wfun)
        return LinearFunctional(kernel, name="weighted-div-B")

    return CasimirFamily("div_b", build, brackets)


def vlasov_maxwell_system(
    grid: Grid | None = None, parent_op: str = "inv_lap"
) -> SystemSpec:
    grid = grid or Grid.phase(8, 6, 2.0)
    if grid.ndim_x != 3 or grid.ndim_v != 3:
        raise ValueError("the kinetic-electromagnetic model needs a 3+3-D phase grid")
    schema = _kinetic_schema(grid)

    brackets = {
        "tainted": VMBracket("tainted", schema),
        "projected": VMBracket("projected", schema),
        "parent": VMBracket("projected", schema, parent_op=parent_op),
    }
    return SystemSpec(
        name="vlasov-maxwell",
        schema=schema,
        brackets=brackets,
        default_bracket="projected",
        hamiltonian=KineticHamiltonian(schema),
        casimirs={
            "gauss": _gauss_family(schema, ("projected", "tainted")),
            "div_b": _div_b_family(schema, ("projected", "tainted")),
        },
    )


# ---------------------------------------------------------------------------
# electrostatic reduction
# ---------------------------------------------------------------------------

class ElectrostaticConstraints(ConstraintSet):
    """Pin curl E to zero and the magnetic field to a background."""

    def __init__(self, schema: Schema, B0: np.ndarray):
        grid = schema.grid
        cschema = Schema(grid, (Slot("curl_e", "vector"), Slot("b_dev", "vector")))
        super().__init__("electrostatic", schema, cschema)
        self.B0 = B0

    def value(self, chi: State) -> State:
        grid = self.state_schema.grid
        return State(self.constraint_schema, {
            "curl_e": curl(grid, chi["E"]),
            "b_dev": chi["B"] - self.B0,
        })

    def qhat(self, u: State) -> State:
        grid = self.state_schema.grid
        return State(self.constraint_schema, {
            "curl_e": curl(grid, u["E"]),
            "b_dev": u["B"].copy(),
        })

    def qhat_adjoint(self, w: State) -> State:
        grid = self.state_schema.grid
        out = self.state_schema.zeros()
        out["E"] = curl(grid, w["curl_e"])
        out["B"] = w["b_dev"].copy()
        return out

    def gram_inverse(self, w: State) -> State:
        grid = self.state_schema.grid
        return State(self.constraint_schema, {
            "curl_e": -inv_div_grad(grid, solenoidal_part(grid, w["curl_e"])),
            "b_dev": w["b_dev"].copy(),
        })


def _vp_a_inverse(schema: Schema):
    grid = schema.grid

    def a_inverse(chi: State, w: State) -> State:
        return State(w.schema, {
            "curl_e": inv_div_grad(grid, solenoidal_part(grid, w["b_dev"])),
            "b_dev": -inv_div_grad(grid, solenoidal_part(grid, w["curl_e"])),
        })

    return a_inverse


def _vp_composite(schema: Schema, cschema: Schema):
    grid = schema.grid

    def composite(chi: State, t: State) -> State:
        return State(cschema, {
            "curl_e": inv_div_grad(grid, solenoidal_part(grid, t["B"])),
            "b_dev": -inv_div_grad(grid, curl(grid, t["E"])),
        })

    return composite


def _longitudinal(grid: Grid, arr: np.ndarray) -> np.ndarray:
    return compressible_part(grid, arr) + mean_part(grid, arr)


def _vp_pstar(schema: Schema):
    grid = schema.grid

    def pstar(chi: State, a: State) -> State:
        moment = velocity_moment(grid, chi["f"], a["f"])
        return State(schema, {
            "f": a["f"].copy(),
            "E": _longitudinal(grid, a["E"]),
            "B": _longitudinal(grid, a["B"]) - inv_div_grad(grid, curl(grid, moment)),
        })

    return pstar


class ClosedElectrostaticBracket(BracketOperator):
    """Hand-reduced form of the constrained kinetic operator."""

    def __init__(self, schema: Schema):
        super().__init__("dirac_closed", schema, affine_in_state=False)

    def apply(self, chi: State, a: State) -> State:
        grid = self.schema.grid
        f = chi["f"]
        Beff = solenoidal_part(grid, chi["B"])
        aE_eff = _longitudinal(grid, a["E"])
        out_f = (-canonical_bracket(grid, f, a["f"])
                 - gyro_bracket(grid, Beff, f, a["f"])
                 - _dot(v_grad(grid, f), _to_phase(grid, aE_eff)))
        moment = velocity_moment(grid, f, a["f"])
        return State(self.schema, {
            "f": out_f,
            "E": -_longitudinal(grid, moment),
            "B": np.zeros((3,) + grid.shape_x),
        })

    def state_derivative(self, chi: State, u: State, a: State) -> State:
        grid = self.schema.grid
        Beff = solenoidal_part(grid, chi["B"])
        dBeff = solenoidal_part(grid, u["B"])
        aE_eff = _longitudinal(grid, a["E"])
        d_f = (-canonical_bracket(grid, u["f"], a["f"])
               - gyro_bracket(grid, Beff, u["f"], a["f"])
               - gyro_bracket(grid, dBeff, chi["f"], a["f"])
               - _dot(v_grad(grid, u["f"]), _to_phase(grid, aE_eff)))
        d_E = -_longitudinal(grid, velocity_moment(grid, u["f"], a["f"]))
        return State(self.schema, {
            "f": d_f, "E": d_E, "B": np.zeros((3,) + grid.shape_x),
        })


def _vp_reduced_value(schema: Schema):
    grid = schema.grid

    def value(chi: State, b: State, a: State) -> float:
        f = chi["f"]
        Beff = solenoidal_part(grid, chi["B"])
        eta_a = _to_phase(grid, inv_div_grad(grid, div(grid, a["E"])))
        eta_b = _to_phase(grid, inv_div_grad(grid, div(grid, b["E"])))
        af_eff = a["f"] - eta_a
        bf_eff = b["f"] - eta_b
        lie = (canonical_bracket(grid, bf_eff, af_eff)
               + gyro_bracket(grid, Beff, bf_eff, af_eff))
        core = integrate(grid, f * lie)

        mean_aE = np.array([mean_part(grid, a["E"][k]).flat[0] for k in range(3)])
        mean_bE = np.array([mean_part(grid, b["E"][k]).flat[0] for k in range(3)])
        mu_a = np.array([integrate(grid, v_integrate(grid, f * v_grad(grid, a["f"])[k]))
                         for k in range(3)])
        mu_b = np.array([integrate(grid, v_integrate(grid, f * v_grad(grid, b["f"])[k]))
                         for k in range(3)])
        return float(core + (mean_aE @ mu_b - mean_bE @ mu_a))

    return value


def vlasov_poisson_reduction(
    grid: Grid | None = None, B0: np.ndarray | None = None
) -> SystemSpec:
    grid = grid or Grid.phase(8, 6, 2.0)
    if grid.ndim_x != 3 or grid.ndim_v != 3:
        raise ValueError("the electrostatic reduction needs a 3+3-D phase grid")
    schema = _kinetic_schema(grid)
    if B0 is None:
        B0 = np.zeros((3,) + grid.shape_x)

    parent = VMBracket("projected", schema)
    constraints = ElectrostaticConstraints(schema, B0)
    coupling = ConstraintCoupling(
        parent, constraints,
        closed_form_inverse=_vp_a_inverse(schema),
        composite_inverse_qhat=_vp_composite(schema, constraints.constraint_schema),
        krylov_tol=1e-11,
    )
    dirac = DiracBracket(coupling, name="dirac")
    closed = ClosedElectrostaticBracket(schema)

    def b_dev_casimir(seed: int) -> LinearFunctional:
        wfun = random_field(grid, "vector", (seed, 61), band=2)
        kernel = schema.zeros()
        kernel["B"] = wfun
        offset = -float(integrate(grid, _dot(wfun, B0)))
        return LinearFunctional(kernel, offset=offset, name="weighted-B-deviation")

    def curl_e_casimir(seed: int) -> LinearFunctional:
        wfun = random_field(grid, "vector", (seed, 63), band=2)
        kernel = schema.zeros()
        kernel["E"] = curl(grid, wfun)
        return LinearFunctional(kernel, name="weighted-curl-E")

    return SystemSpec(
        name="vlasov-poisson",
        schema=schema,
        brackets={"parent": parent, "dirac": dirac, "dirac_closed": closed},
        default_bracket="dirac",
        hamiltonian=KineticHamiltonian(schema),
        constraints={"electrostatic": constraints},
        couplings={"electrostatic": coupling},
        closed_forms={
            "a_inverse": _vp_a_inverse(schema),
            "composite": _vp_composite(schema, constraints.constraint_schema),
            "pstar": _vp_pstar(schema),
            "reduced_value": _vp_reduced_value(schema),
        },
        backgrounds={"B0": B0},
        casimirs={
            "b_dev": CasimirFamily("b_dev", b_dev_casimir, ("dirac", "dirac_closed")),
            "curl_e": CasimirFamily("curl_e", curl_e_casimir, ("dirac", "dirac_closed")),
        },
    )
