"""Compressible magnetofluid brackets and the incompressible reduction.

The operator family comes in three variants that differ only in how the
magnetic field enters:

* ``tainted``    -- the field itself multiplies the couplings,
* ``div_terms``  -- extra terms proportional to div B are kept,
* ``projected``  -- the solenoidal part of the field multiplies the couplings.

All three agree on divergence-free states.  The incompressible reduction
pins the density and the velocity divergence and carries closed forms for
the constraint-coupling inverse, the induced projector and the reduced
operator, so every step of the construction can be cross-checked against
the generic machinery.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..brackets import BracketOperator
from ..calculus import curl, div, grad, inv_div_grad, mean_part, solenoidal_part
from ..constraints import ConstraintCoupling, ConstraintSet
from ..fields import Schema, Slot, State, integrate, random_field
from ..functionals import Functional, LinearFunctional
from ..grids import Grid
from ..reduction import DiracBracket
from .base import CasimirFamily, SystemSpec

__all__ = [
    "InternalEnergy",
    "MHDBracket",
    "MHDHamiltonian",
    "mhd_rhs",
    "mhd_system",
    "incompressible_mhd_reduction",
]

_VARIANTS = ("tainted", "div_terms", "projected")


@dataclass(frozen=True)
class InternalEnergy:
    """Specific internal energy U(rho, s) = kappa rho^(gamma-1) exp(s/c_v)."""

    kappa: float = 1.0
    gamma: float = 5.0 / 3.0
    c_v: float = 1.0

    def u(self, rho: np.ndarray, s: np.ndarray) -> np.ndarray:
        return self.kappa * rho ** (self.gamma - 1.0) * np.exp(s / self.c_v)

    def u_rho(self, rho: np.ndarray, s: np.ndarray) -> np.ndarray:
        return self.kappa * (self.gamma - 1.0) * rho ** (self.gamma - 2.0) * np.exp(s / self.c_v)

    def u_s(self, rho: np.ndarray, s: np.ndarray) -> np.ndarray:
        return self.u(rho, s) / self.c_v


def _cross(a, b):
    return np.cross(a, b, axis=0)


def _dot(a, b):
    return np.einsum("i...,i...->...", a, b)


class MHDHamiltonian(Functional):
    """Total energy: kinetic + internal + magnetic."""

    def __init__(self, schema: Schema, energy: InternalEnergy):
        super().__init__(schema, name="total-energy")
        self.energy = energy

    def value(self, chi: State) -> float:
        grid = self.schema.grid
        rho, v, B, s = chi["rho"], chi["v"], chi["B"], chi["s"]
        kinetic = 0.5 * rho * _dot(v, v)
        internal = rho * self.energy.u(rho, s)
        magnetic = 0.5 * _dot(B, B)
        return float(integrate(grid, kinetic + internal + magnetic))

    def derivative(self, chi: State) -> State:
        rho, v, B, s = chi["rho"], chi["v"], chi["B"], chi["s"]
        en = self.energy
        d_rho = 0.5 * _dot(v, v) + en.u(rho, s) + rho * en.u_rho(rho, s)
        return State(self.schema, {
            "rho": d_rho,
            "v": rho * v,
            "B": B.copy(),
            "s": rho * en.u_s(rho, s),
        })


class MHDBracket(BracketOperator):
    """Magnetofluid operator acting on (rho, v, B, s) kernels."""

    def __init__(self, variant: str, schema: Schema):
        if variant not in _VARIANTS:
            raise ValueError(f"unknown variant {variant!r}; choose from {_VARIANTS}")
        super().__init__(variant, schema, affine_in_state=False)
        self.variant = variant

    def _coefficients(self, chi: State):
        grid = self.schema.grid
        rho = chi["rho"]
        if np.min(rho) <= 0.0:
            raise ValueError("density must stay positive")
        m = 1.0 / rho
        w = curl(grid, chi["v"])
        sigma = grad(grid, chi["s"])
        B = chi["B"]
        Beff = solenoidal_part(grid, B) if self.variant == "projected" else B
        divB = div(grid, B) if self.variant == "div_terms" else None
        return m, w, sigma, Beff, divB

    def apply(self, chi: State, a: State) -> State:
        grid = self.schema.grid
        m, w, sigma, Beff, divB = self._coefficients(chi)
        a_rho, a_v, a_B, a_s = a["rho"], a["v"], a["B"], a["s"]

        out_rho = -div(grid, a_v)
        out_v = (-grad(grid, a_rho) - m * _cross(w, a_v)
                 - m * _cross(Beff, curl(grid, a_B)) + m * a_s * sigma)
        out_B = -curl(grid, m * _cross(Beff, a_v))
        out_s = -m * _dot(sigma, a_v)
        if divB is not None:
            out_v = out_v + m * divB * a_B
            out_B = out_B - m * divB * a_v
        return State(self.schema, {"rho": out_rho, "v": out_v, "B": out_B, "s": out_s})

    def state_derivative(self, chi: State, u: State, a: State) -> State:
        grid = self.schema.grid
        m, w, sigma, Beff, divB = self._coefficients(chi)
        dm = -(m ** 2) * u["rho"]
        dw = curl(grid, u["v"])
        dsigma = grad(grid, u["s"])
        dB = solenoidal_part(grid, u["B"]) if self.variant == "projected" else u["B"]
        a_v, a_B, a_s = a["v"], a["B"], a["s"]
        rot_a = curl(grid, a_B)

        d_v = (-dm * _cross(w, a_v) - m * _cross(dw, a_v)
               - dm * _cross(Beff, rot_a) - m * _cross(dB, rot_a)
               + (dm * sigma + m * dsigma) * a_s)
        d_B = -curl(grid, dm * _cross(Beff, a_v) + m * _cross(dB, a_v))
        d_s = -dm * _dot(sigma, a_v) - m * _dot(dsigma, a_v)
        if divB is not None:
            ddivB = div(grid, u["B"])
            coeff = dm * divB + m * ddivB
            d_v = d_v + coeff * a_B
            d_B = d_B - coeff * a_v
        return State(self.schema, {
            "rho": np.zeros(grid.shape_x), "v": d_v, "B": d_B, "s": d_s,
        })


def _advect(grid: Grid, v: np.ndarray, f: np.ndarray) -> np.ndarray:
    """(v . grad) f for a scalar f."""
    return _dot(v, grad(grid, f))


def mhd_rhs(grid: Grid, energy: InternalEnergy, chi: State) -> State:
    """Fluid-form equations of motion, written without any bracket machinery."""
    rho, v, B, s = chi["rho"], chi["v"], chi["B"], chi["s"]
    m = 1.0 / rho
    pressure_like = rho ** 2 * energy.u_rho(rho, s)
    adv_v = np.stack([_advect(grid, v, v[i]) for i in range(3)])
    return State(chi.schema, {
        "rho": -div(grid, rho * v),
        "v": -adv_v - m * grad(grid, pressure_like) + m * _cross(curl(grid, B), B),
        "B": curl(grid, _cross(v, B)),
        "s": -_advect(grid, v, s),
    })


def _mhd_schema(grid: Grid) -> Schema:
    return Schema(grid, (
        Slot("rho", "scalar"), Slot("v", "vector"),
        Slot("B", "vector"), Slot("s", "scalar"),
    ))


def _div_b_family(schema: Schema, brackets: tuple[str, ...]) -> CasimirFamily:
    grid = schema.grid

    def build(seed: int) -> LinearFunctional:
        wfun = random_field(grid, "scalar", (seed, 31), band=2)
        kernel = schema.zeros()
        kernel["B"] = -grad(grid, wfun)
        return LinearFunctional(kernel, name="weighted-div-B")

    return CasimirFamily("div_b", build, brackets)


def mhd_system(grid: Grid | None = None, energy: InternalEnergy | None = None) -> SystemSpec:
    grid = grid or Grid.spatial(16)
    if grid.ndim_x != 3 or grid.ndim_v != 0:
        raise ValueError("the magnetofluid model needs a 3-D spatial grid")
    schema = _mhd_schema(grid)
    energy = energy or InternalEnergy()

    brackets = {name: MHDBracket(name, schema) for name in _VARIANTS}
    return SystemSpec(
        name="mhd",
        schema=schema,
        brackets=brackets,
        default_bracket="projected",
        hamiltonian=MHDHamiltonian(schema, energy),
        backgrounds={"energy": energy},
        casimirs={"div_b": _div_b_family(schema, ("projected", "tainted"))},
    )


# ---------------------------------------------------------------------------
# incompressible reduction
# ---------------------------------------------------------------------------

class IncompressibleConstraints(ConstraintSet):
    """Pin the density to a constant and the velocity divergence to zero."""

    def __init__(self, schema: Schema, rho0: float):
        grid = schema.grid
        cschema = Schema(grid, (Slot("rho_dev", "scalar"), Slot("div_v", "scalar")))
        super().__init__("incompressibility", schema, cschema)
        self.rho0 = float(rho0)

    def value(self, chi: State) -> State:
        grid = self.state_schema.grid
        return State(self.constraint_schema, {
            "rho_dev": chi["rho"] - self.rho0,
            "div_v": div(grid, chi["v"]),
        })

    def qhat(self, u: State) -> State:
        grid = self.state_schema.grid
        return State(self.constraint_schema, {
            "rho_dev": u["rho"].copy(),
            "div_v": div(grid, u["v"]),
        })

    def qhat_adjoint(self, w: State) -> State:
        grid = self.state_schema.grid
        out = self.state_schema.zeros()
        out["rho"] = w["rho_dev"].copy()
        out["v"] = -grad(grid, w["div_v"])
        return out

    def gram_inverse(self, w: State) -> State:
        grid = self.state_schema.grid
        return State(self.constraint_schema, {
            "rho_dev": w["rho_dev"].copy(),
            "div_v": -inv_div_grad(grid, w["div_v"]),
        })


def _closed_a_inverse(schema: Schema):
    grid = schema.grid

    def a_inverse(chi: State, w: State) -> State:
        m = 1.0 / chi["rho"]
        wv = curl(grid, chi["v"])
        y2 = inv_div_grad(grid, w["rho_dev"])
        stirred = div(grid, m * _cross(wv, grad(grid, y2)))
        y1 = inv_div_grad(grid, stirred) - inv_div_grad(grid, w["div_v"])
        return State(w.schema, {"rho_dev": y1, "div_v": y2})

    return a_inverse


def _closed_pstar(schema: Schema):
    grid = schema.grid

    def pstar(chi: State, a: State) -> State:
        m = 1.0 / chi["rho"]
        wv = curl(grid, chi["v"])
        sigma = grad(grid, chi["s"])
        Beff = solenoidal_part(grid, chi["B"])
        av_bar = solenoidal_part(grid, a["v"])
        flux = _cross(wv, av_bar) + _cross(Beff, curl(grid, a["B"])) - a["s"] * sigma
        new_rho = mean_part(grid, a["rho"]) - inv_div_grad(grid, div(grid, m * flux))
        return State(schema, {
            "rho": new_rho, "v": av_bar, "B": a["B"].copy(), "s": a["s"].copy(),
        })

    return pstar


class ClosedIncompressibleBracket(BracketOperator):
    """Hand-reduced form of the constrained magnetofluid operator."""

    def __init__(self, schema: Schema):
        super().__init__("dirac_closed", schema, affine_in_state=False)

    def _coefficients(self, chi: State):
        grid = self.schema.grid
        m = 1.0 / chi["rho"]
        w = curl(grid, chi["v"])
        sigma = grad(grid, chi["s"])
        Beff = solenoidal_part(grid, chi["B"])
        return m, w, sigma, Beff

    def apply(self, chi: State, a: State) -> State:
        grid = self.schema.grid
        m, w, sigma, Beff = self._coefficients(chi)
        av_bar = solenoidal_part(grid, a["v"])
        rot_a = curl(grid, a["B"])
        out_v = solenoidal_part(
            grid, m * (_cross(av_bar, w) + a["s"] * sigma + _cross(rot_a, Beff)))
        return State(self.schema, {
            "rho": np.zeros(grid.shape_x),
            "v": out_v,
            "B": -curl(grid, m * _cross(Beff, av_bar)),
            "s": -m * _dot(sigma, av_bar),
        })

    def state_derivative(self, chi: State, u: State, a: State) -> State:
        grid = self.schema.grid
        m, w, sigma, Beff = self._coefficients(chi)
        dm = -(m ** 2) * u["rho"]
        dw = curl(grid, u["v"])
        dsigma = grad(grid, u["s"])
        dB = solenoidal_part(grid, u["B"])
        av_bar = solenoidal_part(grid, a["v"])
        rot_a = curl(grid, a["B"])

        core = _cross(av_bar, w) + a["s"] * sigma + _cross(rot_a, Beff)
        d_core = _cross(av_bar, dw) + a["s"] * dsigma + _cross(rot_a, dB)
        d_v = solenoidal_part(grid, dm * core + m * d_core)
        d_B = -curl(grid, dm * _cross(Beff, av_bar) + m * _cross(dB, av_bar))
        d_s = -dm * _dot(sigma, av_bar) - m * _dot(dsigma, av_bar)
        return State(self.schema, {
            "rho": np.zeros(grid.shape_x), "v": d_v, "B": d_B, "s": d_s,
        })


def _reduced_value(schema: Schema):
    grid = schema.grid

    def value(chi: State, b: State, a: State) -> float:
        m = 1.0 / chi["rho"]
        w = curl(grid, chi["v"])
        sigma = grad(grid, chi["s"])
        Beff = solenoidal_part(grid, chi["B"])
        a_bar = solenoidal_part(grid, a["v"])
        b_bar = solenoidal_part(grid, b["v"])
        integrand = m * (
            _dot(w, _cross(b_bar, a_bar))
            + _dot(sigma, a["s"] * b_bar - b["s"] * a_bar)
            + _dot(Beff, _cross(b_bar, curl(grid, a["B"]))
                   + _cross(curl(grid, b["B"]), a_bar))
        )
        return float(integrate(grid, integrand))

    return value


def incompressible_mhd_reduction(
    grid: Grid | None = None,
    rho0: float = 1.0,
    energy: InternalEnergy | None = None,
) -> SystemSpec:
    grid = grid or Grid.spatial(16)
    if grid.ndim_x != 3 or grid.ndim_v != 0:
        raise ValueError("the incompressible reduction needs a 3-D spatial grid")
    schema = _mhd_schema(grid)
    energy = energy or InternalEnergy()

    parent = MHDBracket("projected", schema)
    constraints = IncompressibleConstraints(schema, rho0)
    coupling = ConstraintCoupling(
        parent, constraints,
        closed_form_inverse=_closed_a_inverse(schema),
        krylov_tol=1e-11,
    )
    dirac = DiracBracket(coupling, name="dirac")
    closed = ClosedIncompressibleBracket(schema)

    def rho_dev_casimir(seed: int) -> LinearFunctional:
        wfun = random_field(grid, "scalar", (seed, 41), band=2)
        kernel = schema.zeros()
        kernel["rho"] = wfun
        offset = -rho0 * integrate(grid, wfun)
        return LinearFunctional(kernel, offset=offset, name="weighted-density-deviation")

    def div_v_casimir(seed: int) -> LinearFunctional:
        wfun = random_field(grid, "scalar", (seed, 43), band=2)
        kernel = schema.zeros()
        kernel["v"] = -grad(grid, wfun)
        return LinearFunctional(kernel, name="weighted-div-velocity")

    return SystemSpec(
        name="incompressible-mhd",
        schema=schema,
        brackets={"parent": parent, "dirac": dirac, "dirac_closed": closed},
        default_bracket="dirac",
        hamiltonian=MHDHamiltonian(schema, energy),
        constraints={"incompressibility": constraints},
        couplings={"incompressibility": coupling},
        closed_forms={
            "a_inverse": _closed_a_inverse(schema),
            "pstar": _closed_pstar(schema),
            "reduced_value": _reduced_value(schema),
        },
        backgrounds={"rho0": float(rho0), "energy": energy},
        casimirs={
            "rho_dev": CasimirFamily("rho_dev", rho_dev_casimir, ("dirac", "dirac_closed")),
            "div_v": CasimirFamily("div_v", div_v_casimir, ("dirac", "dirac_closed")),
        },
    )
