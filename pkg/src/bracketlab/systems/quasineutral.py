"""Two-species drift-kinetic model whose neutrality constraints couple a
velocity integral to spatial derivatives.

The operator is constant in the state, so the constrained bracket closes
trivially; the interesting structure sits in the constraint pair

    (int d^m v (f_i - f_e),  int d^m v v . grad (f_i - f_e)),

whose Gram operator picks up a factor of the velocity volume.  That makes
the orthogonal projector cutoff-dependent, which the growth diagnostic in
:func:`bracketlab.reduction.orthogonal_projector` is designed to catch.

Fixed backgrounds enter through per-species Maxwellian weights sampled on
the velocity grid.  Their closed-form moments are exact only when the
Maxwellian has decayed at the velocity cutoff; the sampler enforces that
with ``decay_guard`` (at the default 8 sigma the boundary value is ~1e-13
of the peak, so moment identities hold to roundoff).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..brackets import BracketOperator
from ..calculus import grad, inv_lap, v_integrate, x_grad
from ..constraints import ConstraintCoupling, ConstraintSet
from ..fields import Schema, Slot, State, random_field
from ..grids import Grid, deriv_wavenumbers
from ..functionals import LinearFunctional
from ..reduction import DiracBracket
from .base import CasimirFamily, SystemSpec

__all__ = [
    "Species",
    "maxwellian",
    "QNBracket",
    "NeutralityConstraints",
    "quasineutral_system",
]


@dataclass(frozen=True)
class Species:
    """Maxwellian background: density, drift velocity and thermal width."""

    density: float = 1.0
    drift: tuple[float, ...] = (0.0,)
    sigma: float = 1.0


def maxwellian(grid: Grid, species: Species, decay_guard: float = 1e-12) -> np.ndarray:
    """Sample the species weight on the velocity grid (shape ``shape_v``).

    Raises if the weight has not decayed below ``decay_guard`` (relative to
    its peak) at the velocity boundary, since the closed-form moments used
    elsewhere assume a negligible tail.
    """
    if len(species.drift) != grid.ndim_v:
        raise ValueError("species drift must have one component per velocity axis")
    alpha = np.full(grid.shape_v, species.density)
    for j in range(grid.ndim_v):
        vj = grid.v_axis(j)
        prof = np.exp(-((vj - species.drift[j]) ** 2) / (2.0 * species.sigma ** 2))
        prof /= np.sqrt(2.0 * np.pi) * species.sigma
        shape = [1] * grid.ndim_v
        shape[j] = vj.size
        alpha = alpha * prof.reshape(shape)
    peak = float(alpha.max())
    boundary = 0.0
    for j in range(grid.ndim_v):
        boundary = max(boundary,
                       float(np.abs(np.take(alpha, 0, axis=j)).max()),
                       float(np.abs(np.take(alpha, -1, axis=j)).max()))
    if boundary > decay_guard * peak:
        raise ValueError(
            f"Maxwellian tail {boundary / peak:.2e} above decay guard "
            f"{decay_guard:.0e}; enlarge the velocity box")
    return alpha


def _alpha_v_grad(grid: Grid, alpha: np.ndarray) -> np.ndarray:
    """Spectral velocity gradient of a velocity-only array: (ndim_v, *shape_v)."""
    axes = tuple(range(grid.ndim_v))
    spec = np.fft.fftn(alpha, axes=axes)
    out = np.empty((grid.ndim_v,) + grid.shape_v)
    for j in range(grid.ndim_v):
        k = deriv_wavenumbers(grid, grid.ndim_x + j)
        shape = [1] * alpha.ndim
        shape[j] = k.size
        out[j] = np.fft.ifftn(1j * k.reshape(shape) * spec, axes=axes).real
    return out


def _to_phase_x(grid: Grid, arr: np.ndarray) -> np.ndarray:
    """Broadcast a spatial array over the velocity axes."""
    return arr.reshape(arr.shape + (1,) * grid.ndim_v)


class QNBracket(BracketOperator):
    """Per-species operator (J a)_s = grad_v alpha_s . grad_x a_s."""

    def __init__(self, schema: Schema, alpha_i: np.ndarray, alpha_e: np.ndarray):
        super().__init__("drift", schema, affine_in_state=True)
        self.constant_in_state = True
        grid = schema.grid
        stack_shape = (grid.ndim_v,) + (1,) * grid.ndim_x + grid.shape_v
        self._dalpha = {
            "f_i": _alpha_v_grad(grid, alpha_i).reshape(stack_shape),
            "f_e": _alpha_v_grad(grid, alpha_e).reshape(stack_shape),
        }

    def apply(self, chi: State, a: State) -> State:
        grid = self.schema.grid
        out = {}
        for slot in ("f_i", "f_e"):
            gx = x_grad(grid, a[slot])
            dal = self._dalpha[slot]
            out[slot] = sum(dal[k] * gx[k] for k in range(grid.ndim_v))
        return State(self.schema, out)

    def state_derivative(self, chi: State, u: State, a: State) -> State:
        return self.schema.zeros()


class NeutralityConstraints(ConstraintSet):
    """Charge and charge-flux moments of the species difference."""

    semi_local = True

    def __init__(self, schema: Schema, rebuild=None):
        grid = schema.grid
        cschema = Schema(grid, (Slot("neutrality", "scalar"), Slot("flux", "scalar")))
        super().__init__("neutrality", schema, cschema)
        self._rebuild = rebuild

    def value(self, chi: State) -> State:
        return self.qhat(chi)

    def qhat(self, u: State) -> State:
        grid = self.state_schema.grid
        diff = u["f_i"] - u["f_e"]
        r1 = v_integrate(grid, diff)
        gx = x_grad(grid, diff)
        r2 = sum(v_integrate(grid, grid.velocity_mesh(k) * gx[k])
                 for k in range(grid.ndim_v))
        return State(self.constraint_schema, {"neutrality": r1, "flux": r2})

    def qhat_adjoint(self, w: State) -> State:
        grid = self.state_schema.grid
        gx2 = grad(grid, w["flux"])
        g = _to_phase_x(grid, w["neutrality"]) - sum(
            grid.velocity_mesh(k) * _to_phase_x(grid, gx2[k])
            for k in range(grid.ndim_v))
        g = np.broadcast_to(g, grid.shape).copy()
        return State(self.state_schema, {"f_i": g, "f_e": -g})

    def growth_probe(self, seed: int) -> State:
        grid = self.state_schema.grid
        w1 = random_field(grid, "scalar", (seed, 71), band=2, zero_mean=True)
        return State(self.constraint_schema,
                     {"neutrality": w1, "flux": np.zeros(grid.shape_x)})

    def rebuilt_for_growth(self) -> "NeutralityConstraints | None":
        return self._rebuild() if self._rebuild is not None else None


def _qn_moments(species_i: Species, species_e: Species, ndim_v: int):
    abar = species_i.density + species_e.density
    beta = np.array([species_i.density * species_i.drift[k]
                     + species_e.density * species_e.drift[k]
                     for k in range(ndim_v)])
    return abar, beta


def _qn_a_inverse(schema: Schema, abar: float, beta: np.ndarray):
    grid = schema.grid

    def a_inverse(chi: State, w: State) -> State:
        p1 = inv_lap(grid, w["neutrality"])
        gp1 = grad(grid, p1)
        y1 = (2.0 / abar ** 2) * sum(beta[k] * gp1[k] for k in range(grid.ndim_x)) \
            - inv_lap(grid, w["flux"]) / abar
        y2 = p1 / abar
        return State(w.schema, {"neutrality": y1, "flux": y2})

    return a_inverse


def _qn_pstar(schema: Schema, bracket: QNBracket, abar: float, beta: np.ndarray):
    grid = schema.grid
    vbar = beta / abar

    def pstar(chi: State, a: State) -> State:
        t = bracket.apply(chi, a)
        g = t["f_i"] - t["f_e"]
        r1 = v_integrate(grid, g)
        gx = x_grad(grid, g)
        r2 = sum(v_integrate(grid, grid.velocity_mesh(k) * gx[k])
                 for k in range(grid.ndim_v))
        gr1 = grad(grid, inv_lap(grid, r1))
        corr = sum((grid.velocity_mesh(k) - 2.0 * vbar[k])
                   * _to_phase_x(grid, gr1[k]) for k in range(grid.ndim_v))
        corr = corr + _to_phase_x(grid, inv_lap(grid, r2))
        corr = np.broadcast_to(corr / abar, grid.shape).copy()
        return State(schema, {"f_i": a["f_i"] + corr, "f_e": a["f_e"] - corr})

    return pstar


def quasineutral_system(
    grid: Grid | None = None,
    ions: Species | None = None,
    electrons: Species | None = None,
    decay_guard: float = 1e-12,
) -> SystemSpec:
    if grid is None:
        sigma = 1.0
        grid = Grid.phase((16,), 48, 8.0 * sigma)
    if grid.ndim_v != grid.ndim_x:
        raise ValueError("the drift-kinetic model pairs one velocity axis per spatial axis")
    m = grid.ndim_v
    ions = ions or Species(density=1.0, drift=(0.3,) * m, sigma=1.0)
    electrons = electrons or Species(density=1.0, drift=(-0.2,) * m, sigma=1.0)

    schema = Schema(grid, (Slot("f_i", "phase"), Slot("f_e", "phase")))
    alpha_i = maxwellian(grid, ions, decay_guard)
    alpha_e = maxwellian(grid, electrons, decay_guard)
    bracket = QNBracket(schema, alpha_i, alpha_e)

    def rebuild() -> NeutralityConstraints:
        big = grid.with_velocity_extent(tuple(2.0 * v for v in grid.velocity_extents))
        big_schema = Schema(big, (Slot("f_i", "phase"), Slot("f_e", "phase")))
        return NeutralityConstraints(big_schema)

    constraints = NeutralityConstraints(schema, rebuild=rebuild)
    abar, beta = _qn_moments(ions, electrons, m)
    coupling = ConstraintCoupling(
        bracket, constraints,
        closed_form_inverse=_qn_a_inverse(schema, abar, beta),
        krylov_tol=1e-12,
    )
    dirac = DiracBracket(coupling, name="dirac")

    def neutrality_casimir(seed: int) -> LinearFunctional:
        w = random_field(grid, "scalar", (seed, 73), band=2)
        wp = np.broadcast_to(_to_phase_x(grid, w), grid.shape).copy()
        return LinearFunctional(State(schema, {"f_i": wp, "f_e": -wp}),
                                name="weighted-charge")

    def flux_casimir(seed: int) -> LinearFunctional:
        w = random_field(grid, "scalar", (seed, 79), band=2)
        gw = grad(grid, w)
        kern = -sum(grid.velocity_mesh(k) * _to_phase_x(grid, gw[k]) for k in range(m))
        kern = np.broadcast_to(kern, grid.shape).copy()
        return LinearFunctional(State(schema, {"f_i": kern, "f_e": -kern}),
                                name="weighted-charge-flux")

    return SystemSpec(
        name="quasineutral",
        schema=schema,
        brackets={"drift": bracket, "dirac": dirac},
        default_bracket="dirac",
        constraints={"neutrality": constraints},
        couplings={"neutrality": coupling},
        closed_forms={
            "a_inverse": _qn_a_inverse(schema, abar, beta),
            "pstar": _qn_pstar(schema, bracket, abar, beta),
        },
        backgrounds={"ions": ions, "electrons": electrons,
                     "alpha_i": alpha_i, "alpha_e": alpha_e},
        casimirs={
            "neutrality": CasimirFamily("neutrality", neutrality_casimir, ("dirac",)),
            "flux": CasimirFamily("flux", flux_casimir, ("dirac",)),
        },
    )
