"""Constraint sets, their Frechet operators, and the coupling operator A.

A constraint set Q maps states to a (smaller) constraint-space schema on the
same grid.  All catalog constraints are affine, so the Frechet derivative Qhat
is a fixed linear map with an explicit adjoint.  The coupling operator

    A = Qhat J Qhat*

is what Dirac reductions must invert; it is solved through a closed-form
inverse, a closed-form composite A^-1 Qhat, or a Krylov iteration, in that
order of preference.

Local constraint sets have bounded Gram operators Qhat Qhat*.  Semi-local ones
(velocity integrals on phase space) have Gram norms proportional to the
velocity-domain volume; `gram_rayleigh_estimate` exposes the growth that makes
an orthogonal projector meaningless for them.
"""
from __future__ import annotations

from abc import ABC, abstractmethod

from .brackets import BracketOperator
from .fields import Schema, State, pairing, random_state, state_norm
from .linalg import krylov_solve

__all__ = ["ConstraintSet", "ConstraintCoupling", "frechet_pair_residual",
           "gram_rayleigh_estimate"]


class ConstraintSet(ABC):
    """Affine constraints with a linear Frechet operator and adjoint."""

    semi_local = False

    def __init__(self, name: str, state_schema: Schema,
                 constraint_schema: Schema):
        self.name = name
        self.state_schema = state_schema
        self.constraint_schema = constraint_schema

    @abstractmethod
    def value(self, chi: State) -> State:
        """Q(chi) as a constraint-space state."""

    @abstractmethod
    def qhat(self, u: State) -> State:
        """Frechet derivative applied to a tangent state."""

    @abstractmethod
    def qhat_adjoint(self, w: State) -> State:
        """Adjoint of the Frechet derivative (constraint space -> state space)."""

    def gram_apply(self, w: State) -> State:
        return self.qhat(self.qhat_adjoint(w))

    def gram_inverse(self, w: State) -> State:
        """Closed-form (pseudo-)inverse of the Gram operator, if one exists."""
        raise NotImplementedError(f"{self.name}: no closed-form Gram inverse")

    def growth_probe(self, seed: int) -> State:
        """Constraint-space probe used by the Gram growth diagnostic."""
        return random_state(self.constraint_schema, seed, band=2, zero_mean=True)

    def rebuilt_for_growth(self) -> "ConstraintSet | None":
        """Same constraints on a velocity-domain twice as large (semi-local)."""
        return None


def frechet_pair_residual(cs: ConstraintSet, u: State, w: State) -> float:
    """|<Qhat u, w> - <u, Qhat* w>| / (|u| |w|)."""
    lhs = pairing(cs.qhat(u), w)
    rhs = pairing(u, cs.qhat_adjoint(w))
    denom = max(state_norm(u) * state_norm(w), 1e-300)
    return abs(lhs - rhs) / denom


def gram_rayleigh_estimate(cs: ConstraintSet, seed: int = 0,
                           n_probes: int = 20, probe_builder=None) -> float:
    """Largest Rayleigh quotient <w, G w>/<w, w> over seeded random probes."""
    build = probe_builder or cs.growth_probe
    best = 0.0
    for i in range(n_probes):
        w = build(seed * 1000 + i)
        nrm2 = pairing(w, w)
        if nrm2 <= 0.0:
            continue
        best = max(best, pairing(w, cs.gram_apply(w)) / nrm2)
    return best


class ConstraintCoupling:
    """The operator A = Qhat J Qhat* together with its solve strategies."""

    def __init__(self, bracket: BracketOperator, constraints: ConstraintSet,
                 closed_form_inverse=None, composite_inverse_qhat=None,
                 krylov_tol: float = 1e-10, krylov_maxiter: int | None = None):
        self.bracket = bracket
        self.constraints = constraints
        self.closed_form_inverse = closed_form_inverse
        self.composite_inverse_qhat = composite_inverse_qhat
        self.krylov_tol = krylov_tol
        self.krylov_maxiter = krylov_maxiter

    def apply(self, chi: State, w: State) -> State:
        cs = self.constraints
        return cs.qhat(self.bracket.apply(chi, cs.qhat_adjoint(w)))

    def solve(self, chi: State, w: State) -> State:
        """A^-1 w on the documented invertibility sector."""
        if self.closed_form_inverse is not None:
            return self.closed_form_inverse(chi, w)
        return krylov_solve(lambda x: self.apply(chi, x), w,
                            tol=self.krylov_tol, maxiter=self.krylov_maxiter)

    def solve_krylov(self, chi: State, w: State) -> State:
        """Iterative solve regardless of available closed forms."""
        return krylov_solve(lambda x: self.apply(chi, x), w,
                            tol=self.krylov_tol, maxiter=self.krylov_maxiter)

    def solve_qhat_image(self, chi: State, t: State) -> State:
        """A^-1 Qhat t, using the composite closed form when available."""
        if self.composite_inverse_qhat is not None:
            return self.composite_inverse_qhat(chi, t)
        return self.solve(chi, self.constraints.qhat(t))
