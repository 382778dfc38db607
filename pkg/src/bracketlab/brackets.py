"""Bracket operators and their algebraic diagnostics.

A `BracketOperator` represents the antisymmetric operator J(chi) of a bracket
{F, G} = <F_chi, J(chi) G_chi>.  Operators expose an exact directional state
derivative DJ(chi)[u] so the Jacobi identity can be tested without finite
differences: for linear probe functionals with kernels a, b, c,

    {F, {G, H}} + cyclic = -( <b, DJ[J a] c> + <c, DJ[J b] a> + <a, DJ[J c] b> ).

Affine operators get the derivative for free from two applications; operators
with richer state dependence override `state_derivative` (or `jacobi_pair`
directly when fusing keeps intermediate products alias-free).
"""
from __future__ import annotations

from abc import ABC, abstractmethod

from .fields import Schema, State, pairing, state_norm
from .functionals import Functional, LinearFunctional

__all__ = [
    "BracketOperator", "ProjectedBracketOperator", "bracket_value",
    "bracket_functional", "antisymmetry_residual", "jacobi_residual",
    "casimir_residual",
]


class BracketOperator(ABC):
    """Antisymmetric state-dependent operator on derivative kernels."""

    def __init__(self, name: str, schema: Schema, affine_in_state: bool):
        self.name = name
        self.schema = schema
        self.affine_in_state = affine_in_state

    @abstractmethod
    def apply(self, chi: State, a: State) -> State:
        """J(chi) a."""

    def state_derivative(self, chi: State, u: State, a: State) -> State:
        """DJ(chi)[u] a; exact for affine operators by linearity."""
        if not self.affine_in_state:
            raise NotImplementedError(
                f"{self.name}: state_derivative needs an explicit override")
        return self.apply(u, a) - self.apply(self.schema.zeros(), a)

    def state_kernel(self, b: State, c: State) -> State:
        """Kernel k(b, c) with <b, J(u) c> = <k, u> + const (affine only)."""
        raise NotImplementedError(f"{self.name} does not expose a state kernel")

    def jacobi_pair(self, chi: State, b: State, u: State, c: State) -> float:
        """<b, DJ(chi)[u] c>."""
        return pairing(b, self.state_derivative(chi, u, c))


class ProjectedBracketOperator(BracketOperator):
    """Bracket with projected derivatives and projected state:
    <P F_chi, J(P chi) P G_chi>.  The projector must be state-independent."""

    def __init__(self, parent: BracketOperator, projector, name: str = ""):
        if getattr(projector, "state_dependent", False):
            raise ValueError("projected bracket needs a state-independent projector")
        super().__init__(name or f"{parent.name}-projected", parent.schema,
                         parent.affine_in_state)
        self.parent = parent
        self.projector = projector

    def _proj_state(self, chi: State) -> State:
        return self.projector.adjoint_apply(chi)

    def apply(self, chi: State, a: State) -> State:
        p = self.projector
        return p.adjoint_apply(
            self.parent.apply(self._proj_state(chi), p.apply(a)))

    def state_derivative(self, chi: State, u: State, a: State) -> State:
        p = self.projector
        return p.adjoint_apply(self.parent.state_derivative(
            self._proj_state(chi), self._proj_state(u), p.apply(a)))

    def state_kernel(self, b: State, c: State) -> State:
        p = self.projector
        return p.apply(self.parent.state_kernel(p.apply(b), p.apply(c)))

    def jacobi_pair(self, chi: State, b: State, u: State, c: State) -> float:
        p = self.projector
        return self.parent.jacobi_pair(
            self._proj_state(chi), p.apply(b), self._proj_state(u), p.apply(c))


def bracket_value(op: BracketOperator, chi: State, F: Functional,
                  G: Functional) -> float:
    """{F, G}(chi) = <F_chi, J(chi) G_chi>."""
    return pairing(F.derivative(chi), op.apply(chi, G.derivative(chi)))


def bracket_functional(op: BracketOperator, F: LinearFunctional,
                       G: LinearFunctional) -> LinearFunctional:
    """The functional chi -> {F, G}(chi) for affine J and linear F, G."""
    if not op.affine_in_state:
        raise ValueError("bracket_functional needs an operator affine in the state")
    if F.variant != "linear" or G.variant != "linear":
        raise ValueError("bracket_functional needs linear probe functionals")
    kernel = op.state_kernel(F.kernel, G.kernel)
    offset = pairing(F.kernel, op.apply(op.schema.zeros(), G.kernel))
    return LinearFunctional(kernel, offset=offset,
                            name=f"{{{F.name},{G.name}}}")


def antisymmetry_residual(op: BracketOperator, chi: State, a: State,
                          b: State) -> float:
    """|<b, J a> + <a, J b>| relative to the participating magnitudes."""
    ja = op.apply(chi, a)
    jb = op.apply(chi, b)
    denom = max(state_norm(ja) * state_norm(b), state_norm(jb) * state_norm(a), 1e-300)
    return abs(pairing(b, ja) + pairing(a, jb)) / denom


def jacobi_residual(op: BracketOperator, chi: State, a: State, b: State,
                    c: State, normalized: bool = True) -> float:
    """Cyclic Jacobi sum for linear probes with kernels a, b, c."""
    ja = op.apply(chi, a)
    jb = op.apply(chi, b)
    jc = op.apply(chi, c)
    total = -(op.jacobi_pair(chi, b, ja, c)
              + op.jacobi_pair(chi, c, jb, a)
              + op.jacobi_pair(chi, a, jc, b))
    if not normalized:
        return abs(total)
    denom = state_norm(a) * state_norm(b) * state_norm(c) * max(state_norm(chi), 1.0)
    return abs(total) / max(denom, 1e-300)


def casimir_residual(op: BracketOperator, chi: State, casimir: Functional,
                     probes: list[State]) -> float:
    """max over probe kernels b of |<C_chi, J b>| / |b|."""
    c_k = casimir.derivative(chi)
    worst = 0.0
    for b in probes:
        val = abs(pairing(c_k, op.apply(chi, b))) / max(state_norm(b), 1e-300)
        worst = max(worst, val)
    return worst
