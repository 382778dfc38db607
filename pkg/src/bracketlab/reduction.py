"""Projectors and Dirac reduction built from brackets and constraint sets.

Two projector constructions are provided:

* the orthogonal projector P = 1 - Qhat* (Qhat Qhat*)^-1 Qhat, which exists
  only when the Gram operator is boundedly invertible (local constraints), and
* the Dirac projector P* = 1 - Qhat* A^-1 Qhat J (with adjoint
  1 - J Qhat* A^-1 Qhat), which exists whenever A can be inverted on the
  range of Qhat J and yields the reduced operator J* = J P* = P*~ J.

The reduced bracket's state derivative is exact:
DJ*[u] a = P*~ (DJ[u] (P* a)), because the derivative terms of A^-1 and of the
two projector factors cancel against each other on the constraint kernel.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import calculus
from .brackets import BracketOperator, ProjectedBracketOperator
from .constraints import ConstraintCoupling, ConstraintSet, gram_rayleigh_estimate
from .errors import OrthogonalProjectorUnavailable
from .fields import State, state_norm
from .linalg import krylov_solve

__all__ = [
    "Projector", "solenoidal_projector", "orthogonal_projector",
    "dirac_projector", "DiracBracket", "dirac_bracket", "projected_bracket",
    "projector_residuals",
]

_GROWTH_RATIO_LIMIT = 1.5


@dataclass
class Projector:
    """A linear projector on derivative kernels with an explicit adjoint
    acting on tangents."""

    kind: str
    apply: object
    adjoint_apply: object
    state_dependent: bool = False
    provenance: str = ""

    def __call__(self, a: State) -> State:
        return self.apply(a)


def solenoidal_projector(schema, slots) -> Projector:
    """Self-adjoint projector taking the named vector slots to their
    divergence-free parts (other slots untouched)."""
    grid = schema.grid
    names = tuple(slots)

    def apply(a: State) -> State:
        return a.map(lambda k, v: calculus.solenoidal_part(grid, v)
                     if k in names else v.copy())

    return Projector("orthogonal", apply, apply,
                     provenance=f"solenoidal on {','.join(names)}")


def orthogonal_projector(constraints: ConstraintSet,
                         krylov_tol: float = 1e-12) -> Projector:
    """P = 1 - Qhat* (Qhat Qhat*)^-1 Qhat, or raise when the Gram operator is
    velocity-volume unbounded (semi-local constraints)."""
    if constraints.semi_local:
        grown = constraints.rebuilt_for_growth()
        base = gram_rayleigh_estimate(constraints)
        ratio = gram_rayleigh_estimate(grown) / base if grown is not None else float("inf")
        if ratio > _GROWTH_RATIO_LIMIT:
            raise OrthogonalProjectorUnavailable(
                f"orthogonal projector unavailable for {constraints.name}: "
                f"Gram norm grew by {ratio:.3g} when the velocity cutoff doubled")

    def gram_solve(w: State) -> State:
        try:
            return constraints.gram_inverse(w)
        except NotImplementedError:
            return krylov_solve(constraints.gram_apply, w, tol=krylov_tol)

    def apply(a: State) -> State:
        return a - constraints.qhat_adjoint(gram_solve(constraints.qhat(a)))

    return Projector("orthogonal", apply, apply,
                     provenance=f"gram solve for {constraints.name}")


def dirac_projector(coupling: ConstraintCoupling, chi: State) -> Projector:
    """The pair (P*, P*~) frozen at the given state."""
    cs = coupling.constraints
    J = coupling.bracket

    def apply(a: State) -> State:
        y = coupling.solve_qhat_image(chi, J.apply(chi, a))
        return a - cs.qhat_adjoint(y)

    def adjoint_apply(u: State) -> State:
        y = coupling.solve_qhat_image(chi, u)
        return u - J.apply(chi, cs.qhat_adjoint(y))

    return Projector("dirac", apply, adjoint_apply, state_dependent=True,
                     provenance=f"dirac from {cs.name}")


class DiracBracket(BracketOperator):
    """J* = J - J Qhat* A^-1 Qhat J assembled from generic machinery."""

    def __init__(self, coupling: ConstraintCoupling, name: str = "dirac"):
        parent = coupling.bracket
        self.constant_in_state = getattr(parent, "constant_in_state", False)
        super().__init__(name, parent.schema,
                         affine_in_state=self.constant_in_state)
        self.coupling = coupling
        self.parent = parent

    def _pstar(self, chi: State, a: State) -> State:
        y = self.coupling.solve_qhat_image(chi, self.parent.apply(chi, a))
        return a - self.coupling.constraints.qhat_adjoint(y)

    def _pstar_adjoint(self, chi: State, u: State) -> State:
        y = self.coupling.solve_qhat_image(chi, u)
        return u - self.parent.apply(chi, self.coupling.constraints.qhat_adjoint(y))

    def apply(self, chi: State, a: State) -> State:
        ja = self.parent.apply(chi, a)
        y = self.coupling.solve_qhat_image(chi, ja)
        return ja - self.parent.apply(chi, self.coupling.constraints.qhat_adjoint(y))

    def state_kernel(self, b: State, c: State) -> State:
        if not self.constant_in_state:
            raise NotImplementedError("dirac state kernel only for constant parents")
        return self.schema.zeros()

    def state_derivative(self, chi: State, u: State, a: State) -> State:
        if self.constant_in_state:
            return self.schema.zeros()
        d = self.parent.state_derivative(chi, u, self._pstar(chi, a))
        return self._pstar_adjoint(chi, d)

    def jacobi_pair(self, chi: State, b: State, u: State, c: State) -> float:
        if self.constant_in_state:
            return 0.0
        return self.parent.jacobi_pair(chi, self._pstar(chi, b), u,
                                       self._pstar(chi, c))


def dirac_bracket(coupling: ConstraintCoupling, name: str = "dirac") -> DiracBracket:
    return DiracBracket(coupling, name=name)


def projected_bracket(parent: BracketOperator, projector: Projector,
                      name: str = "") -> ProjectedBracketOperator:
    """Eq-style corrected bracket: derivatives and state both projected.
    Rejects state-dependent projectors."""
    return ProjectedBracketOperator(parent, projector, name=name)


def projector_residuals(projector: Projector, probes: list[State],
                        constraints: ConstraintSet | None = None,
                        kernel_probes: list[State] | None = None) -> dict[str, float]:
    """Idempotency on the given probes and, when constraint data is supplied,
    the kernel condition P Qhat* w = 0 on constraint-space probes."""
    out = {"idempotency": 0.0}
    for a in probes:
        pa = projector.apply(a)
        res = state_norm(projector.apply(pa) - pa) / max(state_norm(a), 1e-300)
        out["idempotency"] = max(out["idempotency"], res)
    if constraints is not None and kernel_probes:
        worst = 0.0
        for w in kernel_probes:
            img = constraints.qhat_adjoint(w)
            res = state_norm(projector.apply(img)) / max(state_norm(w), 1e-300)
            worst = max(worst, res)
        out["kernel"] = worst
    return out
