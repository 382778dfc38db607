"""Functionals of states: exact-derivative families and a finite-difference
black box, plus the directional consistency check."""
from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

from .fields import Schema, State, pairing

__all__ = [
    "Functional", "LinearFunctional", "QuadraticFunctional",
    "BlackBoxFunctional", "directional_residual",
]


class Functional(ABC):
    """Real-valued functional F[chi] with an L2-density derivative."""

    variant = "custom"

    def __init__(self, schema: Schema, name: str = ""):
        self.schema = schema
        self.name = name or self.__class__.__name__

    @abstractmethod
    def value(self, chi: State) -> float: ...

    @abstractmethod
    def derivative(self, chi: State) -> State: ...


class LinearFunctional(Functional):
    """F[chi] = <kernel, chi> + offset."""

    variant = "linear"

    def __init__(self, kernel: State, offset: float = 0.0, name: str = ""):
        super().__init__(kernel.schema, name)
        self.kernel = kernel
        self.offset = offset

    def value(self, chi: State) -> float:
        return pairing(self.kernel, chi) + self.offset

    def derivative(self, chi: State) -> State:
        return self.kernel.copy()


class QuadraticFunctional(Functional):
    """F[chi] = 1/2 <K chi, chi> + <kernel, chi>, K self-adjoint."""

    variant = "quadratic"

    def __init__(self, schema: Schema, apply_K, linear: State | None = None,
                 name: str = ""):
        super().__init__(schema, name)
        self.apply_K = apply_K
        self.linear = linear

    def value(self, chi: State) -> float:
        val = 0.5 * pairing(self.apply_K(chi), chi)
        if self.linear is not None:
            val += pairing(self.linear, chi)
        return val

    def derivative(self, chi: State) -> State:
        out = self.apply_K(chi)
        if self.linear is not None:
            out = out + self.linear
        return out


class BlackBoxFunctional(Functional):
    """Functional given only by an evaluator; derivative via per-sample
    central differences divided by the cell volume (a density).

    The default step is 1e-5 * (1 + max|chi|).  Quadratic cost in grid size;
    meant for small oracle grids.
    """

    variant = "blackbox"

    def __init__(self, schema: Schema, evaluator, fd_step: float | None = None,
                 name: str = ""):
        super().__init__(schema, name)
        self.evaluator = evaluator
        self.fd_step = fd_step

    def value(self, chi: State) -> float:
        return float(self.evaluator(chi))

    def derivative(self, chi: State) -> State:
        h = self.fd_step or 1e-5 * (1.0 + chi.max_abs())
        g = self.schema.grid
        work = chi.copy()
        out = self.schema.zeros()
        for name in self.schema.names:
            vol = g.cell_volume_x
            if self.schema.kind(name) == "phase":
                vol *= g.cell_volume_v
            arr = work[name]
            res = out[name]
            flat = arr.reshape(-1)
            dst = res.reshape(-1)
            for idx in range(flat.size):
                orig = flat[idx]
                flat[idx] = orig + h
                fp = self.evaluator(work)
                flat[idx] = orig - h
                fm = self.evaluator(work)
                flat[idx] = orig
                dst[idx] = (fp - fm) / (2.0 * h * vol)
        return out


def directional_residual(func: Functional, chi: State, delta: State,
                         eps: float) -> float:
    """|central difference along delta - <derivative, delta>|.

    For non-quadratic functionals the residual scales like eps^2, so halving
    eps divides it by four; for exactly quadratic ones it sits at roundoff.
    """
    fp = func.value(chi + eps * delta)
    fm = func.value(chi - eps * delta)
    fd = (fp - fm) / (2.0 * eps)
    return abs(fd - pairing(func.derivative(chi), delta))
