"""Explicit time stepping for bracket-generated flows.

Every flow integrated here has the form ``chi_dot = J(chi) dH/dchi`` for a
bracket operator ``J`` and a Hamiltonian ``H``; the integrator is a plain
fourth-order Runge--Kutta step with scalar monitors sampled along the way.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from ..calculus import div
from ..errors import BracketLabError, SimulationDiverged
from ..fields import State, state_norm
from ..systems.base import SystemSpec

__all__ = ["EvolutionResult", "bracket_flow", "rk4_step", "evolve",
           "build_monitors"]

RHS = Callable[[State], State]
Monitor = Callable[[State], float]


def bracket_flow(system: SystemSpec, bracket: str | None = None) -> RHS:
    """Right-hand side chi -> J(chi) dH/dchi for the named bracket."""
    if system.hamiltonian is None:
        raise BracketLabError(
            f"system {system.name!r} carries no Hamiltonian, so it has no "
            "equations of motion; only bracket-level diagnostics apply")
    op = system.bracket(bracket)
    ham = system.hamiltonian

    def rhs(chi: State) -> State:
        return op.apply(chi, ham.derivative(chi))

    return rhs


def rk4_step(rhs: RHS, chi: State, dt: float) -> State:
    k1 = rhs(chi)
    k2 = rhs(chi + k1 * (0.5 * dt))
    k3 = rhs(chi + k2 * (0.5 * dt))
    k4 = rhs(chi + k3 * dt)
    return chi + (k1 + (k2 + k3) * 2.0 + k4) * (dt / 6.0)


@dataclass
class EvolutionResult:
    times: np.ndarray
    monitors: dict[str, np.ndarray]
    final_state: State

    def monitor_drift(self, name: str) -> float:
        """Largest excursion of a monitor from its initial value."""
        series = self.monitors[name]
        return float(np.max(np.abs(series - series[0])))

    def to_csv(self, path: str | Path) -> None:
        names = list(self.monitors)
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["time", *names])
            for i, t in enumerate(self.times):
                writer.writerow([f"{t:.12g}",
                                 *(f"{self.monitors[n][i]:.12g}" for n in names)])


def evolve(rhs: RHS, chi0: State, dt: float, steps: int,
           monitors: dict[str, Monitor] | None = None,
           max_norm: float = 1e6) -> EvolutionResult:
    """March ``steps`` RK4 steps, recording monitors at every step boundary.

    Raises :class:`SimulationDiverged` as soon as the state norm leaves
    [0, max_norm] or stops being finite.
    """
    monitors = monitors or {}
    names = list(monitors)
    times = np.empty(steps + 1)
    series = {n: np.empty(steps + 1) for n in names}
    chi = chi0.copy()
    for step in range(steps + 1):
        t = step * dt
        nrm = state_norm(chi)
        if not np.isfinite(nrm) or nrm > max_norm:
            raise SimulationDiverged(
                f"state norm {nrm:.3g} at t={t:.6g} (step {step})")
        times[step] = t
        for n in names:
            series[n][step] = float(monitors[n](chi))
        if step < steps:
            chi = rk4_step(rhs, chi, dt)
    return EvolutionResult(times=times, monitors=series, final_state=chi)


def build_monitors(system: SystemSpec, names: list[str]) -> dict[str, Monitor]:
    """Resolve monitor names against a system.

    Supported forms: ``energy``, ``norm``, ``div:<slot>`` (max |div| of a
    vector slot), ``dev:<slot>`` (max deviation from the ``<slot>0``
    background), and ``casimir:<family>`` (value of the seed-0 member).
    """
    grid = system.grid
    out: dict[str, Monitor] = {}
    for name in names:
        if name == "energy":
            if system.hamiltonian is None:
                raise BracketLabError(
                    f"system {system.name!r} has no Hamiltonian to monitor")
            out[name] = system.hamiltonian.value
        elif name == "norm":
            out[name] = state_norm
        elif name.startswith("div:"):
            slot = name.split(":", 1)[1]
            if system.schema.kind(slot) != "vector":
                raise BracketLabError(f"slot {slot!r} is not a vector field")
            out[name] = lambda chi, s=slot: float(
                np.max(np.abs(div(grid, chi[s]))))
        elif name.startswith("dev:"):
            slot = name.split(":", 1)[1]
            ref = system.backgrounds.get(slot + "0")
            if ref is None:
                raise BracketLabError(
                    f"system {system.name!r} declares no background for "
                    f"slot {slot!r}")
            out[name] = lambda chi, s=slot, r=ref: float(
                np.max(np.abs(chi[s] - r)))
        elif name.startswith("casimir:"):
            family = name.split(":", 1)[1]
            if family not in system.casimirs:
                known = ", ".join(sorted(system.casimirs)) or "none"
                raise BracketLabError(
                    f"unknown invariant family {family!r}; this system has: {known}")
            func = system.casimirs[family].build(0)
            out[name] = func.value
        else:
            raise BracketLabError(
                f"unknown monitor {name!r}; use energy, norm, div:<slot>, "
                "dev:<slot>, or casimir:<family>")
    return out
