"""Frequency measurement for the two-field constraint-pair flow.

The pair (phi, psi) evolves under

    phi_dot =  lap(D psi),    psi_dot = -lap(D phi),

so each Fourier mode oscillates at the absolute multiplier of lap composed
with D: unity when D inverts the Laplacian, and |k| when D inverts its
square root.  The frequency reported here is measured, not assumed: the
projection of phi onto its initial mode is fitted against a plain cosine.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import curve_fit

from ..calculus import inv_lap, inv_sqrt_neg_lap, lap
from ..errors import BracketLabError
from ..grids import Grid

__all__ = ["D_CHOICES", "DispersionResult", "predicted_frequency",
           "run_dispersion"]

D_CHOICES = {"inv_lap": inv_lap, "inv_sqrt_neg_lap": inv_sqrt_neg_lap}


@dataclass(frozen=True)
class DispersionResult:
    d_name: str
    wavevector: tuple[int, ...]
    frequency: float
    amplitude: float
    phase: float
    predicted: float
    times: np.ndarray
    trace: np.ndarray


def _physical_wavevector(grid: Grid, wavevector) -> np.ndarray:
    k = np.asarray(wavevector, dtype=float)
    if k.shape != (grid.ndim_x,):
        raise ValueError(
            f"wavevector needs {grid.ndim_x} integer components, got {wavevector!r}")
    return 2.0 * np.pi * k / np.array([grid.axis_period(i) for i in range(grid.ndim_x)])


def predicted_frequency(grid: Grid, d_name: str, wavevector) -> float:
    """|lap * D| multiplier of the chosen mode."""
    kphys = _physical_wavevector(grid, wavevector)
    ksq = float(kphys @ kphys)
    if ksq == 0.0:
        raise ValueError("the zero mode does not oscillate; pick |k| > 0")
    if d_name == "inv_lap":
        return 1.0
    if d_name == "inv_sqrt_neg_lap":
        return float(np.sqrt(ksq))
    raise ValueError(f"unknown operator {d_name!r}; choose from {tuple(D_CHOICES)}")


def _fit_cosine(times: np.ndarray, trace: np.ndarray) -> tuple[float, float, float]:
    """Least-squares a*cos(w t + theta), seeded from the trace's spectrum."""
    n = times.size
    dt = times[1] - times[0]
    spectrum = np.abs(np.fft.rfft(trace - trace.mean()))
    peak = int(np.argmax(spectrum[1:])) + 1
    w0 = 2.0 * np.pi * peak / (n * dt)
    a0 = float(np.max(np.abs(trace)))

    def model(t, a, w, theta):
        return a * np.cos(w * t + theta)

    try:
        popt, _ = curve_fit(model, times, trace, p0=(a0, w0, 0.0), maxfev=20000)
    except RuntimeError as exc:
        raise BracketLabError("frequency fit did not converge") from exc
    a, w, theta = popt
    return abs(float(a)), abs(float(w)), float(theta)


def run_dispersion(grid: Grid, d_name: str, wavevector,
                   periods: int = 10, samples_per_period: int = 48,
                   initial: np.ndarray | None = None) -> DispersionResult:
    """Evolve the pair from a single cosine mode and fit its frequency.

    ``periods`` and ``samples_per_period`` control the sampling window; the
    defaults comfortably resolve the phase over ten oscillations.
    """
    if grid.ndim_v:
        raise ValueError("the constraint-pair flow lives on a spatial grid")
    if d_name not in D_CHOICES:
        raise ValueError(f"unknown operator {d_name!r}; choose from {tuple(D_CHOICES)}")
    d_op = D_CHOICES[d_name]
    omega_ref = predicted_frequency(grid, d_name, wavevector)

    if initial is None:
        kphys = _physical_wavevector(grid, wavevector)
        meshes = grid.spatial_meshes()
        phi = np.cos(sum(kphys[i] * meshes[i] for i in range(grid.ndim_x)))
    else:
        phi = np.array(initial, dtype=float)
        if phi.shape != grid.shape_x:
            raise ValueError(f"initial field must have shape {grid.shape_x}")
    if not np.any(phi):
        raise BracketLabError("the initial field vanishes; the trajectory is zero")
    psi = np.zeros_like(phi)

    phi0 = phi.copy()
    norm0 = float(np.sum(phi0 * phi0))

    def rhs(p, q):
        return lap(grid, d_op(grid, q)), -lap(grid, d_op(grid, p))

    steps = periods * samples_per_period
    dt = (2.0 * np.pi / omega_ref) / samples_per_period
    times = np.empty(steps + 1)
    trace = np.empty(steps + 1)
    for step in range(steps + 1):
        times[step] = step * dt
        trace[step] = float(np.sum(phi * phi0)) / norm0
        if step < steps:
            k1p, k1q = rhs(phi, psi)
            k2p, k2q = rhs(phi + 0.5 * dt * k1p, psi + 0.5 * dt * k1q)
            k3p, k3q = rhs(phi + 0.5 * dt * k2p, psi + 0.5 * dt * k2q)
            k4p, k4q = rhs(phi + dt * k3p, psi + dt * k3q)
            phi = phi + (dt / 6.0) * (k1p + 2.0 * (k2p + k3p) + k4p)
            psi = psi + (dt / 6.0) * (k1q + 2.0 * (k2q + k3q) + k4q)

    amplitude, frequency, phase = _fit_cosine(times, trace)
    return DispersionResult(
        d_name=d_name, wavevector=tuple(int(c) for c in np.atleast_1d(wavevector)),
        frequency=frequency, amplitude=amplitude, phase=phase,
        predicted=omega_ref, times=times, trace=trace)
