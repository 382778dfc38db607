"""Fourier-multiplier calculus on periodic grids.

Spatial operators act on arrays whose trailing axes are the spatial grid
(scalars ``(*shape_x)`` or vectors ``(ndim_x, *shape_x)``), so they also apply
component-wise to stacked fields.  Phase-space helpers (`x_grad`, `v_grad`,
velocity moments) act on arrays shaped ``(*shape_x, *shape_v)``.

Inverse Laplacians are Moore-Penrose: the spatial mean is annihilated, and
``inv_lap(lap(f)) == f - mean(f)`` exactly on band-limited fields.  Products of
fields are taken pointwise with no dealiasing; callers keep bands below the
Nyquist index when identities must hold to roundoff.
"""
from __future__ import annotations

import numpy as np

from .grids import Grid, deriv_wavenumbers, full_wavenumbers, spatial_deriv_ksq, spatial_ksq

__all__ = [
    "grad", "div", "curl", "lap", "inv_lap", "inv_sqrt_neg_lap", "inv_div_grad",
    "grad_star",
    "solenoidal_part", "compressible_part", "mean_part", "mean_free",
    "x_grad", "v_grad", "v_integrate", "apply_diff", "adjoint_residual",
    "DIFF_OPS",
]


def _k_at(grid: Grid, arr_ndim: int, i: int, nyquist_zeroed: bool = True) -> np.ndarray:
    """Wavenumbers of spatial axis i reshaped for a trailing-spatial array."""
    k = (deriv_wavenumbers if nyquist_zeroed else full_wavenumbers)(grid, i)
    shape = [1] * arr_ndim
    shape[arr_ndim - grid.ndim_x + i] = k.size
    return k.reshape(shape)


def _sx_axes(grid: Grid, arr: np.ndarray) -> tuple[int, ...]:
    return tuple(range(arr.ndim - grid.ndim_x, arr.ndim))


def _check_scalar(grid: Grid, f: np.ndarray) -> None:
    if f.shape != grid.shape_x:
        raise ValueError(f"expected scalar spatial field, got shape {f.shape}")


def _check_vector(grid: Grid, u: np.ndarray) -> None:
    if u.shape != (grid.ndim_x,) + grid.shape_x:
        raise ValueError(f"expected vector spatial field, got shape {u.shape}")


def grad(grid: Grid, f: np.ndarray) -> np.ndarray:
    _check_scalar(grid, f)
    spec = np.fft.fftn(f)
    out = np.empty((grid.ndim_x,) + grid.shape_x)
    for i in range(grid.ndim_x):
        out[i] = np.fft.ifftn(1j * _k_at(grid, f.ndim, i) * spec).real
    return out


def div(grid: Grid, u: np.ndarray) -> np.ndarray:
    _check_vector(grid, u)
    spec = np.fft.fftn(u, axes=_sx_axes(grid, u))
    acc = np.zeros(grid.shape_x, dtype=complex)
    for i in range(grid.ndim_x):
        acc += 1j * _k_at(grid, u.ndim - 1, i) * spec[i]
    return np.fft.ifftn(acc).real


def curl(grid: Grid, u: np.ndarray) -> np.ndarray:
    if grid.ndim_x != 3:
        raise ValueError("curl needs a 3-D spatial grid")
    _check_vector(grid, u)
    spec = np.fft.fftn(u, axes=_sx_axes(grid, u))
    k = [_k_at(grid, u.ndim - 1, i) for i in range(3)]
    out = np.empty_like(u)
    out[0] = np.fft.ifftn(1j * (k[1] * spec[2] - k[2] * spec[1])).real
    out[1] = np.fft.ifftn(1j * (k[2] * spec[0] - k[0] * spec[2])).real
    out[2] = np.fft.ifftn(1j * (k[0] * spec[1] - k[1] * spec[0])).real
    return out


def lap(grid: Grid, f: np.ndarray) -> np.ndarray:
    """Laplacian (full |k|^2), on scalar or stacked fields."""
    ksq = spatial_ksq(grid)
    spec = np.fft.fftn(f, axes=_sx_axes(grid, f))
    return np.fft.ifftn(-ksq * spec, axes=_sx_axes(grid, f)).real


def _inv_multiplier(grid: Grid, power: float) -> np.ndarray:
    ksq = spatial_ksq(grid)
    with np.errstate(divide="ignore"):
        mult = np.where(ksq > 0.0, ksq ** (-power), 0.0)
    return mult


def inv_lap(grid: Grid, f: np.ndarray) -> np.ndarray:
    """Moore-Penrose inverse Laplacian: -1/|k|^2, zero mode annihilated."""
    spec = np.fft.fftn(f, axes=_sx_axes(grid, f))
    return np.fft.ifftn(-_inv_multiplier(grid, 1.0) * spec, axes=_sx_axes(grid, f)).real


def inv_sqrt_neg_lap(grid: Grid, f: np.ndarray) -> np.ndarray:
    """(-lap)^(-1/2): multiplier 1/|k|, zero mode annihilated."""
    spec = np.fft.fftn(f, axes=_sx_axes(grid, f))
    return np.fft.ifftn(_inv_multiplier(grid, 0.5) * spec, axes=_sx_axes(grid, f)).real


def inv_div_grad(grid: Grid, f: np.ndarray) -> np.ndarray:
    """Moore-Penrose inverse of the composed div(grad(.)) operator.

    Because grad/div zero the Nyquist mode, div o grad is NOT lap on even
    grids: its symbol is -spatial_deriv_ksq.  Inverting compositions of the
    first-derivative operators with inv_lap leaves O(1) errors on Nyquist
    planes; use this instead wherever the operator being undone was built
    from grad/div.  Annihilates every mode the derivative stencil kills.
    """
    dksq = spatial_deriv_ksq(grid)
    with np.errstate(divide="ignore"):
        mult = np.where(dksq > 0.0, -1.0 / dksq, 0.0)
    spec = np.fft.fftn(f, axes=_sx_axes(grid, f))
    return np.fft.ifftn(mult * spec, axes=_sx_axes(grid, f)).real


def grad_star(grid: Grid, u: np.ndarray) -> np.ndarray:
    """Self-adjoint vector->vector map grad o (-lap)^(-1/2) o div."""
    _check_vector(grid, u)
    return grad(grid, inv_sqrt_neg_lap(grid, div(grid, u)))


def compressible_part(grid: Grid, u: np.ndarray) -> np.ndarray:
    """Curl-free Helmholtz component grad(inv_div_grad(div u)); mean-free.

    Built on inv_div_grad so that div(solenoidal_part(u)) vanishes exactly
    for every input, Nyquist planes included.
    """
    return grad(grid, inv_div_grad(grid, div(grid, u)))


def solenoidal_part(grid: Grid, u: np.ndarray) -> np.ndarray:
    """Divergence-free Helmholtz component (keeps the mean)."""
    return u - compressible_part(grid, u)


def mean_part(grid: Grid, arr: np.ndarray) -> np.ndarray:
    """Spatial mean per leading component, broadcast back to arr's shape."""
    axes = _sx_axes(grid, arr)
    return np.broadcast_to(arr.mean(axis=axes, keepdims=True), arr.shape).copy()


def mean_free(grid: Grid, arr: np.ndarray) -> np.ndarray:
    axes = _sx_axes(grid, arr)
    return arr - arr.mean(axis=axes, keepdims=True)


# -- phase-space helpers ----------------------------------------------------

def _phase_check(grid: Grid, F: np.ndarray) -> None:
    if F.shape != grid.shape:
        raise ValueError(f"expected phase field of shape {grid.shape}, got {F.shape}")


def x_grad(grid: Grid, F: np.ndarray) -> np.ndarray:
    """Spatial gradient of a phase field: (ndim_x, *shape)."""
    _phase_check(grid, F)
    axes = tuple(range(grid.ndim_x))
    spec = np.fft.fftn(F, axes=axes)
    out = np.empty((grid.ndim_x,) + grid.shape)
    for i in range(grid.ndim_x):
        k = deriv_wavenumbers(grid, i)
        shape = [1] * F.ndim
        shape[i] = k.size
        out[i] = np.fft.ifftn(1j * k.reshape(shape) * spec, axes=axes).real
    return out


def v_grad(grid: Grid, F: np.ndarray) -> np.ndarray:
    """Velocity gradient of a phase field: (ndim_v, *shape)."""
    _phase_check(grid, F)
    axes = tuple(range(grid.ndim_x, grid.ndim_x + grid.ndim_v))
    spec = np.fft.fftn(F, axes=axes)
    out = np.empty((grid.ndim_v,) + grid.shape)
    for j in range(grid.ndim_v):
        k = deriv_wavenumbers(grid, grid.ndim_x + j)
        shape = [1] * F.ndim
        shape[grid.ndim_x + j] = k.size
        out[j] = np.fft.ifftn(1j * k.reshape(shape) * spec, axes=axes).real
    return out


def v_integrate(grid: Grid, F: np.ndarray) -> np.ndarray:
    """Velocity-space integral of phase array(s); keeps leading axes."""
    if F.shape[-grid.ndim_v - grid.ndim_x:] != grid.shape:
        raise ValueError("array does not end with the phase-space shape")
    axes = tuple(range(F.ndim - grid.ndim_v, F.ndim))
    return F.sum(axis=axes) * grid.cell_volume_v


# -- named operator registry and adjoint checks -------------------------------

def _neg_grad(grid, f):
    return -grad(grid, f)


def _neg_div(grid, u):
    return -div(grid, u)


# name -> (apply, adjoint_apply, input rank, output rank); rank 0 scalar, 1 vector
DIFF_OPS: dict[str, tuple] = {
    "grad": (grad, _neg_div, 0, 1),
    "div": (div, _neg_grad, 1, 0),
    "curl": (curl, curl, 1, 1),
    "lap": (lap, lap, 0, 0),
    "inv_lap": (inv_lap, inv_lap, 0, 0),
    "inv_sqrt_neg_lap": (inv_sqrt_neg_lap, inv_sqrt_neg_lap, 0, 0),
    "grad_star": (grad_star, grad_star, 1, 1),
    "solenoidal_part": (solenoidal_part, solenoidal_part, 1, 1),
    "compressible_part": (compressible_part, compressible_part, 1, 1),
}


def apply_diff(name: str, grid: Grid, arr: np.ndarray) -> np.ndarray:
    """Apply a named spectral operator with input-rank validation."""
    if name not in DIFF_OPS:
        raise KeyError(f"unknown differential operator {name!r}")
    op, _, rank_in, _ = DIFF_OPS[name]
    expected = grid.shape_x if rank_in == 0 else (grid.ndim_x,) + grid.shape_x
    if arr.shape != expected:
        raise ValueError(f"{name} expects shape {expected}, got {arr.shape}")
    return op(grid, arr)


def adjoint_residual(name: str, grid: Grid, u: np.ndarray, w: np.ndarray) -> float:
    """|<L u, w> - <u, L* w>| / (|u| |w|) on the grid inner product."""
    op, adj, _, _ = DIFF_OPS[name]
    lhs = float(np.vdot(op(grid, u), w).real)
    rhs = float(np.vdot(u, adj(grid, w)).real)
    denom = float(np.linalg.norm(u) * np.linalg.norm(w)) or 1.0
    return abs(lhs - rhs) / denom
