"""Uniform periodic grids for spatial and phase-space fields.

Spatial axes are periodic with points x_i = i * L / N.  Velocity axes cover
[-vmax, vmax] sampled at cell centers v_j = -vmax + (j + 1/2) * dv, which makes
odd grid moments of even densities vanish exactly; spectrally they are treated
as periodic with period 2 * vmax, so fields living on them must decay below
tolerance at the cutoff.

First-derivative multipliers zero the Nyquist mode so the derivative operator
is exactly skew-symmetric on the grid (exact summation by parts); Laplacian
multipliers keep the full |k|^2.  Band-limited fields (no Nyquist content) see
no difference.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = ["Grid"]


@dataclass(frozen=True)
class Grid:
    spatial_points: tuple[int, ...]
    spatial_lengths: tuple[float, ...]
    velocity_points: tuple[int, ...] = ()
    velocity_extents: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if len(self.spatial_points) not in (1, 2, 3):
            raise ValueError("spatial dimension must be 1, 2, or 3")
        if len(self.spatial_lengths) != len(self.spatial_points):
            raise ValueError("spatial_lengths must match spatial_points")
        if len(self.velocity_points) != len(self.velocity_extents):
            raise ValueError("velocity_extents must match velocity_points")
        for n in self.spatial_points + self.velocity_points:
            if n < 4:
                raise ValueError("every axis needs at least 4 points")

    # -- constructors -----------------------------------------------------
    @staticmethod
    def spatial(points, lengths=None) -> "Grid":
        """Spatial-only grid; `points` is an int (cubed box) or tuple."""
        pts = (points,) * 3 if isinstance(points, int) else tuple(points)
        if lengths is None:
            lens = (2.0 * np.pi,) * len(pts)
        elif np.isscalar(lengths):
            lens = (float(lengths),) * len(pts)
        else:
            lens = tuple(float(x) for x in lengths)
        return Grid(pts, lens)

    @staticmethod
    def phase(spatial_points, velocity_points, velocity_extent,
              spatial_lengths=None) -> "Grid":
        """Tensor grid of a spatial box and velocity axes of half-width vmax."""
        base = Grid.spatial(spatial_points, spatial_lengths)
        vpts = ((velocity_points,) * base.ndim_x if isinstance(velocity_points, int)
                else tuple(velocity_points))
        if np.isscalar(velocity_extent):
            vext = (float(velocity_extent),) * len(vpts)
        else:
            vext = tuple(float(x) for x in velocity_extent)
        return Grid(base.spatial_points, base.spatial_lengths, vpts, vext)

    # -- basic geometry ----------------------------------------------------
    @property
    def ndim_x(self) -> int:
        return len(self.spatial_points)

    @property
    def ndim_v(self) -> int:
        return len(self.velocity_points)

    @property
    def shape_x(self) -> tuple[int, ...]:
        return self.spatial_points

    @property
    def shape_v(self) -> tuple[int, ...]:
        return self.velocity_points

    @property
    def shape(self) -> tuple[int, ...]:
        return self.spatial_points + self.velocity_points

    @property
    def dx(self) -> tuple[float, ...]:
        return tuple(l / n for l, n in zip(self.spatial_lengths, self.spatial_points))

    @property
    def dv(self) -> tuple[float, ...]:
        return tuple(2.0 * vm / n for vm, n in zip(self.velocity_extents, self.velocity_points))

    @property
    def cell_volume_x(self) -> float:
        return float(np.prod(self.dx)) if self.ndim_x else 1.0

    @property
    def cell_volume_v(self) -> float:
        return float(np.prod(self.dv)) if self.ndim_v else 1.0

    @property
    def velocity_volume(self) -> float:
        return float(np.prod([2.0 * vm for vm in self.velocity_extents])) if self.ndim_v else 1.0

    @property
    def spatial_volume(self) -> float:
        return float(np.prod(self.spatial_lengths))

    def x_axis(self, i: int) -> np.ndarray:
        n = self.spatial_points[i]
        return np.arange(n) * self.dx[i]

    def v_axis(self, j: int) -> np.ndarray:
        n = self.velocity_points[j]
        return -self.velocity_extents[j] + (np.arange(n) + 0.5) * self.dv[j]

    def spatial_meshes(self) -> tuple[np.ndarray, ...]:
        """Broadcastable coordinate arrays over shape_x (sparse meshgrid)."""
        axes = [self.x_axis(i) for i in range(self.ndim_x)]
        return tuple(np.meshgrid(*axes, indexing="ij", sparse=True))

    def velocity_mesh(self, j: int) -> np.ndarray:
        """Velocity coordinate j reshaped to broadcast over phase arrays."""
        shape = [1] * (self.ndim_x + self.ndim_v)
        shape[self.ndim_x + j] = self.velocity_points[j]
        return self.v_axis(j).reshape(shape)

    def with_velocity_extent(self, velocity_extent) -> "Grid":
        """Same grid with rescaled velocity cutoffs (same point counts)."""
        if np.isscalar(velocity_extent):
            vext = (float(velocity_extent),) * self.ndim_v
        else:
            vext = tuple(float(x) for x in velocity_extent)
        return Grid(self.spatial_points, self.spatial_lengths,
                    self.velocity_points, vext)

    # -- wavenumbers --------------------------------------------------------
    def axis_period(self, axis: int) -> float:
        """Period of (combined) axis: spatial length or 2*vmax."""
        if axis < self.ndim_x:
            return self.spatial_lengths[axis]
        return 2.0 * self.velocity_extents[axis - self.ndim_x]

    def axis_points(self, axis: int) -> int:
        if axis < self.ndim_x:
            return self.spatial_points[axis]
        return self.velocity_points[axis - self.ndim_x]


@lru_cache(maxsize=None)
def deriv_wavenumbers(grid: Grid, axis: int) -> np.ndarray:
    """Angular wavenumbers for first derivatives, Nyquist mode zeroed."""
    n = grid.axis_points(axis)
    k = 2.0 * np.pi * np.fft.fftfreq(n, d=grid.axis_period(axis) / n)
    if n % 2 == 0:
        k[n // 2] = 0.0
    k.flags.writeable = False
    return k


@lru_cache(maxsize=None)
def full_wavenumbers(grid: Grid, axis: int) -> np.ndarray:
    """Angular wavenumbers including the Nyquist mode (for Laplacians)."""
    n = grid.axis_points(axis)
    k = 2.0 * np.pi * np.fft.fftfreq(n, d=grid.axis_period(axis) / n)
    k.flags.writeable = False
    return k


@lru_cache(maxsize=None)
def spatial_ksq(grid: Grid) -> np.ndarray:
    """|k|^2 over shape_x (full wavenumbers)."""
    out = np.zeros(grid.shape_x)
    for i in range(grid.ndim_x):
        shape = [1] * grid.ndim_x
        shape[i] = grid.spatial_points[i]
        out = out + full_wavenumbers(grid, i).reshape(shape) ** 2
    out.flags.writeable = False
    return out


@lru_cache(maxsize=None)
def spatial_deriv_ksq(grid: Grid) -> np.ndarray:
    """|k|^2 over shape_x built from the first-derivative wavenumbers.

    This is the symbol of -div(grad(.)) as the package actually composes it,
    which differs from spatial_ksq on Nyquist planes (where odd derivatives
    are zeroed).
    """
    out = np.zeros(grid.shape_x)
    for i in range(grid.ndim_x):
        shape = [1] * grid.ndim_x
        shape[i] = grid.spatial_points[i]
        out = out + deriv_wavenumbers(grid, i).reshape(shape) ** 2
    out.flags.writeable = False
    return out
