import numpy as np
import pytest

from bracketlab import Grid
from bracketlab.grids import (deriv_wavenumbers, full_wavenumbers,
                              spatial_deriv_ksq, spatial_ksq)

TWO_PI = 2.0 * np.pi


def test_spatial_int_makes_cube():
    g = Grid.spatial(8)
    assert g.spatial_points == (8, 8, 8)
    assert g.spatial_lengths == (TWO_PI,) * 3
    assert g.ndim_x == 3 and g.ndim_v == 0
    assert g.shape == (8, 8, 8)


def test_spatial_tuple_and_lengths():
    g = Grid.spatial((16, 8), lengths=(1.0, 2.0))
    assert g.shape_x == (16, 8)
    assert g.dx == (1.0 / 16, 2.0 / 8)
    assert np.isclose(g.cell_volume_x, (1.0 / 16) * (2.0 / 8))
    assert np.isclose(g.spatial_volume, 2.0)


def test_phase_grid_shapes():
    g = Grid.phase(8, 6, 2.0)
    assert g.shape == (8, 8, 8, 6, 6, 6)
    assert g.velocity_extents == (2.0, 2.0, 2.0)
    assert np.isclose(g.velocity_volume, 4.0 ** 3)


def test_velocity_axis_is_cell_centered():
    g = Grid.phase((16,), 8, 4.0)
    v = g.v_axis(0)
    assert v.shape == (8,)
    dv = g.dv[0]
    assert np.isclose(v[0], -4.0 + 0.5 * dv)
    assert np.isclose(v[-1], 4.0 - 0.5 * dv)
    # cell-centered axis is symmetric, so odd sums cancel exactly
    assert abs(v.sum()) < 1e-14
    assert abs((v ** 3).sum()) < 1e-12


def test_x_axis_endpoints():
    g = Grid.spatial((8,), lengths=(TWO_PI,))
    x = g.x_axis(0)
    assert np.isclose(x[0], 0.0)
    assert np.isclose(x[1], TWO_PI / 8)


def test_with_velocity_extent_rescales():
    g = Grid.phase((16,), 48, 8.0)
    g2 = g.with_velocity_extent(16.0)
    assert g2.velocity_extents == (16.0,)
    assert g2.velocity_points == g.velocity_points
    assert g2.spatial_points == g.spatial_points


def test_validation_errors():
    with pytest.raises(ValueError):
        Grid.spatial((8, 8, 8, 8))
    with pytest.raises(ValueError):
        Grid.spatial(2)
    with pytest.raises(ValueError):
        Grid((8,), (1.0, 2.0))


def test_deriv_wavenumbers_zero_nyquist():
    g = Grid.spatial((8,), lengths=(TWO_PI,))
    k = deriv_wavenumbers(g, 0)
    assert k[4] == 0.0  # Nyquist
    assert np.isclose(k[1], 1.0)
    assert np.isclose(k[-1], -1.0)
    kf = full_wavenumbers(g, 0)
    assert np.isclose(abs(kf[4]), 4.0)


def test_ksq_conventions_differ_only_at_nyquist():
    g = Grid.spatial(8)
    full = spatial_ksq(g)
    drv = spatial_deriv_ksq(g)
    diff = np.argwhere(full != drv)
    # every differing mode has a Nyquist index on some axis
    assert len(diff) > 0
    assert all(4 in idx for idx in diff)


def test_wavenumber_cache_is_readonly():
    g = Grid.spatial(8)
    k = deriv_wavenumbers(g, 0)
    with pytest.raises(ValueError):
        k[0] = 1.0


def test_grid_is_hashable_value_type():
    assert Grid.spatial(8) == Grid.spatial(8)
    assert hash(Grid.spatial(8)) == hash(Grid.spatial((8, 8, 8)))
