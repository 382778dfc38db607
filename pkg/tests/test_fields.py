import numpy as np
import pytest

from bracketlab import Grid, Schema, Slot, State
from bracketlab.fields import (integrate, pairing, random_field, random_state,
                               state_norm)


def make_schema(grid):
    return Schema(grid, (Slot("a", "scalar"), Slot("u", "vector")))


def test_schema_shapes(grid8):
    s = make_schema(grid8)
    assert s.names == ("a", "u")
    assert s.kind("u") == "vector"
    assert s.shape("a") == (8, 8, 8)
    assert s.shape("u") == (3, 8, 8, 8)


def test_state_requires_all_slots(grid8):
    s = make_schema(grid8)
    with pytest.raises(ValueError):
        State(s, {"a": np.zeros(s.shape("a"))})
    with pytest.raises(ValueError):
        State(s, {"a": np.zeros((4, 4, 4)), "u": np.zeros(s.shape("u"))})


def test_state_arithmetic(grid8):
    s = make_schema(grid8)
    x = random_state(s, 1)
    y = random_state(s, 2)
    z = x + y * 2.0 - x
    np.testing.assert_allclose(z["a"], 2.0 * y["a"], atol=1e-15)
    np.testing.assert_allclose((-x)["u"], -x["u"])
    assert np.isclose(x.norm(), state_norm(x))


def test_copy_is_deep(grid8):
    s = make_schema(grid8)
    x = random_state(s, 1)
    y = x.copy()
    y["a"][:] = 0.0
    assert np.max(np.abs(x["a"])) > 0.0


def test_integrate_constant(grid8):
    # periodic quadrature of a constant equals value * volume
    val = integrate(grid8, np.full(grid8.shape_x, 2.5))
    assert np.isclose(val, 2.5 * grid8.spatial_volume)


def test_integrate_phase_accepts_both_shapes():
    g = Grid.phase((8,), 6, 2.0)
    spatial = np.ones(g.shape_x)
    phase = np.ones(g.shape)
    assert np.isclose(integrate(g, spatial), g.spatial_volume)
    assert np.isclose(integrate(g, phase), g.spatial_volume * g.velocity_volume)


def test_pairing_symmetry_and_norm(grid8):
    s = make_schema(grid8)
    x = random_state(s, 3)
    y = random_state(s, 4)
    assert np.isclose(pairing(x, y), pairing(y, x))
    assert np.isclose(pairing(x, x), state_norm(x) ** 2)


def test_random_field_band_limit(grid8):
    f = random_field(grid8, "scalar", (0, 1), band=2)
    spec = np.fft.fftn(f)
    k = np.fft.fftfreq(8, d=1.0 / 8)
    mask = (np.abs(k[:, None, None]) > 2) | (np.abs(k[None, :, None]) > 2) \
        | (np.abs(k[None, None, :]) > 2)
    assert np.max(np.abs(spec[mask])) < 1e-12 * np.max(np.abs(spec))


def test_random_field_zero_mean(grid8):
    f = random_field(grid8, "scalar", (0, 2), band=2, zero_mean=True)
    assert abs(f.mean()) < 1e-14


def test_random_field_deterministic(grid8):
    a = random_field(grid8, "scalar", (7, 7), band=2)
    b = random_field(grid8, "scalar", (7, 7), band=2)
    c = random_field(grid8, "scalar", (7, 8), band=2)
    np.testing.assert_array_equal(a, b)
    assert np.max(np.abs(a - c)) > 0.0


def test_random_state_zero_mean_selected_slots(grid8):
    s = make_schema(grid8)
    x = random_state(s, 5, zero_mean=["a"])
    assert abs(x["a"].mean()) < 1e-14


def test_random_state_amplitude_scales(grid8):
    s = make_schema(grid8)
    x1 = random_state(s, 6, amplitude=0.3)
    x2 = random_state(s, 6, amplitude=0.6)
    np.testing.assert_allclose(x2["a"], 2.0 * x1["a"], rtol=1e-12)
