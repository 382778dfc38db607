import numpy as np
import pytest

from bracketlab import Grid
from bracketlab.calculus import (DIFF_OPS, adjoint_residual, compressible_part,
                                 curl, div, grad, grad_star, inv_div_grad,
                                 inv_lap, inv_sqrt_neg_lap, lap, mean_free,
                                 mean_part, solenoidal_part, v_grad,
                                 v_integrate, x_grad)
from bracketlab.fields import integrate, random_field

ADJOINT_TOL = 1e-10


def vec(grid, seed, band=3):
    return random_field(grid, "vector", (seed, 0), band=band)


def scal(grid, seed, band=3):
    return random_field(grid, "scalar", (seed, 0), band=band)


def test_grad_single_mode_exact(grid16):
    x = grid16.x_axis(0)[:, None, None]
    f = np.broadcast_to(np.sin(2.0 * x), grid16.shape_x).copy()
    g = grad(grid16, f)
    np.testing.assert_allclose(g[0], 2.0 * np.cos(2.0 * x) * np.ones_like(f),
                               atol=1e-12)
    np.testing.assert_allclose(g[1], 0.0, atol=1e-13)


def test_div_and_curl_single_mode(grid16):
    y = grid16.x_axis(1)[None, :, None]
    u = np.zeros((3,) + grid16.shape_x)
    u[0] = np.broadcast_to(np.sin(3.0 * y), grid16.shape_x)
    assert np.max(np.abs(div(grid16, u))) < 1e-12  # u_x depends only on y
    w = curl(grid16, u)
    np.testing.assert_allclose(w[2], -3.0 * np.cos(3.0 * y) * np.ones(grid16.shape_x),
                               atol=1e-12)


def test_named_adjoint_pairs(grid8):
    # <op u, w> == <u, adjoint w> for every registered operator
    for name, (op, adj, rank_in, rank_out) in DIFF_OPS.items():
        u = scal(grid8, 11) if rank_in == 0 else vec(grid8, 11)
        w = scal(grid8, 12) if rank_out == 0 else vec(grid8, 12)
        assert adjoint_residual(name, grid8, u, w) < ADJOINT_TOL, name


def test_laplacian_roundtrip_zero_mean(grid8):
    f = mean_free(grid8, scal(grid8, 21))
    np.testing.assert_allclose(inv_lap(grid8, lap(grid8, f)), f, atol=1e-12)
    np.testing.assert_allclose(lap(grid8, inv_lap(grid8, f)), f, atol=1e-12)


def test_inv_lap_annihilates_mean(grid8):
    f = np.full(grid8.shape_x, 3.7)
    assert np.max(np.abs(inv_lap(grid8, f))) < 1e-14


def test_half_inverse_squares_to_inverse(grid8):
    # (-lap)^(-1/2) applied twice equals the Moore-Penrose inverse of -lap
    f = mean_free(grid8, scal(grid8, 22))
    twice = inv_sqrt_neg_lap(grid8, inv_sqrt_neg_lap(grid8, f))
    np.testing.assert_allclose(twice, -inv_lap(grid8, f), atol=1e-10)


def noise(grid, seed, comps=None):
    # full-spectrum noise, Nyquist planes included (random_field is
    # deliberately band-limited, so roll our own for the edge cases)
    gen = np.random.default_rng(seed)
    shape = grid.shape_x if comps is None else (comps,) + grid.shape_x
    return gen.standard_normal(shape)


def test_inv_div_grad_inverts_the_composition(grid8):
    # div o grad is NOT lap on even grids (Nyquist); inv_div_grad undoes the
    # composition exactly while inv_lap does not.
    f = mean_free(grid8, noise(grid8, 23))
    composed = div(grid8, grad(grid8, f))
    assert np.max(np.abs(composed - lap(grid8, f))) > 1e-3
    back = inv_div_grad(grid8, composed)
    sees = f - np.fft.ifftn(np.where(
        _deriv_ksq(grid8) > 0, 0.0, 1.0) * np.fft.fftn(f)).real
    np.testing.assert_allclose(back, sees, atol=1e-12)


def _deriv_ksq(grid):
    from bracketlab.grids import spatial_deriv_ksq
    return spatial_deriv_ksq(grid)


def test_helmholtz_decomposition(grid8):
    u = noise(grid8, 31, comps=3)
    s = solenoidal_part(grid8, u)
    c = compressible_part(grid8, u)
    np.testing.assert_allclose(s + c, u, atol=1e-12)
    # solenoidal part is divergence free for EVERY input, Nyquist included
    assert np.max(np.abs(div(grid8, s))) < 1e-12
    assert np.max(np.abs(curl(grid8, c))) < 1e-12
    # L2-orthogonal pieces
    assert abs(integrate(grid8, np.sum(s * c, axis=0))) < 1e-12


def test_helmholtz_parts_are_projectors(grid8):
    u = noise(grid8, 32, comps=3)
    s = solenoidal_part(grid8, u)
    c = compressible_part(grid8, u)
    np.testing.assert_allclose(solenoidal_part(grid8, s), s, atol=1e-12)
    np.testing.assert_allclose(compressible_part(grid8, c), c, atol=1e-12)
    assert np.max(np.abs(compressible_part(grid8, s))) < 1e-12
    assert np.max(np.abs(solenoidal_part(grid8, c))) < 1e-12


def test_grad_star_is_self_adjoint_and_squares(grid8):
    u = vec(grid8, 33)
    w = vec(grid8, 34)
    lhs = integrate(grid8, np.sum(grad_star(grid8, u) * w, axis=0))
    rhs = integrate(grid8, np.sum(u * grad_star(grid8, w), axis=0))
    assert abs(lhs - rhs) < 1e-10
    # the half-power cancels against div o grad: grad_star^2 = -grad o div
    u_band = vec(grid8, 35, band=2)
    twice = grad_star(grid8, grad_star(grid8, u_band))
    np.testing.assert_allclose(twice, -grad(grid8, div(grid8, u_band)),
                               atol=1e-10)


def test_dense_first_derivative_matrix_is_skew():
    # 1-D oracle: materialize d/dx on 16 points and check exact skew-symmetry
    g = Grid.spatial((16,))
    n = 16
    mat = np.empty((n, n))
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        mat[:, j] = grad(g, e)[0]
    assert np.max(np.abs(mat + mat.T)) < 1e-12
    # eigenvalues are +-i k for k = 0..7 with Nyquist zeroed
    eig = np.sort(np.abs(np.linalg.eigvals(mat).imag))
    expected = np.sort(np.abs(np.concatenate([np.arange(8), -np.arange(8)])))
    np.testing.assert_allclose(eig, expected, atol=1e-10)


def test_mean_part_and_mean_free(grid8):
    u = vec(grid8, 41) + 1.5
    m = mean_part(grid8, u)
    assert np.allclose(m, u.mean(axis=(1, 2, 3), keepdims=True))
    assert np.max(np.abs(mean_free(grid8, u).mean(axis=(1, 2, 3)))) < 1e-14


def test_shape_validation(grid8):
    with pytest.raises(ValueError):
        div(grid8, np.zeros(grid8.shape_x))
    with pytest.raises(ValueError):
        grad(grid8, np.zeros((3,) + grid8.shape_x))


def test_phase_gradients_single_mode():
    g = Grid.phase((8,), 8, 2.0)
    x = g.x_axis(0)[:, None]
    v = g.v_axis(0)[None, :]
    F = np.sin(x) * np.exp(-np.broadcast_to(v, g.shape) ** 2)
    gx = x_grad(g, F)
    np.testing.assert_allclose(gx[0], np.cos(x) * np.exp(-v ** 2) * np.ones(g.shape),
                               atol=1e-12)
    gv = v_grad(g, F)
    assert gv.shape == (1,) + g.shape


def test_v_integrate_gaussian():
    g = Grid.phase((8,), 32, 6.0)
    v = g.v_axis(0)[None, :]
    F = np.broadcast_to(np.exp(-0.5 * v ** 2), g.shape).copy()
    n = v_integrate(g, F)
    np.testing.assert_allclose(n, np.sqrt(2.0 * np.pi), rtol=1e-7)
    # odd moments cancel exactly on the cell-centered axis
    m1 = v_integrate(g, g.velocity_mesh(0) * F)
    assert np.max(np.abs(m1)) < 1e-13
