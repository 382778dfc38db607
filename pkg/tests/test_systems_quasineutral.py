"""Tests for the drift-kinetic two-species system with neutrality pinning."""
import numpy as np
import pytest

from bracketlab.fields import State, random_field, random_state
from bracketlab.grids import Grid
from bracketlab.reduction import dirac_projector
from bracketlab.brackets import casimir_residual
from bracketlab.systems import get_system
from bracketlab.systems.quasineutral import Species, maxwellian


def make(seed=2):
    system = get_system("quasineutral")
    chi = random_state(system.schema, seed, band=2, vband=2)
    return system, system.grid, system.schema, chi


def test_maxwellian_moments_are_exact_on_the_grid():
    # Periodic trapezoid quadrature converges super-algebraically on the
    # decayed weight, so the moments land at machine precision.
    grid = Grid.phase((16,), 48, 8.0)
    sp = Species(density=1.3, drift=(0.3,), sigma=0.9)
    alpha = maxwellian(grid, sp)
    v = grid.v_axis(0)
    dv = v[1] - v[0]
    assert alpha.sum() * dv == pytest.approx(sp.density, abs=1e-13)
    assert (v * alpha).sum() * dv == pytest.approx(sp.density * 0.3, abs=1e-13)
    assert ((v - 0.3) ** 2 * alpha).sum() * dv == pytest.approx(
        sp.density * sp.sigma ** 2, abs=1e-13)


def test_maxwellian_guards_against_fat_tails():
    grid = Grid.phase((16,), 16, 3.5)
    with pytest.raises(ValueError):
        maxwellian(grid, Species(drift=(0.0,)))
    # Loosening the guard admits the same weight.
    alpha = maxwellian(grid, Species(drift=(0.0,)), decay_guard=1e-2)
    assert alpha.max() > 0.0


def test_species_validation():
    grid = Grid.phase((16,), 48, 8.0)
    with pytest.raises(ValueError):
        maxwellian(grid, Species(drift=(0.0, 0.0)))
    with pytest.raises(ValueError):
        get_system("quasineutral", grid=Grid.phase(8, 6, 2.0))


def test_gram_operator_has_the_volume_row():
    # The charge row of the Gram operator is multiplication by twice the
    # species count times the velocity-box volume.
    system, grid, schema, _ = make()
    cs = system.constraints["neutrality"]
    w1 = random_field(grid, "scalar", (5, 1), band=2)
    w = State(cs.constraint_schema,
              {"neutrality": w1, "flux": np.zeros(grid.shape_x)})
    g = cs.gram_apply(w)
    vmax = grid.velocity_extents[0]
    assert np.max(np.abs(g["neutrality"] - 4.0 * vmax * w1)) < 1e-12
    assert np.max(np.abs(g["flux"])) < 1e-12


def test_closed_inverse_roundtrip_and_krylov_agreement():
    system, grid, schema, chi = make()
    coupling = system.couplings["neutrality"]
    cschema = coupling.constraints.constraint_schema
    for i in range(3):
        w = random_state(cschema, (91, i), band=2, zero_mean=True)
        y = coupling.solve(chi, w)
        assert (coupling.apply(chi, y) - w).norm() / w.norm() < 1e-9
        yk = coupling.solve_krylov(chi, w)
        assert (yk - y).norm() / y.norm() < 1e-8


def test_closed_pstar_matches_generic_and_is_idempotent():
    system, grid, schema, chi = make()
    coupling = system.couplings["neutrality"]
    pstar = dirac_projector(coupling, chi)
    closed = system.closed_forms["pstar"]
    for i in range(3):
        a = random_state(schema, (92, i), band=2, vband=2)
        got, want = closed(chi, a), pstar.apply(a)
        assert (got - want).norm() / want.norm() < 1e-9
        twice = closed(chi, got)
        assert (twice - got).norm() / got.norm() < 1e-9


def test_dirac_output_is_neutral():
    system, grid, schema, chi = make()
    cs = system.constraints["neutrality"]
    for i in range(3):
        a = random_state(schema, (93, i), band=2, vband=2)
        out = system.brackets["dirac"].apply(chi, a)
        assert cs.qhat(out).norm() / out.norm() < 1e-9


def test_constraint_casimirs():
    system, grid, schema, chi = make()
    probes = [random_state(schema, (94, i), band=2, vband=2) for i in range(5)]
    for fam_name in ("neutrality", "flux"):
        fam = system.casimirs[fam_name]
        res = max(casimir_residual(system.brackets["dirac"], chi,
                                   fam.build(s), probes) for s in (0, 1))
        assert res < 1e-9


def test_bracket_is_state_independent():
    system, grid, schema, chi = make()
    other = random_state(schema, 95, band=2, vband=2)
    a = random_state(schema, 96, band=2, vband=2)
    drift = system.brackets["drift"]
    assert (drift.apply(chi, a) - drift.apply(other, a)).norm() == 0.0
    assert drift.state_derivative(chi, a, a).norm() == 0.0
