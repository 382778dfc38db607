"""Tests for the kinetic-electromagnetic system and its electrostatic reduction."""
import numpy as np
import pytest

from bracketlab.brackets import antisymmetry_residual, casimir_residual
from bracketlab.calculus import (
    curl, div, grad, inv_lap, mean_part, solenoidal_part, v_grad, v_integrate,
    x_grad,
)
from bracketlab.fields import pairing, random_state
from bracketlab.grids import Grid
from bracketlab.reduction import dirac_projector
from bracketlab.systems import get_system
from bracketlab.systems.vlasov import VMBracket


def phases(arr, grid):
    return arr.reshape(arr.shape + (1,) * grid.ndim_v)


def make_vm(seed=3):
    system = get_system("vlasov-maxwell")
    chi = random_state(system.schema, seed, band=1, vband=1)
    return system, system.grid, system.schema, chi


def make_vp(seed=3):
    system = get_system("vlasov-poisson")
    chi = random_state(system.schema, seed, band=1, vband=1)
    return system, system.grid, system.schema, chi


def test_vm_wiring_and_validation():
    system, grid, schema, _ = make_vm()
    assert system.default_bracket == "projected"
    assert set(system.brackets) == {"tainted", "projected", "parent"}
    with pytest.raises(ValueError):
        VMBracket("bogus", schema)
    with pytest.raises(ValueError):
        VMBracket("projected", schema, parent_op="identity")
    with pytest.raises(ValueError):
        get_system("vlasov-maxwell", grid=Grid.spatial(8))


def test_hamiltonian_flow_has_lorentz_force_form():
    # Assemble the flow directly from the force law and field equations,
    # using the same discrete derivatives but none of the bracket plumbing.
    system, grid, schema, chi = make_vm()
    f, E, B = chi["f"], chi["E"], chi["B"]
    dh = system.hamiltonian.derivative(chi)
    flow = system.brackets["tainted"].apply(chi, dh)

    vspec = v_grad(grid, dh["f"])  # velocity coordinate, as the grid sees it
    force = phases(E, grid) + np.cross(vspec, phases(B, grid), axis=0)
    gvf = v_grad(grid, f)
    oracle_f = (-np.einsum("i...,i...->...", x_grad(grid, f), vspec)
                - np.einsum("i...,i...->...", force, gvf))
    oracle_E = (-np.stack([v_integrate(grid, f * vspec[k]) for k in range(3)])
                + curl(grid, B))
    oracle_B = -curl(grid, E)

    assert np.max(np.abs(flow["f"] - oracle_f)) < 1e-12 * np.max(np.abs(oracle_f))
    assert np.max(np.abs(flow["E"] - oracle_E)) < 1e-12
    assert np.max(np.abs(flow["B"] - oracle_B)) < 1e-12


def test_vm_variants_agree_on_solenoidal_b():
    system, grid, schema, chi = make_vm()
    chi["B"] = solenoidal_part(grid, chi["B"])
    for i in range(3):
        a = random_state(schema, (71, i), band=1, vband=1)
        lhs = system.brackets["tainted"].apply(chi, a)
        rhs = system.brackets["projected"].apply(chi, a)
        assert (lhs - rhs).norm() / rhs.norm() < 1e-12


def test_parent_coupling_terms_are_explicit():
    # The enclosing bracket differs from the projected one by a single
    # gradient-coupling exchange between the two field kernels.
    system, grid, schema, chi = make_vm()
    parent = system.brackets["parent"]
    projected = system.brackets["projected"]
    for i in range(3):
        a = random_state(schema, (72, i), band=1, vband=1)
        diff = parent.apply(chi, a) - projected.apply(chi, a)
        expect = schema.zeros()
        expect["E"] = grad(grid, inv_lap(grid, div(grid, a["B"])))
        expect["B"] = -grad(grid, inv_lap(grid, div(grid, a["E"])))
        assert (diff - expect).norm() / expect.norm() < 1e-12
        assert np.max(np.abs(diff["f"])) == 0.0


def test_parent_antisymmetry_for_both_multipliers():
    system, grid, schema, chi = make_vm()
    for op_name in ("inv_lap", "inv_sqrt_neg_lap"):
        op = VMBracket("projected", schema, parent_op=op_name)
        for i in range(2):
            a = random_state(schema, (73, i), band=1, vband=1)
            b = random_state(schema, (74, i), band=1, vband=1)
            assert antisymmetry_residual(op, chi, a, b) < 1e-10


def test_vm_constraint_casimirs():
    system, grid, schema, chi = make_vm()
    probes = [random_state(schema, (75, i), band=1, vband=1) for i in range(5)]
    for fam_name in ("gauss", "div_b"):
        fam = system.casimirs[fam_name]
        for op_name in fam.brackets:
            res = max(casimir_residual(system.brackets[op_name], chi,
                                       fam.build(s), probes) for s in (0, 1))
            assert res < 1e-9


def solenoidal_probe(cschema, seed):
    # Curl output is divergence-free and mean-free, which is exactly the
    # sector where the field-exchange saddle operator is invertible.
    grid = cschema.grid
    w = random_state(cschema, seed, band=2)
    for slot in ("curl_e", "b_dev"):
        w[slot] = curl(grid, w[slot])
    return w


def test_vp_closed_inverse_roundtrip():
    system, grid, schema, chi = make_vp()
    coupling = system.couplings["electrostatic"]
    cschema = coupling.constraints.constraint_schema
    for i in range(3):
        w = solenoidal_probe(cschema, (81, i))
        y = coupling.solve(chi, w)
        assert (coupling.apply(chi, y) - w).norm() / w.norm() < 1e-10
        back = coupling.solve(chi, coupling.apply(chi, w))
        assert (back - w).norm() / w.norm() < 1e-10


def test_vp_composite_inverse_solves_the_saddle_equation():
    # One forward apply checks the closed composite against the generic
    # saddle operator without paying for an iterative solve.
    system, grid, schema, chi = make_vp()
    coupling = system.couplings["electrostatic"]
    t = random_state(schema, 82, band=1, vband=1)
    y = coupling.solve_qhat_image(chi, t)
    w = coupling.constraints.qhat(t)
    w["curl_e"] = w["curl_e"] - mean_part(grid, w["curl_e"])
    w["b_dev"] = solenoidal_part(grid, w["b_dev"])
    w["b_dev"] = w["b_dev"] - mean_part(grid, w["b_dev"])
    assert (coupling.apply(chi, y) - w).norm() / w.norm() < 1e-10


def test_vp_closed_pstar_matches_generic():
    system, grid, schema, chi = make_vp()
    coupling = system.couplings["electrostatic"]
    pstar = dirac_projector(coupling, chi)
    closed = system.closed_forms["pstar"]
    for i in range(3):
        a = random_state(schema, (83, i), band=1, vband=1)
        got, want = closed(chi, a), pstar.apply(a)
        assert (got - want).norm() / want.norm() < 1e-10


def test_vp_closed_bracket_and_reduced_value():
    system, grid, schema, chi = make_vp()
    dirac = system.brackets["dirac"]
    closed = system.brackets["dirac_closed"]
    value = system.closed_forms["reduced_value"]
    for i in range(3):
        a = random_state(schema, (84, i), band=1, vband=1)
        b = random_state(schema, (85, i), band=1, vband=1)
        want = dirac.apply(chi, a)
        assert (closed.apply(chi, a) - want).norm() / want.norm() < 1e-10
        assert abs(value(chi, b, a) - pairing(b, want)) < 1e-9 * b.norm() * want.norm()


def test_vp_bracket_output_is_electrostatic():
    system, grid, schema, chi = make_vp()
    for name in ("dirac", "dirac_closed"):
        out = system.brackets[name].apply(chi, random_state(schema, 86, band=1,
                                                            vband=1))
        assert np.max(np.abs(curl(grid, out["E"]))) < 1e-11
        assert np.max(np.abs(out["B"])) < 1e-11


def test_vp_constraint_casimirs():
    system, grid, schema, chi = make_vp()
    probes = [random_state(schema, (87, i), band=1, vband=1) for i in range(5)]
    for fam_name in ("b_dev", "curl_e"):
        fam = system.casimirs[fam_name]
        for op_name in fam.brackets:
            res = max(casimir_residual(system.brackets[op_name], chi,
                                       fam.build(s), probes) for s in (0, 1))
            assert res < 1e-9
