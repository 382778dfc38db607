import numpy as np

from bracketlab import Grid, Schema, Slot
from bracketlab.calculus import lap
from bracketlab.fields import integrate, pairing, random_state
from bracketlab.functionals import (BlackBoxFunctional, LinearFunctional,
                                    QuadraticFunctional, directional_residual)


def small_schema():
    return Schema(Grid.spatial((8, 8)), (Slot("phi", "scalar"),))


def test_linear_functional_value_and_derivative():
    schema = small_schema()
    kern = random_state(schema, 1)
    func = LinearFunctional(kern, offset=0.5)
    chi = random_state(schema, 2)
    assert np.isclose(func.value(chi), pairing(kern, chi) + 0.5)
    assert np.isclose(pairing(func.derivative(chi), chi), pairing(kern, chi))
    # exactly linear: directional residual at roundoff for any eps
    delta = random_state(schema, 3)
    assert directional_residual(func, chi, delta, 1e-2) < 1e-12


def test_quadratic_functional_derivative():
    schema = small_schema()
    grid = schema.grid

    def apply_K(chi):
        out = schema.zeros()
        out["phi"] = -lap(grid, chi["phi"])
        return out

    func = QuadraticFunctional(schema, apply_K, name="dirichlet")
    chi = random_state(schema, 4)
    # value = 1/2 <chi, K chi>
    assert np.isclose(func.value(chi), 0.5 * pairing(chi, apply_K(chi)))
    d = func.derivative(chi)
    assert np.isclose(pairing(d, chi), 2.0 * func.value(chi))
    delta = random_state(schema, 5)
    assert directional_residual(func, chi, delta, 1e-3) < 1e-9


def test_blackbox_matches_analytic_gradient():
    schema = small_schema()
    grid = schema.grid

    def evaluator(chi):
        return 0.5 * integrate(grid, chi["phi"] ** 2)

    func = BlackBoxFunctional(schema, evaluator, name="half-l2")
    chi = random_state(schema, 6)
    d = func.derivative(chi)
    np.testing.assert_allclose(d["phi"], chi["phi"], atol=1e-8)


def test_directional_residual_quadratic_scaling():
    # a quartic functional has an O(eps^2) central-difference defect
    schema = small_schema()
    grid = schema.grid

    def evaluator(chi):
        return integrate(grid, chi["phi"] ** 4)

    func = BlackBoxFunctional(schema, evaluator, fd_step=1e-6)
    chi = random_state(schema, 7)
    delta = random_state(schema, 8)
    r1 = directional_residual(func, chi, delta, 2e-2)
    r2 = directional_residual(func, chi, delta, 1e-2)
    assert 3.0 < r1 / r2 < 5.0
