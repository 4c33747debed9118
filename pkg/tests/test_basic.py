"""
Tests for basic forms: exterior calculus on the sphere of rays
"""
import pytest

from src.algebra.exterior import DUAL, PRIMAL
from src.algebra.lie import coadjoint_field
from src.algebra.scalar import Scalar
from src.forms.basic import SCALAR, BasicForm, euler_volume_form, sphere_integrate
from src.forms.coefficients import SphereCoefficient
from src.forms.generators import FormGenerator, normalized_coordinates
from src.errors import DegreeError, InputError


def _xi_over_r(n, i, space=SCALAR, value=()):
    return BasicForm.function(SphereCoefficient.coordinate(n, i, weight=0), space, value)


@pytest.mark.parametrize("n,area", [(2, Scalar.pi(1, 2)), (3, Scalar.pi(1, 4)), (4, Scalar.pi(2, 2))])
def test_volume_form_integrates_to_area(n, area):
    vol = euler_volume_form(n)
    assert vol.is_basic()
    assert sphere_integrate(vol) == area
    print(f"✓ |S^{n - 1}| = {area}")


def test_d_squared_vanishes(rng):
    gen = FormGenerator(rng, max_deg=2)
    for n in (2, 3, 4):
        for k in range(n - 1):
            omega = gen.basic_form(n, k, PRIMAL, 1)
            assert omega.d().d().is_zero()


def test_d_of_weight_zero_function_is_basic():
    df = _xi_over_r(3, 1).d()
    assert df.degree == 1
    assert df.is_basic()
    assert df.contract_euler().is_zero()


def test_stokes_on_the_sphere(rng):
    gen = FormGenerator(rng, max_deg=2)
    for n in (2, 3, 4):
        omega = gen.basic_form(n, n - 2, SCALAR, 0)
        assert sphere_integrate(omega.d()) == 0
    print("✓ Exact top forms integrate to zero")


def test_wedge_signs():
    one = SphereCoefficient.constant(2, weight=-1)
    a = BasicForm(2, 1, PRIMAL, {((1,), (2,)): one})
    b = BasicForm(2, 1, PRIMAL, {((2,), (1,)): one})
    product = a.wedge(b)
    assert product.terms == {((1, 2), (1, 2)): -(one * one)}
    assert a.wedge(a).is_zero()
    with pytest.raises(InputError):
        a.wedge(b.with_space(DUAL))


def test_projection_makes_forms_horizontal():
    raw = BasicForm(3, 1, SCALAR, {((1,), ()): SphereCoefficient.coordinate(3, 2, weight=-1)})
    assert not raw.is_basic()
    projected = raw.basic_projection()
    assert projected.is_basic()
    assert projected.basic_projection() == projected


def test_lie_derivative_of_coordinate(so3):
    """Test L_{e3#} (xi_1 / r) = -xi_2 / r for the rotation field e3 x xi"""
    f = _xi_over_r(3, 1)
    field = coadjoint_field(so3, 3)
    expected = BasicForm.function(SphereCoefficient.coordinate(3, 2, weight=0, coeff=-1))
    assert f.lie_derivative(field) == expected


def test_lie_derivative_of_rotation_invariant_form(so3):
    vol = euler_volume_form(3)
    for i in (1, 2, 3):
        assert vol.lie_derivative(coadjoint_field(so3, i)).is_zero()


def test_value_operations():
    xi = normalized_coordinates(3)
    assert xi.value_grades() == [1]
    assert xi.wedge_xi_values().is_zero()
    contracted = xi.contract_xi_values()
    assert contracted == BasicForm.function(SphereCoefficient.constant(3, weight=1), PRIMAL)


def test_integration_needs_top_degree():
    with pytest.raises(DegreeError):
        _xi_over_r(3, 1).integrate_values()
    with pytest.raises(DegreeError):
        BasicForm(3, 1, SCALAR, {((1, 2), ()): SphereCoefficient.constant(3, weight=-1)})


def test_vector_valued_integration():
    vol = euler_volume_form(3, PRIMAL, (1,))
    assert vol.integrate_values() == {(1,): Scalar.pi(1, 4)}
    with pytest.raises(InputError):
        sphere_integrate(vol)
