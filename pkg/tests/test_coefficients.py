"""
Tests for homogeneous sphere coefficients
"""
from fractions import Fraction

import pytest

from src.algebra.scalar import Scalar
from src.forms.coefficients import SphereCoefficient, sphere_moment
from src.errors import InputError


@pytest.mark.parametrize("alpha,expected", [
    ((0, 0), Scalar.pi(1, 2)),
    ((0, 0, 0), Scalar.pi(1, 4)),
    ((2, 0, 0), Scalar.pi(1, Fraction(4, 3))),
    ((0, 0, 0, 0), Scalar.pi(2, 2)),
    ((1, 0), Scalar.zero()),
    ((2, 2), Scalar.pi(1, Fraction(1, 4))),
])
def test_sphere_moments(alpha, expected):
    assert sphere_moment(alpha) == expected


def test_normal_form_reduces_last_coordinate():
    """Test xi_3**2 is rewritten as 1 - xi_1**2 - xi_2**2"""
    x3 = SphereCoefficient.coordinate(3, 3, weight=0)
    reduced = SphereCoefficient(3, 0, {(0, 0, 0, 0): 1, (2, 0, 0, 0): -1, (0, 2, 0, 0): -1})
    assert x3 * x3 == reduced
    squares = SphereCoefficient.zero(3, 0)
    for i in (1, 2, 3):
        xi = SphereCoefficient.coordinate(3, i, weight=0)
        squares = squares + xi * xi
    assert squares == SphereCoefficient.constant(3)
    print("✓ Sum of squares reduces to 1 on the sphere")


def test_derivatives():
    x1 = SphereCoefficient.coordinate(3, 1)
    assert x1.derivative(1) == SphereCoefficient.constant(3)
    assert x1.derivative(2).is_zero()
    r = SphereCoefficient.constant(3, weight=1)
    assert r.derivative(1) == SphereCoefficient.coordinate(3, 1, weight=0)
    print("✓ d r / d xi_1 = xi_1 / r")


def test_integration_and_constants():
    c = SphereCoefficient.constant(3, Scalar.pi())
    assert c.is_constant()
    assert c.constant_value() == Scalar.pi()
    assert c.integrate() == Scalar.pi(2, 4)
    x1 = SphereCoefficient.coordinate(3, 1, weight=0)
    assert x1.integrate() == 0
    with pytest.raises(InputError):
        x1.constant_value()


def test_weights_must_match_for_addition():
    a = SphereCoefficient.constant(2, 1, weight=0)
    b = SphereCoefficient.constant(2, 1, weight=-1)
    with pytest.raises(InputError):
        a + b
    assert SphereCoefficient.zero(2, 0) == SphereCoefficient.zero(2, -3)
    assert a + SphereCoefficient.zero(2, -1) == a


def test_polynomial_view():
    c = SphereCoefficient.coordinate(3, 1, weight=0, coeff=Scalar.pi(1, 2))
    assert c.polynomial() == {(1, 0, 0): Scalar.pi(1, 2)}
    assert c.rational_terms() == {((1, 0, 0), 1): Fraction(2)}
    assert c.degree() == 1
    assert c.scale(Scalar.pi(-1)) == SphereCoefficient.coordinate(3, 1, weight=0, coeff=2)
    with pytest.raises(InputError):
        SphereCoefficient.from_scalar(3, 1, 0, alpha=(1, 0))
