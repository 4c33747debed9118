"""
Tests for invariant valuations and their convolution
"""
import numpy as np
import pytest

from src.algebra.exterior import DUAL
from src.algebra.scalar import Scalar
from src.forms.basic import BasicForm
from src.forms.bigraded import BigradedForm
from src.forms.coefficients import SphereCoefficient
from src.forms.generators import FormGenerator
from src.valuations.valuation import (
    InvariantValuation, convolve_valuations, euler_characteristic, euler_primitive, haar,
    intrinsic_family, mu_of, push_forward, require_valid, so3_invariant_family, validate,
    zero_valuation,
)
from src.errors import DegreeError, InvalidValuationError, SpecMismatchError


@pytest.fixture
def phi(so3):
    return so3_invariant_family(so3, 2, 1, Scalar.pi(-1), 3)


@pytest.fixture
def psi(so3):
    return so3_invariant_family(so3, Scalar.pi(1), -1, 2, Scalar.pi(-1, 2))


def test_constructor_checks_degree(so3):
    with pytest.raises(DegreeError):
        InvariantValuation(1, BigradedForm.zero(so3, 2))
    v = InvariantValuation(2, BigradedForm.zero(so3, 3))
    assert v.c == Scalar.coerce(2)


def test_linear_structure(phi, psi, h3):
    total = phi + psi
    assert total.c == phi.c + psi.c
    assert (total - psi) == phi
    assert (-phi).scale(-1) == phi
    with pytest.raises(SpecMismatchError):
        phi + haar(h3)


@pytest.mark.parametrize("fixture", ["so3", "abelian2", "abelian3", "h3"])
def test_standard_valuations_are_valid(fixture, request):
    spec = request.getfixturevalue(fixture)
    for v in (haar(spec), euler_characteristic(spec), zero_valuation(spec)):
        assert validate(v).passed
    assert mu_of(haar(spec)) == Scalar.one()
    assert mu_of(euler_characteristic(spec)) == Scalar.zero()


@pytest.mark.parametrize("fixture", ["so3", "abelian2", "abelian3"])
def test_euler_primitive_pushes_forward_to_one(fixture, request):
    spec = request.getfixturevalue(fixture)
    assert push_forward(euler_primitive(spec)) == Scalar.one()


def test_families_are_valid(phi, abelian3):
    assert validate(intrinsic_family(abelian3, [1, Scalar.pi(-1), 2], 5)).passed
    print("✓ Invariant families validate")


def test_invalid_valuation_reported(so3):
    raw = BasicForm(3, 1, DUAL, {((1,), (1, 2)): SphereCoefficient.constant(3, weight=-1)})
    v = InvariantValuation(0, BigradedForm(so3, 3, DUAL, {1: raw.basic_projection()}))
    report = validate(v)
    assert not report.passed
    assert "vertical" in report.failures()
    with pytest.raises(InvalidValuationError):
        require_valid(v)


def test_haar_is_the_unit(phi, so3):
    unit = haar(so3)
    assert convolve_valuations(unit, phi) == phi
    assert convolve_valuations(phi, unit) == phi


def test_euler_characteristic_laws(phi, so3):
    chi = euler_characteristic(so3)
    assert convolve_valuations(phi, chi) == chi.scale(mu_of(phi))
    assert convolve_valuations(chi, phi) == chi.scale(mu_of(phi))
    assert convolve_valuations(chi, chi) == zero_valuation(so3)


def test_mu_is_a_character(phi, psi):
    assert mu_of(convolve_valuations(phi, psi)) == mu_of(phi) * mu_of(psi)


def test_convolution_does_not_depend_on_primitive(phi, so3, distinct_gauge_inputs):
    inputs = distinct_gauge_inputs(so3, range(6))
    assert inputs, "solver gauges never differed"
    for tau, first, second in inputs:
        assert first != second
        psi = InvariantValuation(Scalar.pi(-1, 2), tau)
        assert convolve_valuations(phi, psi) == convolve_valuations(phi, psi, reverse=True)
    print(f"✓ Convolution agrees across {len(inputs)} distinct gauge pairs on so3")


def test_exact_valuations_on_h3(h3, distinct_gauge_inputs):
    phi = InvariantValuation(3, FormGenerator(np.random.default_rng(99)).closed_form(h3))
    inputs = distinct_gauge_inputs(h3, range(6))
    assert inputs, "solver gauges never differed"
    for tau, first, second in inputs:
        assert first != second
        psi = InvariantValuation(-1, tau)
        product = convolve_valuations(phi, psi)
        assert product == convolve_valuations(phi, psi, reverse=True)
        assert mu_of(product) == mu_of(phi) * mu_of(psi)
    unit = haar(h3)
    assert convolve_valuations(unit, phi) == phi == convolve_valuations(phi, unit)


def test_commutative_on_so3(phi, psi):
    assert convolve_valuations(phi, psi) == convolve_valuations(psi, phi)


@pytest.mark.slow
def test_associativity_on_so3(phi, psi, so3):
    kappa = so3_invariant_family(so3, 1, 1, 1, 1)
    left = convolve_valuations(convolve_valuations(phi, psi), kappa)
    right = convolve_valuations(phi, convolve_valuations(psi, kappa))
    assert left == right


def test_abelian_family_convolution(abelian3):
    phi = intrinsic_family(abelian3, [1, 2, 0], 1)
    psi = intrinsic_family(abelian3, [3, 0, 1], 0)
    product = convolve_valuations(phi, psi)
    assert mu_of(product) == Scalar.coerce(3)
    assert product == convolve_valuations(phi, psi, reverse=True)
