"""
Tests for the primitive solver
"""
import pytest

from src.algebra.exterior import DUAL, PRIMAL
from src.forms.basic import euler_volume_form
from src.forms.bigraded import BigradedForm, d_total
from src.forms.convolution import unit_form
from src.forms.generators import FormGenerator
from src.valuations.primitive import (
    ansatz_element, check_preconditions, find_primitive, reduced_exponents,
)
from src.valuations.valuation import push_forward
from src.errors import DegreeError, PreconditionError


def _without_constant(tau):
    constant = {0: tau.components[0]} if 0 in tau.components else {}
    return tau - BigradedForm(tau.spec, tau.n, DUAL, constant)


def test_reduced_exponents():
    assert reduced_exponents(2, 1) == [(0, 0), (0, 1), (1, 0)]
    assert all(alpha[-1] <= 1 and sum(alpha) <= 2 for alpha in reduced_exponents(3, 2))


def test_ansatz_elements_are_basic():
    for alpha in reduced_exponents(3, 1):
        for J in ((1, 2), (1, 3), (2, 3)):
            assert ansatz_element(3, 1, alpha, J, (1,)).is_basic()


def test_unit_form_has_zero_primitive(so3):
    pair = find_primitive(unit_form(so3))
    assert pair.omega.is_zero()
    assert pair.residual.is_zero()


@pytest.mark.parametrize("fixture", ["so3", "h3", "abelian3", "abelian2"])
def test_primitive_of_closed_form(fixture, request, rng):
    spec = request.getfixturevalue(fixture)
    tau = FormGenerator(rng).closed_form(spec)
    pair = find_primitive(tau)
    assert d_total(pair.omega) == _without_constant(tau)
    assert not push_forward(pair.omega)
    print(f"✓ Primitive found on {spec.name}")


@pytest.mark.parametrize("fixture", ["so3", "h3"])
def test_gauge_choice_does_not_change_d(fixture, request, distinct_gauge_inputs):
    spec = request.getfixturevalue(fixture)
    inputs = distinct_gauge_inputs(spec, range(10))
    assert inputs, "solver gauges never differed"
    for tau, first, second in inputs:
        assert first != second
        assert d_total(first) == d_total(second) == _without_constant(tau)
        assert not push_forward(first) and not push_forward(second)
    print(f"✓ {len(inputs)} distinct gauges agree after d on {spec.name}")


def test_preconditions(so3, abelian3, rng):
    with pytest.raises(DegreeError):
        check_preconditions(BigradedForm.zero(so3, 4))
    with pytest.raises(PreconditionError):
        find_primitive(FormGenerator(rng).bigraded(so3, 3))
    top = euler_volume_form(3, PRIMAL, (1, 2))
    with pytest.raises(PreconditionError):
        find_primitive(BigradedForm(abelian3, 3, PRIMAL, {2: top}))
