"""
Tests for the wedge-product convolution of translation-invariant forms
"""
import pytest

from src.forms.wedge_convolution import (
    _honest_terms, wedge_convolve, honest_wedge, star_one, star_one_inverse,
)
from src.forms.bigraded import BigradedForm
from src.forms.convolution import unit_form
from src.forms.generators import FormGenerator
from src.errors import DegreeError, InputError, SpecMismatchError


def test_star_one_round_trip(abelian3, rng):
    gen = FormGenerator(rng)
    for p in range(6):
        terms = _honest_terms(gen.bigraded(abelian3, p))
        assert star_one_inverse(star_one(terms, 3), 3) == terms


def test_honest_wedge_sign():
    one = {((1,), ()): 1}
    other = {((2,), ()): 1}
    assert honest_wedge(one, other, 3) == {((1, 2), ()): 1}
    assert honest_wedge(other, one, 3) == {((1, 2), ()): -1}


def test_unit_form_is_neutral(abelian3, rng):
    gen = FormGenerator(rng)
    unit = unit_form(abelian3)
    for p in range(3, 6):
        zeta = gen.bigraded(abelian3, p)
        assert wedge_convolve(unit, zeta) == zeta
        assert wedge_convolve(zeta, unit) == zeta
    print("✓ Unit form is neutral for the wedge-product convolution")


def test_rejects_non_abelian_spec(so3):
    with pytest.raises(InputError):
        wedge_convolve(unit_form(so3), unit_form(so3))


def test_rejects_mismatched_and_out_of_range(abelian2, abelian3):
    with pytest.raises(SpecMismatchError):
        wedge_convolve(unit_form(abelian2), unit_form(abelian3))
    with pytest.raises(DegreeError):
        wedge_convolve(BigradedForm.zero(abelian3, 1), BigradedForm.zero(abelian3, 1))
