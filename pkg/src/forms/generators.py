"""
Seeded generators for random basic and bigraded forms, and the invariant
families used by the valuation layer and the property suites.
"""
import logging
from fractions import Fraction
from math import factorial

import numpy as np

from src.algebra.exterior import DUAL, PRIMAL, blades
from src.algebra.lie import builtin_spec
from src.algebra.scalar import Scalar
from src.config import load_config
from src.forms.basic import SCALAR, BasicForm, euler_volume_form
from src.forms.bigraded import BigradedForm, component_range, d_total, untilde, value_grade
from src.forms.coefficients import SphereCoefficient
from src.errors import InputError

logger = logging.getLogger(__name__)


def make_rng(seed):
    return np.random.default_rng(seed)


def child_seeds(seed, count):
    """Independent per-trial seeds derived from one suite seed"""
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(count)]


class FormGenerator:
    """Random sparse forms with bounded coefficient degree.

    Each component gets `terms` raw monomial terms coeff * xi**alpha dxi_I (x) v_V,
    homogenized to weight -k and then projected to a basic form.
    """

    def __init__(self, rng, max_deg=2, terms=None, max_numerator=None, pi_exponents=None):
        config = load_config()["generator"]
        self.rng = rng
        self.max_deg = max_deg
        self.terms = terms if terms is not None else config["terms_per_component"]
        self.max_numerator = max_numerator or config["max_numerator"]
        self.pi_exponents = list(pi_exponents if pi_exponents is not None
                                 else config["pi_exponents"])

    def _choice(self, items):
        return items[int(self.rng.integers(len(items)))]

    def scalar(self):
        numerator = 0
        while numerator == 0:
            numerator = int(self.rng.integers(-self.max_numerator, self.max_numerator + 1))
        denominator = int(self.rng.integers(1, 3))
        return Scalar.pi(self._choice(self.pi_exponents), Fraction(numerator, denominator))

    def exponent(self, n):
        alpha = [0] * n
        for _ in range(int(self.rng.integers(0, self.max_deg + 1))):
            alpha[int(self.rng.integers(n))] += 1
        return alpha

    def basic_form(self, n, degree, space, grade):
        """Random basic form of sphere degree `degree` with values of grade `grade`"""
        if degree > n - 1:
            return BasicForm.zero(n, min(degree, n), space)
        dxi = blades(n, degree)
        values = [()] if space == SCALAR else blades(n, grade)
        terms = {}
        for _ in range(self.terms):
            coeff = SphereCoefficient.from_scalar(n, self.scalar(), -degree, self.exponent(n))
            key = (self._choice(dxi), self._choice(values))
            terms[key] = terms[key] + coeff if key in terms else coeff
        return BasicForm(n, degree, space, terms).basic_projection()

    def bigraded(self, spec, degree, space=DUAL, max_k=None):
        """Random form of total degree `degree`; components above max_k are left out"""
        n = spec.n
        components = {}
        for k in component_range(n, degree):
            if max_k is not None and k > max_k:
                continue
            components[k] = self.basic_form(n, k, space, value_grade(n, degree, k, space))
        return BigradedForm(spec, degree, space, components)

    def closed_form(self, spec):
        """tau = d_total(omega') + tau_0 for a random (n-1)-form omega'"""
        n = spec.n
        tau = d_total(self.bigraded(spec, n - 1))
        tau0 = BasicForm(n, 0, DUAL, {((), tuple(range(1, n + 1))):
                                      SphereCoefficient.constant(n, self.scalar())})
        return tau + BigradedForm(spec, n, DUAL, {0: tau0})


# invariant building blocks


def normalized_coordinates(n, space=PRIMAL):
    """xi / r (x) e = sum_i xi_i / r (x) e_i"""
    return BasicForm(n, 0, space, {((), (i,)): SphereCoefficient.coordinate(n, i, weight=0)
                                   for i in range(1, n + 1)})


def beta_form(n, space=PRIMAL):
    """sum_i d(xi_i / r) (x) e_i"""
    return normalized_coordinates(n, space).d()


def cross_form():
    """gamma = sum_i (xi x dxi)_i / r**2 (x) e_i on R^3"""
    terms = {}
    for i, j, k, sign in ((1, 2, 3, 1), (1, 3, 2, -1), (2, 3, 1, 1),
                          (2, 1, 3, -1), (3, 1, 2, 1), (3, 2, 1, -1)):
        key = ((k,), (i,))
        coeff = SphereCoefficient.coordinate(3, j, weight=-1, coeff=sign)
        terms[key] = terms[key] + coeff if key in terms else coeff
    return BasicForm(3, 1, PRIMAL, terms)


def hodge_coordinates():
    """*xi / r = (xi_1 e_23 - xi_2 e_13 + xi_3 e_12) / r"""
    return BasicForm(3, 0, PRIMAL, {
        ((), (2, 3)): SphereCoefficient.coordinate(3, 1, weight=0),
        ((), (1, 3)): SphereCoefficient.coordinate(3, 2, weight=0, coeff=-1),
        ((), (1, 2)): SphereCoefficient.coordinate(3, 3, weight=0),
    })


def _hodge_values(form):
    """Apply e_1 -> e_23, e_2 -> -e_13, e_3 -> e_12 to grade-1 values"""
    table = {(1,): {(2, 3): 1}, (2,): {(1, 3): -1}, (3,): {(1, 2): 1}}
    return form.map_values(lambda V: table[V])


def constant_value(n, value, coeff=1):
    return BasicForm(n, 0, PRIMAL, {((), tuple(value)): SphereCoefficient.constant(n, coeff)})


def so3_family_tilde(spec, a, b, b2):
    """Tilde components of a + b beta + b2 (gamma + 2 vol_S (x) *xi / r)"""
    if spec != builtin_spec("so3"):
        raise InputError(f"the rotation-invariant family lives on so3, got {spec.name}")
    a, b, b2 = (Scalar.coerce(x) for x in (a, b, b2))
    components = {
        0: constant_value(3, (), 1).scale(a),
        1: beta_form(3).scale(b) + cross_form().scale(b2),
        2: euler_volume_form(3).wedge(hodge_coordinates()).scale(b2 * 2),
    }
    return BigradedForm(spec, 3, PRIMAL, components)


def so3_family_form(spec, a, b, b2):
    return untilde(so3_family_tilde(spec, a, b, b2))


def intrinsic_tilde(spec, coeffs):
    """sum_k a_k beta**k / k! on an abelian spec; coeffs lists a_0..a_{n-1}"""
    n = spec.n
    if spec.brackets:
        raise InputError(f"intrinsic family needs an abelian spec, got {spec.name}")
    if len(coeffs) > n:
        raise InputError(f"at most {n} coefficients for n={n}")
    beta = beta_form(n)
    power = constant_value(n, ())
    components = {}
    for k, a in enumerate(coeffs):
        if k:
            power = power.wedge(beta)
        components[k] = power.scale(Scalar.coerce(a) * Fraction(1, factorial(k)))
    return BigradedForm(spec, n, PRIMAL, components)


def intrinsic_form(spec, coeffs):
    return untilde(intrinsic_tilde(spec, coeffs))


def so3_invariant_blocks():
    """Rotation-equivariant basic forms on R^3, keyed by (sphere degree, value grade)"""
    vol = euler_volume_form(3)
    coords = normalized_coordinates(3)
    star_coords = hodge_coordinates()
    top = constant_value(3, (1, 2, 3))
    beta = beta_form(3)
    gamma = cross_form()
    return {
        (0, 0): [constant_value(3, ())],
        (0, 1): [coords],
        (0, 2): [star_coords],
        (0, 3): [top],
        (1, 1): [beta, gamma],
        (1, 2): [_hodge_values(beta), _hodge_values(gamma)],
        (2, 0): [vol],
        (2, 1): [vol.wedge(coords)],
        (2, 2): [vol.wedge(star_coords)],
        (2, 3): [vol.wedge(top)],
    }


def so3_invariant_forms(spec, degree, generator):
    """Random combination of the building blocks as a dual-valued form of total degree `degree`"""
    blocks = so3_invariant_blocks()
    components = {}
    for k in component_range(3, degree):
        grade = value_grade(3, degree, k, PRIMAL)
        part = BasicForm.zero(3, k, PRIMAL)
        for block in blocks.get((k, grade), []):
            part = part + block.scale(generator.scalar())
        components[k] = part
    return untilde(BigradedForm(spec, degree, PRIMAL, components))
