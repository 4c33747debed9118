"""
Basic forms on g* minus the origin: the model of forms on the sphere of rays.

A BasicForm of sphere degree k is a sum of terms coeff * d xi_I (x) v_V, keyed
by (I, V) with |I| = k. Values live in Lambda g (primal), Lambda g* (dual),
or are scalar (V is always the empty set). Every coefficient has weight -k,
so the total scaling weight is zero, and contraction with the Euler field
vanishes.
"""
import logging
from fractions import Fraction

from src.algebra.exterior import DUAL, PRIMAL, perm_sign, wedge_blades
from src.algebra.scalar import Scalar
from src.forms.coefficients import SphereCoefficient
from src.errors import DegreeError, InputError

logger = logging.getLogger(__name__)

SCALAR = "scalar"
FORM_SPACES = (PRIMAL, DUAL, SCALAR)


def _add_into(target, key, coeff):
    current = target.get(key)
    value = coeff if current is None else current + coeff
    if value:
        target[key] = value
    else:
        target.pop(key, None)


class BasicForm:
    __slots__ = ("n", "degree", "space", "terms")

    def __init__(self, n, degree, space, terms=None):
        if space not in FORM_SPACES:
            raise InputError(f"unknown value space {space!r}")
        if not 0 <= degree <= n:
            raise DegreeError(f"sphere degree {degree} out of range for n={n}")
        self.n = n
        self.degree = degree
        self.space = space
        self.terms = {}
        for (I, V), coeff in (terms or {}).items():
            if len(I) != degree:
                raise DegreeError(f"term d xi_{I} does not have degree {degree}")
            if space == SCALAR and V:
                raise InputError("scalar-valued forms carry no value blade")
            if coeff:
                _add_into(self.terms, (tuple(I), tuple(V)), coeff)

    @classmethod
    def _raw(cls, n, degree, space, terms):
        obj = cls.__new__(cls)
        obj.n, obj.degree, obj.space, obj.terms = n, degree, space, terms
        return obj

    @classmethod
    def zero(cls, n, degree, space):
        return cls(n, degree, space)

    @classmethod
    def function(cls, coeff, space=SCALAR, value=()):
        """A 0-form coeff (x) v_value"""
        return cls(coeff.n, 0, space, {((), tuple(value)): coeff})

    # queries

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def value_grades(self):
        return sorted({len(V) for (_, V) in self.terms})

    def coefficient_degree(self):
        return max((c.degree() for c in self.terms.values()), default=0)

    def check_invariants(self):
        """Raise if a coefficient has the wrong weight or the form is not horizontal"""
        for key, c in self.terms.items():
            if c.weight != -self.degree:
                raise InputError(f"term {key} has weight {c.weight}, expected {-self.degree}")
        if not self.contract_euler().is_zero():
            raise InputError("form is not horizontal (iota_E does not vanish)")
        return True

    def is_basic(self):
        try:
            return self.check_invariants()
        except InputError:
            return False

    # linear structure

    def _check(self, other):
        if (self.n, self.degree) != (other.n, other.degree):
            raise DegreeError(
                f"cannot combine (n={self.n}, k={self.degree}) with (n={other.n}, k={other.degree})")
        if self.space != other.space and self.terms and other.terms:
            raise InputError(f"value spaces differ: {self.space} vs {other.space}")

    def __add__(self, other):
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for key, c in other.terms.items():
            _add_into(out, key, c)
        return BasicForm._raw(self.n, self.degree, self.space, out)

    def __neg__(self):
        return BasicForm._raw(self.n, self.degree, self.space,
                              {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        if isinstance(factor, SphereCoefficient):
            raise InputError("use multiply_function for function factors")
        out = {}
        for key, c in self.terms.items():
            v = c.scale(factor)
            if v:
                out[key] = v
        return BasicForm._raw(self.n, self.degree, self.space, out)

    def __rmul__(self, factor):
        return self.scale(factor)

    def multiply_function(self, f):
        """Pointwise product with a weight-0 function (or any coefficient)"""
        out = {}
        for key, c in self.terms.items():
            _add_into(out, key, c * f)
        return BasicForm._raw(self.n, self.degree, self.space, out)

    def with_space(self, space):
        return BasicForm(self.n, self.degree, space, self.terms)

    def __eq__(self, other):
        if not isinstance(other, BasicForm):
            return NotImplemented
        if (self.n, self.degree) != (other.n, other.degree):
            return False
        if self.terms and other.terms and self.space != other.space:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"BasicForm(k={self.degree}, 0)"
        parts = [f"{c} dxi{''.join(map(str, I))} (x) {self.space}{''.join(map(str, V))}"
                 for (I, V), c in sorted(self.terms.items(), key=lambda kv: kv[0])]
        return f"BasicForm(k={self.degree}, " + " + ".join(parts) + ")"

    # exterior calculus in the sphere slot

    def wedge(self, other):
        """(a (x) X) ^ (b (x) Y) = (a ^ b) (x) (X ^ Y)"""
        if self.n != other.n:
            raise InputError(f"dimension mismatch {self.n} vs {other.n}")
        if SCALAR in (self.space, other.space):
            space = other.space if self.space == SCALAR else self.space
        elif self.space != other.space:
            raise InputError(f"cannot wedge {self.space} and {other.space} values")
        else:
            space = self.space
        degree = self.degree + other.degree
        if degree > self.n:
            return BasicForm.zero(self.n, min(degree, self.n), space)
        out = {}
        for (I1, V1), c1 in self.terms.items():
            for (I2, V2), c2 in other.terms.items():
                s_form, I = wedge_blades(I1, I2)
                if not s_form:
                    continue
                s_value, V = wedge_blades(V1, V2)
                if not s_value:
                    continue
                product = c1 * c2
                _add_into(out, (I, V), product if s_form * s_value > 0 else -product)
        return BasicForm._raw(self.n, degree, space, out)

    def d(self):
        """Exterior derivative in the xi-variables"""
        if self.degree >= self.n:
            return BasicForm.zero(self.n, self.n, self.space)
        out = {}
        for (I, V), c in self.terms.items():
            for i in range(1, self.n + 1):
                sign, J = wedge_blades((i,), I)
                if not sign:
                    continue
                dc = c.derivative(i)
                if dc:
                    _add_into(out, (J, V), dc if sign > 0 else -dc)
        return BasicForm._raw(self.n, self.degree + 1, self.space, out)

    def _contract(self, component):
        """Interior product with the field whose j-th component is component(j)"""
        if self.degree == 0:
            return BasicForm.zero(self.n, 0, self.space)
        out = {}
        for (I, V), c in self.terms.items():
            for pos, j in enumerate(I):
                field = component(j)
                if not field:
                    continue
                rest = I[:pos] + I[pos + 1:]
                value = c * field
                _add_into(out, (rest, V), -value if pos % 2 else value)
        return BasicForm._raw(self.n, self.degree - 1, self.space, out)

    def contract_field(self, field):
        """iota_V for the linear field V(xi) = A xi"""
        rows = [SphereCoefficient.linear(self.n, row) for row in field.rows]
        return self._contract(lambda j: rows[j - 1])

    def contract_euler(self):
        coords = [SphereCoefficient.coordinate(self.n, j) for j in range(1, self.n + 1)]
        return self._contract(lambda j: coords[j - 1])

    def lie_derivative(self, field):
        """Cartan's formula iota d + d iota"""
        result = self.d().contract_field(field)
        if self.degree:
            result = result + self.contract_field(field).d()
        return result

    # value slot

    def map_values(self, table, space=None):
        """Apply a linear map on value blades; table(V) -> {V': rational}"""
        space = space or self.space
        out = {}
        for (I, V), c in self.terms.items():
            for W, q in table(V).items():
                _add_into(out, (I, W), c.scale(q))
        return BasicForm._raw(self.n, self.degree, space, out)

    def wedge_xi_values(self):
        """Multiply each value by xi = sum xi_i e*_i (or e_i) from the left"""
        coords = [SphereCoefficient.coordinate(self.n, i) for i in range(1, self.n + 1)]
        out = {}
        for (I, V), c in self.terms.items():
            for i in range(1, self.n + 1):
                sign, W = wedge_blades((i,), V)
                if sign:
                    value = c * coords[i - 1]
                    _add_into(out, (I, W), value if sign > 0 else -value)
        return BasicForm._raw(self.n, self.degree, self.space, out)

    def contract_xi_values(self):
        """iota_xi on primal values, with xi = sum xi_i e*_i"""
        coords = [SphereCoefficient.coordinate(self.n, i) for i in range(1, self.n + 1)]
        out = {}
        for (I, V), c in self.terms.items():
            for pos, i in enumerate(V):
                value = c * coords[i - 1]
                W = V[:pos] + V[pos + 1:]
                _add_into(out, (I, W), -value if pos % 2 else value)
        return BasicForm._raw(self.n, self.degree, self.space, out)

    # integration

    def _density(self):
        """f with dr ^ omega = f dxi_1 ^ ... ^ dxi_n on the unit sphere, per value blade"""
        if self.degree != self.n - 1:
            raise DegreeError(f"integration needs sphere degree {self.n - 1}, got {self.degree}")
        full = tuple(range(1, self.n + 1))
        density = {}
        for (I, V), c in self.terms.items():
            (i,) = tuple(j for j in full if j not in I)
            sign = perm_sign((i,), I)
            f = c * SphereCoefficient.coordinate(self.n, i, weight=0)
            f = f if sign > 0 else -f
            density[V] = density[V] + f.rescale_weight(density[V].weight) if V in density else f
        return density

    def integrate_values(self):
        """Integral over the unit sphere, oriented as the boundary of the ball, per value blade"""
        out = {}
        for V, f in self._density().items():
            value = f.integrate()
            if value:
                out[V] = value
        return out

    def basic_projection(self):
        """P(omega) = omega - theta ^ iota_E omega with theta = sum xi_i dxi_i / r**2"""
        if self.degree == 0:
            return self
        theta = BasicForm(self.n, 1, SCALAR, {
            ((i,), ()): SphereCoefficient.coordinate(self.n, i, weight=-1)
            for i in range(1, self.n + 1)})
        return self - theta.wedge(self.contract_euler())


def sphere_integrate(omega):
    """Integral of a scalar-valued top-degree basic form over S^{n-1}"""
    if omega.space != SCALAR and omega.terms:
        raise InputError("sphere_integrate expects a scalar-valued form; use integrate_values")
    return omega.integrate_values().get((), Scalar.zero())


def euler_volume_form(n, space=SCALAR, value=()):
    """vol_{S^{n-1}} = iota_E(dxi_1 ^ ... ^ dxi_n) / r**n (x) v_value"""
    full = tuple(range(1, n + 1))
    terms = {}
    for pos, i in enumerate(full):
        rest = full[:pos] + full[pos + 1:]
        coeff = SphereCoefficient.coordinate(n, i, weight=1 - n, coeff=Fraction(-1 if pos % 2 else 1))
        terms[(rest, tuple(value))] = coeff
    return BasicForm(n, n - 1, space, terms)
