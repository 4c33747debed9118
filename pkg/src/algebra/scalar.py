"""
Exact scalars: Laurent polynomials in pi over the rationals
"""
from fractions import Fraction

import sympy

from src.errors import InputError

PI = sympy.Symbol("pi", positive=True)


def to_fraction(value):
    """Coerce int / Fraction / rational string to Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"not a rational string: {value!r}") from e
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    raise InputError(f"not a rational number: {value!r}")


class Scalar:
    """Sum of q_m * pi**m with rational q_m and integer m.

    Immutable. Zero coefficients are never stored, so two scalars are equal
    exactly when their term maps are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for exp, coeff in (terms or {}).items():
            q = to_fraction(coeff)
            if q:
                clean[int(exp)] = clean.get(int(exp), 0) + q
        self._terms = {m: q for m, q in clean.items() if q}
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, value):
        if isinstance(value, Scalar):
            return value
        q = to_fraction(value)
        return cls._raw({0: q} if q else {})

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def one(cls):
        return cls._raw({0: Fraction(1)})

    @classmethod
    def pi(cls, exponent=1, coeff=1):
        q = to_fraction(coeff)
        return cls._raw({int(exponent): q} if q else {})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_rational(self):
        return all(m == 0 for m in self._terms)

    def is_monomial(self):
        return len(self._terms) == 1

    def rational_value(self):
        if not self.is_rational():
            raise InputError(f"{self} is not rational")
        return self._terms.get(0, Fraction(0))

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except InputError:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, q in other._terms.items():
            v = out.get(m, 0) + q
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Scalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw({m: -q for m, q in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except InputError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except InputError:
                return NotImplemented
        if not self._terms or not other._terms:
            return Scalar._raw({})
        out = {}
        for m1, q1 in self._terms.items():
            for m2, q2 in other._terms.items():
                m = m1 + m2
                v = out.get(m, 0) + q1 * q2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Scalar._raw(out)

    __rmul__ = __mul__

    def inverse(self):
        """Inverse of a monomial q*pi**m; other scalars are not units of the ring"""
        if not self.is_monomial():
            raise InputError(f"{self} is not invertible in the Laurent ring")
        (m, q), = self._terms.items()
        return Scalar._raw({-m: 1 / q})

    def __truediv__(self, other):
        return self * Scalar.coerce(other).inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Scalar.one()
        for _ in range(exponent):
            result = result * self
        return result

    # comparison

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self._terms == other._terms
        try:
            return self._terms == Scalar.coerce(other)._terms
        except InputError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # conversions

    def to_json(self):
        return {str(m): str(q) for m, q in self.items()}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, (str, int)):
            return cls.coerce(data)
        if not isinstance(data, dict):
            raise InputError(f"scalar JSON must be an object, got {type(data).__name__}")
        try:
            return cls({int(m): to_fraction(q) for m, q in data.items()})
        except ValueError as e:
            raise InputError(f"bad scalar JSON {data!r}: {e}") from e

    def to_sympy(self, symbol=PI):
        return sum((sympy.Rational(q.numerator, q.denominator) * symbol ** m
                    for m, q in self.items()), sympy.Integer(0))

    @classmethod
    def from_sympy(cls, expr, symbol=PI):
        """Convert a rational function of `symbol` whose denominator is a monomial"""
        expr = sympy.sympify(expr).subs(sympy.pi, symbol)
        num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
        den_poly = sympy.Poly(den, symbol)
        if len(den_poly.terms()) != 1:
            raise InputError(f"{expr} is not a Laurent polynomial in {symbol}")
        (den_exp,), den_coeff = den_poly.terms()[0]
        den_coeff = to_fraction(sympy.Rational(den_coeff))
        terms = {}
        for (exp,), coeff in sympy.Poly(num, symbol).terms():
            terms[exp - den_exp] = to_fraction(sympy.Rational(coeff)) / den_coeff
        return cls(terms)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, q in sorted(self._terms.items(), reverse=True):
            if m == 0:
                parts.append(str(q))
            else:
                power = "pi" if m == 1 else f"pi^{m}"
                if q == 1:
                    parts.append(power)
                elif q == -1:
                    parts.append(f"-{power}")
                else:
                    parts.append(f"{q}*{power}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Scalar({self})"
