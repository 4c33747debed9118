"""
Homogeneous coefficient functions on g* minus the origin.

A coefficient of weight w is stored as its restriction p to the unit sphere,
so the function is f(xi) = r**w * p(xi / r). The restriction is kept in
normal form: polynomial in xi_1..xi_n with pi-powers folded into the
monomial key, reduced by xi_n**2 = 1 - (xi_1**2 + ... + xi_{n-1}**2) so that
xi_n appears at most linearly. With this normal form two coefficients are
equal as functions exactly when their weights and term maps agree.
"""
from fractions import Fraction
from functools import lru_cache
from math import factorial

from src.algebra.scalar import Scalar
from src.errors import InputError


def _reduce(raw, n):
    out = {}
    stack = [(k, c) for k, c in raw.items() if c]
    last = n - 1
    while stack:
        key, c = stack.pop()
        if key[last] >= 2:
            base = list(key)
            base[last] -= 2
            stack.append((tuple(base), c))
            for i in range(last):
                other = list(base)
                other[i] += 2
                stack.append((tuple(other), -c))
        else:
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def _add_into(target, key, value):
    v = target.get(key, 0) + value
    if v:
        target[key] = v
    else:
        target.pop(key, None)


@lru_cache(maxsize=None)
def _half_gamma_ratio(b):
    """Gamma(b + 1/2) / sqrt(pi) for integer b >= 0"""
    return Fraction(factorial(2 * b), 4 ** b * factorial(b))


@lru_cache(maxsize=None)
def sphere_moment(alpha):
    """Integral of xi**alpha over the unit sphere S^{n-1}, n = len(alpha).

    Zero if any exponent is odd, else 2 * prod Gamma((a_i+1)/2) / Gamma((n+|a|)/2),
    which is rational times an integer power of pi.
    """
    n = len(alpha)
    if any(a % 2 for a in alpha):
        return Scalar.zero()
    numerator = Fraction(2)
    for a in alpha:
        numerator *= _half_gamma_ratio(a // 2)
    total = n + sum(alpha)
    if total % 2 == 0:
        # n even: pi^(n/2) / (total/2 - 1)!
        return Scalar.pi(n // 2, numerator / factorial(total // 2 - 1))
    # n odd: Gamma(total/2) carries one sqrt(pi)
    return Scalar.pi((n - 1) // 2, numerator / _half_gamma_ratio((total - 1) // 2))


class SphereCoefficient:
    __slots__ = ("n", "weight", "terms")

    def __init__(self, n, weight, terms=None, reduced=False):
        self.n = n
        self.weight = weight
        raw = terms or {}
        self.terms = raw if reduced else _reduce(raw, n)

    # constructors

    @classmethod
    def from_scalar(cls, n, value, weight=0, alpha=None):
        alpha = tuple(alpha) if alpha is not None else (0,) * n
        if len(alpha) != n or any(a < 0 for a in alpha):
            raise InputError(f"bad exponent vector {alpha} for n={n}")
        terms = {alpha + (m,): q for m, q in Scalar.coerce(value).terms.items()}
        return cls(n, weight, terms)

    @classmethod
    def constant(cls, n, value=1, weight=0):
        return cls.from_scalar(n, value, weight)

    @classmethod
    def coordinate(cls, n, i, weight=1, coeff=1):
        """xi_i * r**(weight - 1)"""
        alpha = [0] * n
        alpha[i - 1] = 1
        return cls.from_scalar(n, coeff, weight, alpha)

    @classmethod
    def linear(cls, n, row, weight=1):
        """sum_k A_k xi_k from a sparse row [(k, A_k)]"""
        terms = {}
        for k, v in row:
            key = [0] * (n + 1)
            key[k - 1] = 1
            terms[tuple(key)] = Fraction(v)
        return cls(n, weight, terms, reduced=True)

    @classmethod
    def zero(cls, n, weight=0):
        return cls(n, weight, {}, reduced=True)

    # queries

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        return max((sum(k[:-1]) for k in self.terms), default=0)

    def is_constant(self):
        return all(not any(k[:-1]) for k in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise InputError("coefficient is not constant on the sphere")
        return Scalar({k[-1]: c for k, c in self.terms.items()})

    def polynomial(self):
        """Restriction to the sphere as {alpha: Scalar}"""
        out = {}
        for key, c in self.terms.items():
            alpha = key[:-1]
            out[alpha] = out.get(alpha, Scalar.zero()) + Scalar.pi(key[-1], c)
        return out

    def rational_terms(self):
        """{(alpha, pi_exponent): Fraction}"""
        return {(k[:-1], k[-1]): c for k, c in self.terms.items()}

    # arithmetic

    def _check(self, other):
        if self.n != other.n:
            raise InputError(f"dimension mismatch {self.n} vs {other.n}")

    def __add__(self, other):
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        if self.weight != other.weight:
            raise InputError(f"cannot add weights {self.weight} and {other.weight}")
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return SphereCoefficient(self.n, self.weight, out, reduced=True)

    def __neg__(self):
        return SphereCoefficient(self.n, self.weight,
                                 {k: -c for k, c in self.terms.items()}, reduced=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SphereCoefficient):
            return self.scale(other)
        self._check(other)
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                _add_into(out, tuple(a + b for a, b in zip(k1, k2)), c1 * c2)
        needs_reduction = any(k[self.n - 1] >= 2 for k in out)
        return SphereCoefficient(self.n, self.weight + other.weight, out,
                                 reduced=not needs_reduction)

    def scale(self, factor):
        """Multiply by a Scalar, Fraction or int"""
        if isinstance(factor, (int, Fraction)):
            if not factor:
                return SphereCoefficient.zero(self.n, self.weight)
            return SphereCoefficient(self.n, self.weight,
                                     {k: c * factor for k, c in self.terms.items()},
                                     reduced=True)
        factor = Scalar.coerce(factor)
        out = {}
        for k, c in self.terms.items():
            for m, q in factor.terms.items():
                _add_into(out, k[:-1] + (k[-1] + m,), c * q)
        return SphereCoefficient(self.n, self.weight, out, reduced=True)

    def rescale_weight(self, weight):
        """Same restriction to the sphere, different homogeneity weight"""
        return SphereCoefficient(self.n, weight, self.terms, reduced=True)

    def derivative(self, i):
        """Partial derivative along xi_i; weight drops by one"""
        out = {}
        idx = i - 1
        for key, c in self.terms.items():
            a = key[idx]
            if a:
                lowered = list(key)
                lowered[idx] -= 1
                _add_into(out, tuple(lowered), c * a)
            shift = self.weight - sum(key[:-1])
            if shift:
                raised = list(key)
                raised[idx] += 1
                _add_into(out, tuple(raised), c * shift)
        return SphereCoefficient(self.n, self.weight - 1, out)

    def integrate(self):
        """Integral of the restriction over the unit sphere"""
        total = Scalar.zero()
        for key, c in self.terms.items():
            moment = sphere_moment(key[:-1])
            if moment:
                total = total + moment * Scalar.pi(key[-1], c)
        return total

    def __eq__(self, other):
        if not isinstance(other, SphereCoefficient):
            return NotImplemented
        if not self.terms and not other.terms:
            return self.n == other.n
        return (self.n, self.weight, self.terms) == (other.n, other.weight, other.terms)

    def __hash__(self):
        return hash((self.n, self.weight if self.terms else None, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in sorted(self.terms.items()):
            mono = "*".join(f"x{i + 1}^{a}" if a > 1 else f"x{i + 1}"
                            for i, a in enumerate(key[:-1]) if a)
            pi = f"pi^{key[-1]}" if key[-1] else ""
            parts.append("*".join(p for p in (str(c), pi, mono) if p))
        return f"[w={self.weight}] " + " + ".join(parts)
