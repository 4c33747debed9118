"""
Exterior algebra over g and g* with a fixed ordered basis.

Blades are keyed by index sets: strictly increasing tuples over 1..n.
The basis volume e_1 ^ ... ^ e_n is identified with 1.
"""
from functools import lru_cache
from itertools import combinations

from src.algebra.scalar import Scalar
from src.errors import InputError

PRIMAL = "primal"
DUAL = "dual"
SPACES = (PRIMAL, DUAL)


def index_set(items, n=None):
    """Validate and return a strictly increasing tuple"""
    result = tuple(int(i) for i in items)
    if any(a >= b for a, b in zip(result, result[1:])):
        raise InputError(f"index set must be strictly increasing: {list(items)}")
    if result and result[0] < 1:
        raise InputError(f"indices are 1-based: {list(items)}")
    if n is not None and result and result[-1] > n:
        raise InputError(f"index {result[-1]} out of range for n={n}")
    return result


@lru_cache(maxsize=None)
def perm_sign(K, L):
    """Sign of the concatenation K+L as a permutation of the sorted union, 0 on overlap"""
    if set(K) & set(L):
        return 0
    inversions = sum(1 for a in K for b in L if a > b)
    return -1 if inversions % 2 else 1


@lru_cache(maxsize=None)
def wedge_blades(I, J):
    """e_I ^ e_J = sign * e_{I u J}; returns (sign, union)"""
    sign = perm_sign(I, J)
    if not sign:
        return 0, None
    return sign, tuple(sorted(I + J))


@lru_cache(maxsize=None)
def contract_blade(i, J):
    """iota_{e*_i} e_J as (sign, J minus i); sign 0 when i is not in J"""
    if i not in J:
        return 0, None
    pos = J.index(i)
    return (-1 if pos % 2 else 1), J[:pos] + J[pos + 1:]


@lru_cache(maxsize=None)
def complement(I, n):
    return tuple(i for i in range(1, n + 1) if i not in I)


@lru_cache(maxsize=None)
def hodge_inverse_blade(I, n):
    """*^{-1}(e*_I (x) e_[n]) = perm_sign(I^c, I) e_{I^c}"""
    Ic = complement(I, n)
    return perm_sign(Ic, I), Ic


@lru_cache(maxsize=None)
def hodge_blade(J, n):
    """Inverse of hodge_inverse_blade: e_J -> perm_sign(J, J^c) e*_{J^c} (x) e_[n]"""
    Jc = complement(J, n)
    return perm_sign(J, Jc), Jc


def blades(n, grade):
    return list(combinations(range(1, n + 1), grade))


class MultiVector:
    """Sparse element of Lambda g (primal) or Lambda g* (dual)"""

    __slots__ = ("space", "n", "terms")

    def __init__(self, space, n, terms=None):
        if space not in SPACES:
            raise InputError(f"unknown space tag {space!r}")
        self.space = space
        self.n = n
        clean = {}
        for key, coeff in (terms or {}).items():
            key = index_set(key, n)
            value = clean.get(key, Scalar.zero()) + Scalar.coerce(coeff)
            if value:
                clean[key] = value
            else:
                clean.pop(key, None)
        self.terms = clean

    @classmethod
    def blade(cls, space, n, indices, coeff=1):
        return cls(space, n, {index_set(indices, n): coeff})

    @classmethod
    def basis(cls, space, n, i):
        return cls.blade(space, n, (i,))

    @classmethod
    def scalar(cls, space, n, value=1):
        return cls(space, n, {(): value})

    def grades(self):
        return sorted({len(k) for k in self.terms})

    def grade_part(self, k):
        return MultiVector(self.space, self.n, {I: c for I, c in self.terms.items() if len(I) == k})

    def is_homogeneous(self):
        return len(self.grades()) <= 1

    def grade(self):
        grades = self.grades()
        if len(grades) > 1:
            raise InputError(f"mixed-grade multivector with grades {grades}")
        return grades[0] if grades else 0

    def is_zero(self):
        return not self.terms

    def coefficient(self, indices):
        return self.terms.get(tuple(indices), Scalar.zero())

    def _check(self, other):
        if not isinstance(other, MultiVector):
            raise InputError(f"expected MultiVector, got {type(other).__name__}")
        if other.space != self.space or other.n != self.n:
            raise InputError(
                f"space/dimension mismatch: {self.space}/{self.n} vs {other.space}/{other.n}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for I, c in other.terms.items():
            out[I] = out.get(I, Scalar.zero()) + c
        return MultiVector(self.space, self.n, out)

    def __neg__(self):
        return MultiVector(self.space, self.n, {I: -c for I, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        factor = Scalar.coerce(factor)
        return MultiVector(self.space, self.n, {I: c * factor for I, c in self.terms.items()})

    def __rmul__(self, factor):
        return self.scale(factor)

    def __eq__(self, other):
        if not isinstance(other, MultiVector):
            return NotImplemented
        return (self.space, self.n, self.terms) == (other.space, other.n, other.terms)

    def __hash__(self):
        return hash((self.space, self.n, frozenset(self.terms.items())))

    def __repr__(self):
        prefix = "e" if self.space == PRIMAL else "e*"
        if not self.terms:
            return "0"
        parts = []
        for I, c in sorted(self.terms.items()):
            name = prefix + "".join(map(str, I)) if I else "1"
            parts.append(f"({c}){name}")
        return " + ".join(parts)


def wedge(a, b):
    """Exterior product e_I ^ e_J = perm_sign(I, J) e_{I u J}"""
    a._check(b)
    out = {}
    for I, c1 in a.terms.items():
        for J, c2 in b.terms.items():
            sign, union = wedge_blades(I, J)
            if sign:
                out[union] = out.get(union, Scalar.zero()) + (c1 * c2 if sign > 0 else -(c1 * c2))
    return MultiVector(a.space, a.n, out)


def interior_dual(K, v):
    """iota_{e*_{k1}} o ... o iota_{e*_{kr}} applied to a primal multivector"""
    if v.space != PRIMAL:
        raise InputError("interior_dual contracts primal multivectors only")
    K = index_set(K, v.n)
    terms = dict(v.terms)
    for i in reversed(K):
        out = {}
        for J, c in terms.items():
            sign, rest = contract_blade(i, J)
            if sign:
                out[rest] = out.get(rest, Scalar.zero()) + (c if sign > 0 else -c)
        terms = out
    return MultiVector(PRIMAL, v.n, terms)


def hodge_inverse(v):
    """Dual multivector (implicitly tensored with e_[n]) to primal"""
    if v.space != DUAL:
        raise InputError("hodge_inverse expects a dual multivector")
    out = {}
    for I, c in v.terms.items():
        sign, Ic = hodge_inverse_blade(I, v.n)
        out[Ic] = c if sign > 0 else -c
    return MultiVector(PRIMAL, v.n, out)


def hodge(v):
    """Primal multivector to dual (x) e_[n]; inverse of hodge_inverse"""
    if v.space != PRIMAL:
        raise InputError("hodge expects a primal multivector")
    out = {}
    for J, c in v.terms.items():
        sign, Jc = hodge_blade(J, v.n)
        out[Jc] = c if sign > 0 else -c
    return MultiVector(DUAL, v.n, out)


def pairing(covector, vector):
    """<e*_I, e_J> = delta_IJ extended bilinearly"""
    if covector.space != DUAL or vector.space != PRIMAL:
        raise InputError("pairing takes (dual, primal)")
    total = Scalar.zero()
    for I, c in covector.terms.items():
        if I in vector.terms:
            total = total + c * vector.terms[I]
    return total


def top_coefficient(v):
    """Coefficient of e_[n] (the scalar value under e_[n] <-> 1)"""
    return v.coefficient(tuple(range(1, v.n + 1)))
