"""
Lie algebras given by rational structure constants.

[e_i, e_j] = sum_k c_ij^k e_k with 1-based indices. Only i < j is stored;
the other order follows by antisymmetry.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from src.algebra.exterior import (
    DUAL, PRIMAL, MultiVector, blades, top_coefficient, wedge, wedge_blades,
)
from src.algebra.scalar import Scalar, to_fraction
from src.errors import DegreeError, InputError, JacobiError

logger = logging.getLogger(__name__)


def sort_with_sign(seq):
    """Sort a sequence of indices; returns (sign, sorted tuple), sign 0 on repeats"""
    if len(set(seq)) != len(seq):
        return 0, None
    inversions = sum(1 for a, b in combinations(seq, 2) if a > b)
    return (-1 if inversions % 2 else 1), tuple(sorted(seq))


def _accumulate(target, key, value):
    v = target.get(key, 0) + value
    if v:
        target[key] = v
    else:
        target.pop(key, None)


@dataclass(frozen=True)
class LinearVectorField:
    """The field xi -> A xi on g*; rows[j] lists (k, A_jk) for nonzero entries"""

    n: int
    rows: tuple

    @classmethod
    def from_matrix(cls, matrix):
        rows = tuple(tuple((k + 1, to_fraction(v)) for k, v in enumerate(row) if v)
                     for row in matrix)
        return cls(len(matrix), rows)

    def entry(self, j, k):
        return dict(self.rows[j - 1]).get(k, Fraction(0))

    def matrix(self):
        return [[self.entry(j, k) for k in range(1, self.n + 1)] for j in range(1, self.n + 1)]

    def is_zero(self):
        return not any(self.rows)


@dataclass(frozen=True)
class UnimodularityReport:
    unimodular: bool
    traces: tuple
    witness: int = None

    @property
    def witness_trace(self):
        return None if self.witness is None else self.traces[self.witness - 1]


class LieAlgebraSpec:
    """Structure constants plus cached blade-level tables for d, d* and ad"""

    def __init__(self, name, n, brackets, validate=True):
        self.name = name
        self.n = int(n)
        if self.n < 1:
            raise InputError(f"dimension must be positive, got {n}")
        self.brackets = {}
        for (i, j), coeffs in brackets.items():
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise InputError(f"bracket indices ({i},{j}) out of range for n={self.n}")
            if i == j:
                raise InputError(f"[e{i}, e{i}] must vanish; entry not allowed")
            if i > j:
                raise InputError(f"bracket entry ({i},{j}) must have i < j")
            clean = {}
            for k, v in coeffs.items():
                if not 1 <= int(k) <= self.n:
                    raise InputError(f"bracket target e{k} out of range for n={self.n}")
                q = to_fraction(v)
                if q:
                    clean[int(k)] = q
            if clean:
                self.brackets[(i, j)] = clean
        self._boundary = {}
        self._coboundary = {}
        self._ad = {}
        if validate:
            violations = self.jacobi_violations()
            if violations:
                raise JacobiError(f"{name}: Jacobi identity fails for basis triples {violations}")

    @classmethod
    def from_entries(cls, name, n, entries, validate=True):
        """Build from (i, j, {k: coeff}) triples; entries with i > j are negated"""
        brackets = {}
        for i, j, coeffs in entries:
            i, j = int(i), int(j)
            if i == j:
                raise InputError(f"[e{i}, e{i}] must vanish; entry not allowed")
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            coeffs = {int(k): sign * to_fraction(v) for k, v in coeffs.items()}
            if (i, j) in brackets and brackets[(i, j)] != coeffs:
                raise InputError(f"conflicting entries for [e{i}, e{j}] (antisymmetry violated)")
            if (i, j) in brackets:
                raise InputError(f"duplicate entry for [e{i}, e{j}]")
            brackets[(i, j)] = coeffs
        return cls(name, n, brackets, validate=validate)

    def __eq__(self, other):
        if not isinstance(other, LieAlgebraSpec):
            return NotImplemented
        return self.n == other.n and self.brackets == other.brackets

    def __hash__(self):
        return hash((self.n, tuple(sorted((k, tuple(sorted(v.items())))
                                          for k, v in self.brackets.items()))))

    def __repr__(self):
        return f"LieAlgebraSpec({self.name!r}, n={self.n})"

    def entries(self):
        return [(i, j, dict(c)) for (i, j), c in sorted(self.brackets.items())]

    def bracket_basis(self, i, j):
        """[e_i, e_j] as {k: Fraction}"""
        if i == j:
            return {}
        if i < j:
            return self.brackets.get((i, j), {})
        return {k: -v for k, v in self.brackets.get((j, i), {}).items()}

    def ad_matrix(self, i):
        """Column j holds [e_i, e_j]"""
        M = [[Fraction(0)] * self.n for _ in range(self.n)]
        for j in range(1, self.n + 1):
            for k, v in self.bracket_basis(i, j).items():
                M[k - 1][j - 1] = v
        return M

    def trace_ad(self, i):
        return sum((self.bracket_basis(i, j).get(j, Fraction(0)) for j in range(1, self.n + 1)),
                   Fraction(0))

    def jacobi_violations(self):
        bad = []
        for i, j, k in combinations(range(1, self.n + 1), 3):
            total = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                for m, v in self.bracket_basis(a, b).items():
                    for t, w in self.bracket_basis(m, c).items():
                        _accumulate(total, t, v * w)
            if total:
                bad.append((i, j, k))
        return bad

    # blade tables

    def boundary_blade(self, J):
        """Koszul boundary of e_J as {blade: Fraction}"""
        if J not in self._boundary:
            out = {}
            for a, b in combinations(range(len(J)), 2):
                # 1-based positions a+1, b+1
                sign = -1 if (a + b + 3) % 2 else 1
                rest = J[:a] + J[a + 1:b] + J[b + 1:]
                for m, v in self.bracket_basis(J[a], J[b]).items():
                    s, union = wedge_blades((m,), rest)
                    if s:
                        _accumulate(out, union, sign * s * v)
            self._boundary[J] = out
        return self._boundary[J]

    def coboundary_blade(self, I):
        """Transpose of the boundary: <d* e*_I, e_J> = <e*_I, d e_J>"""
        if I not in self._coboundary:
            out = {}
            if len(I) < self.n:
                for J in blades(self.n, len(I) + 1):
                    v = self.boundary_blade(J).get(I)
                    if v:
                        out[J] = v
            self._coboundary[I] = out
        return self._coboundary[I]

    def ad_blade(self, i, J):
        """Derivation action of ad_{e_i} on e_J"""
        key = (i, J)
        if key not in self._ad:
            out = {}
            for pos, j in enumerate(J):
                for m, v in self.bracket_basis(i, j).items():
                    s, blade = sort_with_sign(J[:pos] + (m,) + J[pos + 1:])
                    if s:
                        _accumulate(out, blade, s * v)
            self._ad[key] = out
        return self._ad[key]


def _check_spec_vector(spec, x, space):
    if x.n != spec.n:
        raise InputError(f"dimension mismatch: spec n={spec.n}, input n={x.n}")
    if x.space != space:
        raise InputError(f"expected a {space} multivector, got {x.space}")


def _apply_table(table, v, space, n):
    out = {}
    for I, c in v.terms.items():
        for J, q in table(I).items():
            out[J] = out.get(J, Scalar.zero()) + c * q
    return MultiVector(space, n, out)


def bracket(spec, x, y):
    """Bilinear extension of the structure constants to grade-1 vectors"""
    for v in (x, y):
        _check_spec_vector(spec, v, PRIMAL)
        if v.grades() not in ([], [1]):
            raise DegreeError("bracket takes grade-1 vectors")
    out = {}
    for (i,), a in x.terms.items():
        for (j,), b in y.terms.items():
            for k, v in spec.bracket_basis(i, j).items():
                out[(k,)] = out.get((k,), Scalar.zero()) + a * b * v
    return MultiVector(PRIMAL, spec.n, out)


def is_unimodular(spec):
    traces = tuple(spec.trace_ad(i) for i in range(1, spec.n + 1))
    for i, t in enumerate(traces, start=1):
        if t:
            logger.debug("%s: tr ad_e%d = %s", spec.name, i, t)
            return UnimodularityReport(False, traces, i)
    return UnimodularityReport(True, traces)


def koszul_boundary(spec, X):
    _check_spec_vector(spec, X, PRIMAL)
    return _apply_table(spec.boundary_blade, X, PRIMAL, spec.n)


def koszul_coboundary(spec, v):
    _check_spec_vector(spec, v, DUAL)
    return _apply_table(spec.coboundary_blade, v, DUAL, spec.n)


def ad_action(spec, i, X):
    """ad_{e_i} acting on Lambda g as a derivation"""
    _check_spec_vector(spec, X, PRIMAL)
    return _apply_table(lambda J: spec.ad_blade(i, J), X, PRIMAL, spec.n)


def coadjoint_field(spec, i):
    """Matrix of ad*_{e_i} = -(ad_{e_i})^T on g*-coordinates"""
    if not 1 <= i <= spec.n:
        raise InputError(f"basis index {i} out of range for n={spec.n}")
    ad = spec.ad_matrix(i)
    return LinearVectorField.from_matrix(
        [[-ad[k][j] for k in range(spec.n)] for j in range(spec.n)])


def leibniz_defect(spec, X, Y):
    """d X ^ Y - (-1)^(k+1) X ^ d Y for X of grade k+1 and Y of grade n-k"""
    _check_spec_vector(spec, X, PRIMAL)
    _check_spec_vector(spec, Y, PRIMAL)
    k = X.grade() - 1
    if X.is_zero() or Y.is_zero():
        return Scalar.zero()
    if k < 0 or Y.grade() != spec.n - k:
        raise DegreeError(f"grades {X.grade()} and {Y.grade()} are not complementary as (k+1, n-k)")
    lhs = top_coefficient(wedge(koszul_boundary(spec, X), Y))
    rhs = top_coefficient(wedge(X, koszul_boundary(spec, Y)))
    return lhs + rhs if k % 2 == 0 else lhs - rhs


# built-in corpus

BUILTIN_SPECS = {
    "abelian1": (1, []),
    "abelian2": (2, []),
    "abelian3": (3, []),
    "abelian4": (4, []),
    "so3": (3, [(1, 2, {3: 1}), (2, 3, {1: 1}), (1, 3, {2: -1})]),
    "h3": (3, [(1, 2, {3: 1})]),
    "aff1": (2, [(1, 2, {2: 1})]),
}


def builtin_spec(name):
    if name not in BUILTIN_SPECS:
        raise InputError(f"unknown built-in Lie algebra {name!r}; "
                         f"choose from {sorted(BUILTIN_SPECS)}")
    n, entries = BUILTIN_SPECS[name]
    return LieAlgebraSpec.from_entries(name, n, entries)
