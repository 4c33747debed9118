"""
Exact linear algebra on sparse rational systems and over the field Q(pi)
"""
import logging

import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.sdm import SDM

from src.algebra.scalar import PI, Scalar, to_fraction
from src.errors import AlgebraError

logger = logging.getLogger(__name__)

FIELD = QQ.frac_field(PI)


def _qq(q):
    q = to_fraction(q)
    return QQ(q.numerator, q.denominator)


def to_field(value):
    return FIELD.from_sympy(Scalar.coerce(value).to_sympy(PI))


def from_field(element):
    return Scalar.from_sympy(FIELD.to_sympy(element), PI)


def solve_sparse(columns, rhs, reverse=False):
    """Find x with sum_c x_c * columns[c] = rhs.

    columns: list of {row_key: rational}; rhs: {row_key: Scalar}. The matrix is
    rational and the right-hand side is split by pi-exponent, so the system is
    solved over QQ with one augmented column per exponent. `reverse` flips the
    unknown order, which selects a different particular solution when the
    system is underdetermined. Returns a list of Scalars, or None when the
    system is inconsistent.
    """
    n_unknowns = len(columns)
    order = list(reversed(range(n_unknowns))) if reverse else list(range(n_unknowns))
    exponents = sorted({m for value in rhs.values() for m in Scalar.coerce(value).terms})
    row_index = {}
    rows = {}

    def row_of(key):
        if key not in row_index:
            row_index[key] = len(row_index)
        return rows.setdefault(row_index[key], {})

    for position, c in enumerate(order):
        for key, value in columns[c].items():
            if value:
                row_of(key)[position] = _qq(value)
    for e, m in enumerate(exponents):
        for key, value in rhs.items():
            q = Scalar.coerce(value).terms.get(m)
            if q:
                row_of(key)[n_unknowns + e] = _qq(q)
    shape = (len(row_index), n_unknowns + len(exponents))
    logger.debug("solving %d x %d rational system (%d rhs columns)",
                 shape[0], n_unknowns, len(exponents))
    reduced, pivots = SDM(rows, shape, QQ).rref()
    if any(p >= n_unknowns for p in pivots):
        return None
    solution = [Scalar.zero()] * n_unknowns
    for r, p in enumerate(pivots):
        row = reduced.get(r, {})
        value = Scalar({m: to_fraction(row[n_unknowns + e])
                        for e, m in enumerate(exponents) if n_unknowns + e in row})
        solution[order[p]] = value
    return solution


def _field_matrix(matrix):
    n_rows = len(matrix)
    n_cols = len(matrix[0]) if matrix else 0
    rows = {}
    for i, row in enumerate(matrix):
        entries = {j: to_field(v) for j, v in enumerate(row) if Scalar.coerce(v)}
        if entries:
            rows[i] = entries
    return SDM(rows, (n_rows, n_cols), FIELD)


def field_rref(matrix):
    """RREF over Q(pi) of a matrix of Scalars; returns (rows dict, pivots)"""
    reduced, pivots = _field_matrix(matrix).rref()
    return reduced, list(pivots)


def field_rank(matrix):
    if not matrix:
        return 0
    return len(field_rref(matrix)[1])


def _clear_denominators(entries):
    exprs = [FIELD.to_sympy(e) for e in entries]
    dens = [sympy.fraction(sympy.together(e))[1] for e in exprs]
    common = sympy.lcm(dens) if dens else sympy.Integer(1)
    return [Scalar.from_sympy(sympy.cancel(e * common), PI) for e in exprs]


def field_nullspace(matrix, n_cols=None):
    """Basis of {x : matrix x = 0}, each vector scaled to Laurent entries"""
    n_cols = n_cols if n_cols is not None else (len(matrix[0]) if matrix else 0)
    if not matrix:
        return [[Scalar.one() if i == j else Scalar.zero() for i in range(n_cols)]
                for j in range(n_cols)]
    reduced, pivots = field_rref(matrix)
    basis = []
    for free in (c for c in range(n_cols) if c not in pivots):
        vector = [FIELD.zero] * n_cols
        vector[free] = FIELD.one
        for r, p in enumerate(pivots):
            vector[p] = -reduced.get(r, {}).get(free, FIELD.zero)
        basis.append(_clear_denominators(vector))
    return basis


def field_solve(matrix, rhs):
    """Unique solution of matrix x = rhs over Q(pi), as Scalars"""
    n_cols = len(matrix[0]) if matrix else 0
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    reduced, pivots = field_rref(augmented)
    if n_cols in pivots:
        raise AlgebraError("inconsistent linear system")
    if len(pivots) < n_cols:
        raise AlgebraError(
            f"underdetermined linear system: rank {len(pivots)} < {n_cols} unknowns")
    return [from_field(reduced[r].get(n_cols, FIELD.zero)) for r in range(n_cols)]


def _domain_matrix(matrix):
    n = len(matrix)
    return DomainMatrix([[to_field(v) for v in row] for row in matrix], (n, n), FIELD)


def field_det(matrix):
    return from_field(_domain_matrix(matrix).det())


def field_inverse(matrix):
    square = _domain_matrix(matrix)
    if not square.det():
        raise AlgebraError("matrix is singular")
    return [[Scalar.from_sympy(v, PI) for v in row] for row in square.inv().to_Matrix().tolist()]
