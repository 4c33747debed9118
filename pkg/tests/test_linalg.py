"""
Tests for exact sparse and field linear algebra
"""
import pytest

from src.algebra.linalg import (
    field_det, field_inverse, field_nullspace, field_rank, field_solve, solve_sparse,
)
from src.algebra.scalar import Scalar
from src.errors import AlgebraError

PI = Scalar.pi()


def test_solve_sparse_splits_pi_powers():
    columns = [{"a": 1, "b": 1}, {"b": 1}]
    solution = solve_sparse(columns, {"a": PI, "b": PI + 2})
    assert solution == [PI, Scalar.coerce(2)]
    print("✓ Sparse system solved per pi-exponent")


def test_solve_sparse_inconsistent():
    assert solve_sparse([{"a": 1}], {"b": 1}) is None


def test_reverse_selects_another_particular_solution():
    columns = [{"a": 1}, {"a": 1}]
    assert solve_sparse(columns, {"a": 3}) == [Scalar.coerce(3), Scalar.zero()]
    assert solve_sparse(columns, {"a": 3}, reverse=True) == [Scalar.zero(), Scalar.coerce(3)]


def test_field_determinant_and_inverse():
    matrix = [[PI, Scalar.one()], [Scalar.zero(), Scalar.coerce(2)]]
    assert field_det(matrix) == Scalar.pi(1, 2)
    inverse = field_inverse(matrix)
    assert inverse[0][0] == PI.inverse()
    assert inverse[0][1] == Scalar.pi(-1, "-1/2")
    assert inverse[1][1] == Scalar.coerce("1/2")
    with pytest.raises(AlgebraError):
        field_inverse([[Scalar.one(), PI], [Scalar.coerce(2), PI * 2]])


def test_rank_and_nullspace():
    assert field_rank([[1, PI], [2, PI * 2]]) == 1
    assert field_rank([]) == 0
    basis = field_nullspace([[Scalar.one(), PI]], 2)
    assert basis == [[-PI, Scalar.one()]]
    assert len(field_nullspace([], 3)) == 3


def test_field_solve():
    assert field_solve([[1, 1], [1, -1]], [PI, PI]) == [PI, Scalar.zero()]
    with pytest.raises(AlgebraError):
        field_solve([[1, 1], [2, 2]], [1, 3])
    with pytest.raises(AlgebraError):
        field_solve([[1, 1]], [1])
    print("✓ Field solves are exact")


def test_determinant_and_inverse_with_row_swap():
    matrix = [[Scalar.zero(), PI, Scalar.one()],
              [Scalar.one(), Scalar.zero(), Scalar.zero()],
              [Scalar.zero(), Scalar.zero(), Scalar.coerce(2)]]
    assert field_det(matrix) == Scalar.pi(1, -2)
    inverse = field_inverse(matrix)
    assert inverse[0] == [Scalar.zero(), Scalar.one(), Scalar.zero()]
    assert inverse[1] == [PI.inverse(), Scalar.zero(), Scalar.pi(-1, "-1/2")]
    assert inverse[2] == [Scalar.zero(), Scalar.zero(), Scalar.coerce("1/2")]
    for i in range(3):
        for j in range(3):
            entry = sum((matrix[i][m] * inverse[m][j] for m in range(3)), Scalar.zero())
            assert entry == (Scalar.one() if i == j else Scalar.zero())
    print("✓ Determinant and inverse over Q(pi) with pivoting")
