import random
from fractions import Fraction

import pytest

from arquiver.errors import DimensionError
from arquiver.linalg import (
    Matrix,
    PrimeField,
    QQ,
    RowSpace,
    kernel_basis,
    rank,
    rref,
    solve,
)


def F(*args):
    return Fraction(*args)


def mat(rows):
    return Matrix(len(rows), len(rows[0]) if rows else 0, [[F(x) for x in r] for r in rows])


def test_kernel_of_zero_map():
    assert kernel_basis(mat([[0]])) == [[F(1)]]


def test_kernel_of_identity_is_empty():
    assert kernel_basis(Matrix.identity(3)) == []


def test_kernel_rank_one_matrix():
    # x + 2y = 0 twice over; solution line is spanned by (2, -1)
    basis = kernel_basis(mat([[1, 2], [2, 4]]))
    assert len(basis) == 1
    (x, y) = basis[0]
    assert x * F(-1) == y * F(2)
    assert x or y


def test_kernel_of_empty_shapes():
    assert len(kernel_basis(Matrix.zeros(0, 3))) == 3
    assert kernel_basis(Matrix.zeros(3, 0)) == []


def test_solve_identity():
    b = [F(1), F(2), F(3)]
    assert solve(Matrix.identity(3), b) == b


def test_solve_inconsistent():
    assert solve(mat([[1], [1]]), [F(1), F(2)]) is None


def test_solve_exact_rational_division():
    assert solve(mat([[2]]), [F(3)]) == [F(3, 2)]


def test_solve_shape_mismatch():
    with pytest.raises(DimensionError):
        solve(mat([[1, 2]]), [F(1), F(2)])


def test_rank_nullity_random():
    rng = random.Random(7)
    for _ in range(25):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        a = mat([[rng.randint(-3, 3) for _ in range(m)] for _ in range(n)])
        assert rank(a) + len(kernel_basis(a)) == m


def test_solve_is_exact_on_consistent_systems():
    rng = random.Random(11)
    for _ in range(25):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        a = mat([[rng.randint(-3, 3) for _ in range(m)] for _ in range(n)])
        x0 = [F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(m)]
        b = a.apply(x0)
        x = solve(a, b)
        assert x is not None
        assert a.apply(x) == b


def test_kernel_span_invariant_under_row_permutation():
    rng = random.Random(13)
    for _ in range(20):
        n, m = rng.randint(2, 5), rng.randint(2, 5)
        rows = [[F(rng.randint(-3, 3)) for _ in range(m)] for _ in range(n)]
        a = Matrix(n, m, rows)
        shuffled = rows[:]
        rng.shuffle(shuffled)
        b = Matrix(n, m, shuffled)
        sa = RowSpace(m, kernel_basis(a))
        sb = RowSpace(m, kernel_basis(b))
        assert sa == sb


def test_rref_pivots_are_reduced():
    red, pivots = rref(mat([[0, 2, 4], [1, 1, 1]]))
    assert pivots == [0, 1]
    for i, p in enumerate(pivots):
        col = [red.data[r][p] for r in range(red.nrows)]
        assert col[i] == F(1)
        assert all(not col[r] for r in range(red.nrows) if r != i)


def test_rowspace_canonical_equality():
    s1 = RowSpace(3, [[F(1), F(1), F(0)], [F(0), F(1), F(1)]])
    s2 = RowSpace(3, [[F(1), F(0), F(-1)], [F(0), F(2), F(2)]])
    assert s1 == s2
    assert s1.contains([F(2), F(3), F(1)])
    assert not s1.contains([F(1), F(0), F(0)])


def test_matrix_multiplication_and_empty():
    a = mat([[1, 2], [3, 4]])
    b = mat([[0, 1], [1, 0]])
    assert (a * b).data == [[F(2), F(1)], [F(4), F(3)]]
    z = Matrix.zeros(0, 2) * mat([[1], [1]])
    assert (z.nrows, z.ncols) == (0, 1)


def test_prime_field_arithmetic():
    f5 = PrimeField(5)
    a = f5.from_int(3)
    assert a + a == f5.from_int(1)
    assert a / f5.from_int(2) == f5.from_int(4)
    with pytest.raises(ValueError):
        PrimeField(6)


def test_kernel_over_prime_field():
    f5 = PrimeField(5)
    a = Matrix(1, 2, [[f5.from_int(1), f5.from_int(2)]], f5)
    basis = kernel_basis(a)
    assert len(basis) == 1
    x, y = basis[0]
    assert x + f5.from_int(2) * y == f5.zero


def test_field_descriptors():
    assert QQ.parse("3/2") == F(3, 2)
    with pytest.raises(ValueError):
        QQ.parse("q")
