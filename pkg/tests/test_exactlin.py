import numpy as np
import pytest

from arquiver import exactlin
from arquiver.exactlin import (
    Matrix,
    PrimeField,
    direct_sum,
    image_membership,
    inverse,
    kernel_basis,
    minimal_polynomial,
    multiply,
    rank,
    rref,
    solve,
    transpose,
)

F5 = PrimeField(5)
F2 = PrimeField(2)


def test_primefield_rejects_nonprime():
    with pytest.raises(ValueError):
        PrimeField(4)
    with pytest.raises(ValueError):
        PrimeField(1)
    with pytest.raises(ValueError):
        PrimeField(2**31)  # out of range
    assert PrimeField(2).p == 2
    assert PrimeField(2147483647).p == 2147483647  # 2^31 - 1 is prime


def test_entries_reduced_mod_p():
    m = Matrix(F5, [[7, -1], [10, 4]])
    assert m.tolist() == [[2, 4], [0, 4]]


def test_rref_frozen_example():
    # [[2,4],[1,2]] over GF(5) -> [[1,2],[0,0]], pivots [0]
    m = Matrix(F5, [[2, 4], [1, 2]])
    red, pivots = rref(m)
    assert red.tolist() == [[1, 2], [0, 0]]
    assert pivots == [0]


def test_kernel_frozen_example():
    # kernel of [[1,2]] over GF(5) is spanned by (3,1)^t
    k = kernel_basis(Matrix(F5, [[1, 2]]))
    assert k.tolist() == [[3], [1]]


def test_solve_frozen_examples():
    x = solve(Matrix(F5, [[1], [2]]), Matrix(F5, [[1], [2]]))
    assert x is not None and x.tolist() == [[1]]
    assert solve(Matrix(F5, [[0]]), Matrix(F5, [[1]])) is None
    with pytest.raises(ValueError):
        solve(Matrix(F5, [[1, 2]]), Matrix(F5, [[1], [2]]))


def test_minimal_polynomial_frozen_examples():
    nil = Matrix(F5, [[0, 1], [0, 0]])
    assert minimal_polynomial(nil) == [0, 0, 1]  # x^2
    ident = Matrix(F5, [[1, 0], [0, 1]])
    assert minimal_polynomial(ident) == [4, 1]  # x - 1
    assert minimal_polynomial(Matrix.zeros(F5, 0, 0)) == [1]


def test_direct_sum_frozen_example():
    s = direct_sum(Matrix(F5, [[2]]), Matrix(F5, [[3]]))
    assert s.tolist() == [[2, 0], [0, 3]]


def test_zero_row_and_zero_column_shapes():
    z = Matrix.zeros(F5, 0, 3)
    red, pivots = rref(z)
    assert red.shape == (0, 3) and pivots == []
    assert kernel_basis(z).tolist() == np.eye(3, dtype=int).tolist()
    tall = Matrix.zeros(F5, 3, 0)
    assert kernel_basis(tall).shape == (0, 0)
    prod = multiply(z, Matrix.zeros(F5, 3, 4))
    assert prod.shape == (0, 4)
    assert solve(Matrix.zeros(F5, 0, 2), Matrix.zeros(F5, 0, 1)).shape == (2, 1)


def test_matrices_immutable():
    m = Matrix(F5, [[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        m.a[0, 0] = 3
    with pytest.raises(AttributeError):
        m.field = F2


def _random_matrix(rng, field, rows, cols):
    return Matrix(field, rng.integers(0, field.p, size=(rows, cols)))


def test_kernel_and_rank_nullity_randomized():
    rng = np.random.default_rng(0)
    for p in (2, 3, 5, 13):
        field = PrimeField(p)
        for _ in range(40):
            m = _random_matrix(rng, field, int(rng.integers(0, 7)), int(rng.integers(0, 7)))
            red, pivots = rref(m)
            k = kernel_basis(m)
            assert len(pivots) + k.cols == m.cols  # rank-nullity
            if k.cols:
                assert multiply(m, k).is_zero()
            # rref is idempotent
            red2, pivots2 = rref(red)
            assert red2 == red and pivots2 == pivots


def test_solve_exactness_randomized():
    rng = np.random.default_rng(1)
    field = PrimeField(5)
    for _ in range(40):
        m = _random_matrix(rng, field, int(rng.integers(1, 6)), int(rng.integers(1, 6)))
        x0 = _random_matrix(rng, field, m.cols, 2)
        b = multiply(m, x0)
        x = solve(m, b)
        assert x is not None
        assert multiply(m, x) == b
        assert image_membership(m, b)


def test_inverse_and_minimal_polynomial_randomized():
    rng = np.random.default_rng(2)
    field = PrimeField(7)
    for _ in range(25):
        n = int(rng.integers(1, 6))
        m = _random_matrix(rng, field, n, n)
        inv = inverse(m)
        if inv is not None:
            assert multiply(m, inv) == Matrix.identity(field, n)
            assert multiply(inv, m) == Matrix.identity(field, n)
        else:
            assert rank(m) < n
        # minimal polynomial annihilates m
        mu = minimal_polynomial(m)
        acc = Matrix.zeros(field, n, n)
        power = Matrix.identity(field, n)
        for c in mu:
            acc = exactlin.add(acc, exactlin.scale(c, power))
            power = multiply(power, m)
        assert acc.is_zero()
        assert mu[-1] == 1 and len(mu) - 1 <= n


def test_backends_agree():
    from arquiver import _gfcore_py

    try:
        from arquiver import _gfcore
    except ImportError:
        pytest.skip("compiled kernel not built")
    rng = np.random.default_rng(3)
    for p in (2, 5, 2147483647):
        for _ in range(20):
            a = rng.integers(0, p, size=(int(rng.integers(0, 6)), int(rng.integers(0, 6))))
            r1, p1 = _gfcore_py.rref(a, p)
            r2, p2 = _gfcore.rref(a, p)
            assert np.array_equal(r1, r2) and list(p1) == list(p2)
            b = rng.integers(0, p, size=(a.shape[1], int(rng.integers(0, 6))))
            assert np.array_equal(_gfcore_py.matmul(a, b, p), _gfcore.matmul(a, b, p))


def test_large_prime_no_overflow():
    p = 2147483647
    field = PrimeField(p)
    a = Matrix(field, np.full((1, 200), p - 1, dtype=np.int64))
    b = Matrix(field, np.full((200, 1), p - 1, dtype=np.int64))
    got = multiply(a, b)[0, 0]
    assert got == (200 * (p - 1) * (p - 1)) % p
