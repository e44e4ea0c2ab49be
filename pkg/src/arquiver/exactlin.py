"""Exact dense linear algebra over prime fields GF(p).

Matrices are immutable wrappers around int64 numpy arrays with entries in
[0, p).  Zero-row and zero-column shapes are first-class: a 0 x n matrix is
the unique map from an n-dimensional space to the zero space.

All functions are pure; nothing here ever mutates an argument.
"""

from __future__ import annotations

import numpy as np

from . import _gfkernel


def backend() -> str:
    """Name of the active kernel backend: "c" or "python"."""
    return _gfkernel.BACKEND


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """GF(p) for a prime 2 <= p <= 2^31 - 1."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or not (2 <= p <= 2**31 - 1):
            raise ValueError(f"field order out of range: {p!r}")
        if not _is_prime(p):
            raise ValueError(f"field order is not prime: {p}")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("PrimeField is immutable")

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in GF(p)")
        return pow(x, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class Matrix:
    """Immutable matrix over a PrimeField."""

    __slots__ = ("field", "a")

    def __init__(self, field: PrimeField, entries):
        arr = np.asarray(entries, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"matrix entries must be 2-dimensional, got shape {arr.shape}")
        arr = np.ascontiguousarray(arr % field.p)
        arr.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "a", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def zeros(field: PrimeField, rows: int, cols: int) -> "Matrix":
        return Matrix(field, np.zeros((rows, cols), dtype=np.int64))

    @staticmethod
    def identity(field: PrimeField, n: int) -> "Matrix":
        return Matrix(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.a.shape[0], self.a.shape[1])

    def __getitem__(self, ij):
        return int(self.a[ij])

    def tolist(self) -> list[list[int]]:
        return self.a.tolist()

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and other.a.shape == self.a.shape
            and bool(np.array_equal(other.a, self.a))
        )

    def __hash__(self):
        return hash((self.field.p, self.a.shape, self.a.tobytes()))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return multiply(self, other)

    def is_zero(self) -> bool:
        return not self.a.any()

    def __repr__(self):
        if self.rows * self.cols <= 36:
            return f"Matrix({self.field!r}, {self.tolist()})"
        return f"Matrix({self.field!r}, {self.rows}x{self.cols})"


def _check_same_field(a: Matrix, b: Matrix):
    if a.field != b.field:
        raise ValueError(f"field mismatch: {a.field!r} vs {b.field!r}")


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    red, piv = _gfkernel.rref(m.a, m.field.p)
    return Matrix(m.field, red), list(piv)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def multiply(a: Matrix, b: Matrix) -> Matrix:
    _check_same_field(a, b)
    if a.cols != b.rows:
        raise ValueError(f"shape mismatch for multiply: {a.shape} @ {b.shape}")
    return Matrix(a.field, _gfkernel.matmul(a.a, b.a, a.field.p))


def add(a: Matrix, b: Matrix) -> Matrix:
    _check_same_field(a, b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch for add: {a.shape} vs {b.shape}")
    return Matrix(a.field, (a.a + b.a) % a.field.p)


def scale(c: int, m: Matrix) -> Matrix:
    return Matrix(m.field, (m.a * (c % m.field.p)) % m.field.p)

def subtract(a: Matrix, b: Matrix) -> Matrix:
    return add(a, scale(-1, b))


def transpose(m: Matrix) -> Matrix:
    return Matrix(m.field, m.a.T)


def hstack(mats: list[Matrix]) -> Matrix:
    if not mats:
        raise ValueError("hstack of nothing")
    return Matrix(mats[0].field, np.hstack([m.a for m in mats]))


def vstack(mats: list[Matrix]) -> Matrix:
    if not mats:
        raise ValueError("vstack of nothing")
    return Matrix(mats[0].field, np.vstack([m.a for m in mats]))


def direct_sum(a: Matrix, b: Matrix) -> Matrix:
    _check_same_field(a, b)
    out = np.zeros((a.rows + b.rows, a.cols + b.cols), dtype=np.int64)
    out[: a.rows, : a.cols] = a.a
    out[a.rows :, a.cols :] = b.a
    return Matrix(a.field, out)


def kernel_basis(m: Matrix) -> Matrix:
    """Basis of the right kernel, as columns of an (m.cols x nullity) matrix.

    Canonical form: free variables are set to 1 one at a time, in increasing
    column order.
    """
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    out = np.zeros((m.cols, len(free)), dtype=np.int64)
    p = m.field.p
    for j, fc in enumerate(free):
        out[fc, j] = 1
        for i, pc in enumerate(pivots):
            out[pc, j] = (-red.a[i, fc]) % p
    return Matrix(m.field, out)


def solve(m: Matrix, b: Matrix) -> Matrix | None:
    """Any x with m @ x == b, or None when the system is inconsistent.

    b may have several columns; all are solved simultaneously.
    """
    _check_same_field(m, b)
    if b.rows != m.rows:
        raise ValueError(f"dimension mismatch for solve: {m.shape} vs rhs {b.shape}")
    aug = np.hstack([m.a, b.a])
    red, pivots = _gfkernel.rref(aug, m.field.p)
    if pivots and pivots[-1] >= m.cols:
        return None
    x = np.zeros((m.cols, b.cols), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = red[i, m.cols :]
    return Matrix(m.field, x)


def image_membership(span: Matrix, v: Matrix) -> bool:
    """True when every column of v lies in the column space of span."""
    return solve(span, v) is not None


def inverse(m: Matrix) -> Matrix | None:
    """Two-sided inverse, or None when m is not invertible."""
    if m.rows != m.cols:
        return None
    x = solve(m, Matrix.identity(m.field, m.rows))
    if x is None:
        return None
    return x


def column_space_basis(m: Matrix) -> Matrix:
    """Basis of the column space: the pivot columns of m."""
    _, pivots = rref(m)
    return Matrix(m.field, m.a[:, pivots])


def minimal_polynomial(m: Matrix) -> list[int]:
    """Monic polynomial of least degree annihilating m.

    Coefficients are ascending: [c0, c1, ..., 1] means c0 + c1 x + ... + x^d.
    The minimal polynomial of the (unique) operator on the zero space is 1.
    """
    if m.rows != m.cols:
        raise ValueError(f"minimal_polynomial needs a square matrix, got {m.shape}")
    n = m.rows
    if n == 0:
        return [1]
    p = m.field.p
    powers = [np.eye(n, dtype=np.int64)]
    while True:
        k = len(powers)
        nxt = _gfkernel.matmul(powers[-1], m.a, p)
        span = Matrix(m.field, np.stack([q.ravel() for q in powers], axis=1))
        target = Matrix(m.field, nxt.reshape(-1, 1))
        x = solve(span, target)
        if x is not None:
            return [(-int(x[i, 0])) % p for i in range(k)] + [1]
        powers.append(nxt)
        if k > n:  # cannot happen: minimal polynomial degree is at most n
            raise AssertionError("minimal polynomial search exceeded dimension")
