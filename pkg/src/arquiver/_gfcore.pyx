# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(p) kernel: rref and matmul on int64 arrays.

Mirrors arquiver._gfcore_py exactly (same pivoting order, same results).
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef long long _inv_mod(long long x, long long p):
    # extended Euclid; x is nonzero mod p
    cdef long long a = x % p
    cdef long long b = p
    cdef long long u = 1
    cdef long long v = 0
    cdef long long q, t
    while b != 0:
        q = a // b
        t = a - q * b
        a = b
        b = t
        t = u - q * v
        u = v
        v = t
    u %= p
    if u < 0:
        u += p
    return u


def rref(a, long long p):
    """Reduced row echelon form over GF(p); returns (reduced copy, pivots)."""
    cdef cnp.ndarray[cnp.int64_t, ndim=2] m = np.array(a, dtype=np.int64, order="C", copy=True)
    cdef Py_ssize_t rows = m.shape[0]
    cdef Py_ssize_t cols = m.shape[1]
    cdef Py_ssize_t r = 0
    cdef Py_ssize_t i, j, c, k
    cdef long long inv, f, x
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(cols):
                x = m[r, j]
                m[r, j] = m[k, j]
                m[k, j] = x
        inv = _inv_mod(m[r, c], p)
        if inv != 1:
            for j in range(c, cols):
                m[r, j] = (m[r, j] * inv) % p
        for i in range(rows):
            if i != r and m[i, c] != 0:
                f = m[i, c]
                for j in range(c, cols):
                    # cdivision gives C-style %, so renormalize to [0, p)
                    x = (m[i, j] - f * m[r, j]) % p
                    if x < 0:
                        x += p
                    m[i, j] = x
        pivots.append(c)
        r += 1
    return np.asarray(m), pivots


def matmul(a, b, long long p):
    """Exact (a @ b) mod p with periodic reduction of the accumulator."""
    cdef cnp.ndarray[cnp.int64_t, ndim=2] aa = np.ascontiguousarray(a, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] bb = np.ascontiguousarray(b, dtype=np.int64)
    cdef Py_ssize_t n = aa.shape[0]
    cdef Py_ssize_t kk = aa.shape[1]
    cdef Py_ssize_t mm = bb.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out = np.zeros((n, mm), dtype=np.int64)
    cdef long long cap = (p - 1) * (p - 1)
    cdef long long step
    if cap == 0:
        cap = 1
    step = 4611686018427387904 // cap  # 2^62
    if step < 1:
        step = 1
    cdef long long acc
    cdef Py_ssize_t i, j, t, cnt
    for i in range(n):
        for j in range(mm):
            acc = 0
            cnt = 0
            for t in range(kk):
                acc += aa[i, t] * bb[t, j]
                cnt += 1
                if cnt == step:
                    acc %= p
                    cnt = 0
            acc %= p
            if acc < 0:
                acc += p
            out[i, j] = acc
    return np.asarray(out)
