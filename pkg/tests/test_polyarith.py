import itertools

import numpy as np

from arquiver import _polyarith as pa


def poly_eval(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def brute_irreducible(f, p):
    """No monic divisor of degree 1..deg(f)//2."""
    d = pa.degree(f)
    if d <= 0:
        return False
    for k in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            g = list(tail) + [1]
            if not pa.poly_mod(f, g, p):
                return False
    return True


def test_factor_reconstructs_random_products():
    rng = np.random.default_rng(0)
    for p in (2, 3, 5):
        for _ in range(30):
            # build a product of random monic polynomials with random multiplicities
            f = [1]
            for _ in range(int(rng.integers(1, 4))):
                d = int(rng.integers(1, 4))
                g = [int(c) for c in rng.integers(0, p, size=d)] + [1]
                f = pa.poly_mul(f, pa.poly_pow(g, int(rng.integers(1, 3)), p), p)
            factors = pa.factor(f, p, rng)
            rebuilt = [1]
            for q, m in factors:
                assert q[-1] == 1
                assert brute_irreducible(q, p)
                rebuilt = pa.poly_mul(rebuilt, pa.poly_pow(q, m, p), p)
            assert rebuilt == f


def test_factor_handles_frobenius_powers():
    rng = np.random.default_rng(1)
    # (x^2 + 1)^2 over GF(2) has zero derivative: x^4 + 1 = (x+1)^4
    factors = pa.factor([1, 0, 0, 0, 1], 2, rng)
    assert factors == [([1, 1], 4)]
    # (x^5 - x - 1) over GF(5): derivative -1, irreducible of degree 5
    f = [4, 4, 0, 0, 0, 1]
    factors = pa.factor(f, 5, rng)
    rebuilt = [1]
    for q, m in factors:
        rebuilt = pa.poly_mul(rebuilt, pa.poly_pow(q, m, 5), 5)
    assert rebuilt == f


def test_gcd_and_divmod_roundtrip():
    rng = np.random.default_rng(2)
    p = 5
    for _ in range(50):
        f = pa.trim([int(c) for c in rng.integers(0, p, size=int(rng.integers(1, 8)))])
        g = pa.trim([int(c) for c in rng.integers(0, p, size=int(rng.integers(1, 8)))])
        if not g:
            continue
        q, r = pa.poly_divmod(f, g, p)
        assert pa.poly_add(pa.poly_mul(q, g, p), r, p) == f
        assert pa.degree(r) < pa.degree(g)
