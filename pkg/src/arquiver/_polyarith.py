"""Polynomial arithmetic and factorization over GF(p).

Polynomials are lists of ints in [0, p), ascending degree, no trailing zeros
(the zero polynomial is []).  Everything is deterministic given the rng that
the caller supplies to factor().

Algorithms: squarefree decomposition (with the f' == 0 Frobenius branch),
distinct-degree factorization, Cantor-Zassenhaus equal-degree splitting (odd
p), and the trace-map variant for p = 2.
"""

from __future__ import annotations


def trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f: list[int]) -> int:
    return len(f) - 1  # degree of [] is -1


def poly_add(f, g, p):
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n)])


def poly_sub(f, g, p):
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def poly_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return trim(out)


def poly_divmod(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = degree(g)
    inv = pow(g[-1], p - 2, p)
    q = [0] * max(0, len(f) - dg)
    while degree(f) >= dg:
        k = degree(f) - dg
        c = f[-1] * inv % p
        q[k] = c
        for i in range(len(g)):
            f[k + i] = (f[k + i] - c * g[i]) % p
        trim(f)
    return trim(q), f


def poly_mod(f, g, p):
    return poly_divmod(f, g, p)[1]


def monic(f, p):
    if not f:
        return f
    inv = pow(f[-1], p - 2, p)
    return [c * inv % p for c in f]


def poly_gcd(f, g, p):
    while g:
        f, g = g, poly_mod(f, g, p)
    return monic(f, p)


def poly_pow(f, e, p):
    out = [1]
    base = list(f)
    while e:
        if e & 1:
            out = poly_mul(out, base, p)
        base = poly_mul(base, base, p)
        e >>= 1
    return out


def poly_powmod(f, e, mod, p):
    out = [1]
    base = poly_mod(f, mod, p)
    while e:
        if e & 1:
            out = poly_mod(poly_mul(out, base, p), mod, p)
        base = poly_mod(poly_mul(base, base, p), mod, p)
        e >>= 1
    return out


def derivative(f, p):
    return trim([(i * c) % p for i, c in enumerate(f)][1:])


def squarefree_decomposition(f, p) -> dict[tuple[int, ...], int]:
    """{squarefree monic factor: multiplicity}, factors pairwise coprime."""
    f = monic(f, p)
    if degree(f) < 1:
        return {}
    df = derivative(f, p)
    if not df:
        # f = g(x^p) = g(x)^p over the prime field (Frobenius fixes coefficients)
        g = f[::p]
        return {q: m * p for q, m in squarefree_decomposition(g, p).items()}
    out: dict[tuple[int, ...], int] = {}
    c = poly_gcd(f, df, p)
    w = poly_divmod(f, c, p)[0]
    i = 1
    while degree(w) > 0:
        y = poly_gcd(w, c, p)
        z = poly_divmod(w, y, p)[0]
        if degree(z) > 0:
            out[tuple(z)] = i
        w = y
        c = poly_divmod(c, y, p)[0]
        i += 1
    if degree(c) > 0:
        # leftover c = prod of q^e with p | e; its derivative vanishes, so the
        # recursion's Frobenius branch restores the exact multiplicities
        for q, m in squarefree_decomposition(c, p).items():
            out[q] = out.get(q, 0) + m
    return out


def distinct_degree(f, p) -> list[tuple[list[int], int]]:
    """Split a squarefree monic f into [(product of its degree-d irreducibles, d)]."""
    out = []
    rem = list(f)
    h = [0, 1]  # x
    d = 0
    while degree(rem) > 0:
        d += 1
        if 2 * d > degree(rem):
            out.append((rem, degree(rem)))
            break
        h = poly_powmod(h, p, rem, p)  # x^(p^d) mod rem
        g = poly_gcd(poly_sub(h, [0, 1], p), rem, p)
        if degree(g) > 0:
            out.append((g, d))
            rem = poly_divmod(rem, g, p)[0]
            h = poly_mod(h, rem, p)
    return out


def _random_poly(deg_bound, p, rng):
    return trim([int(c) for c in rng.integers(0, p, size=deg_bound)])


def equal_degree(f, d, p, rng) -> list[list[int]]:
    """Cantor-Zassenhaus: split squarefree monic f = product of irreducibles of degree d."""
    n = degree(f)
    if n == d:
        return [monic(f, p)]
    while True:
        a = _random_poly(n, p, rng)
        if degree(a) < 1:
            continue
        g = poly_gcd(a, f, p)
        if 0 < degree(g) < n:
            break
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1)) mod f
            t = list(a)
            b = list(a)
            for _ in range(d - 1):
                b = poly_powmod(b, 2, f, p)
                t = poly_add(t, b, p)
            g = poly_gcd(t, f, p)
        else:
            b = poly_powmod(a, (p**d - 1) // 2, f, p)
            g = poly_gcd(poly_sub(b, [1], p), f, p)
        if 0 < degree(g) < n:
            break
    rest = poly_divmod(f, g, p)[0]
    return equal_degree(g, d, p, rng) + equal_degree(rest, d, p, rng)


def factor(f, p, rng) -> list[tuple[list[int], int]]:
    """Full factorization of a nonconstant f into monic irreducibles.

    Returns [(irreducible, multiplicity)], sorted for determinism.
    """
    pieces: dict[tuple[int, ...], int] = {}
    for sq, mult in squarefree_decomposition(f, p).items():
        for prod, d in distinct_degree(list(sq), p):
            for irr in equal_degree(prod, d, p, rng):
                key = tuple(irr)
                pieces[key] = pieces.get(key, 0) + mult
    return [(list(q), m) for q, m in sorted(pieces.items(), key=lambda kv: (len(kv[0]), kv[0]))]
