"""Polynomials over F_p as ascending coefficient lists.

Only what the discriminant and Frobenius code needs: arithmetic, gcd,
squarefree decomposition, distinct-degree factorisation and
Cantor-Zassenhaus equal-degree splitting.
"""
from __future__ import annotations

import random
from typing import Sequence

Poly = list[int]


def trim(a: Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce(coeffs: Sequence[int], p: int) -> Poly:
    return trim([c % p for c in coeffs])


def deg(a: Poly) -> int:
    return len(a) - 1


def add(a: Poly, b: Poly, p: int) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(a: Poly, b: Poly, p: int) -> Poly:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def scale(a: Poly, c: int, p: int) -> Poly:
    return trim([x * c % p for x in a])


def divmod_p(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("division by zero polynomial mod p")
    rem = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(rem) <= db:
        return [], trim(rem)
    q = [0] * (len(rem) - db)
    for i in range(len(rem) - 1 - db, -1, -1):
        c = rem[i + db] * inv % p
        q[i] = c
        if c:
            for j, y in enumerate(b):
                rem[i + j] = (rem[i + j] - c * y) % p
    return trim(q), trim(rem[:db])


def mod(a: Poly, b: Poly, p: int) -> Poly:
    return divmod_p(a, b, p)[1]


def monic(a: Poly, p: int) -> Poly:
    if not a:
        return a
    return scale(a, pow(a[-1], -1, p), p)


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def derivative(a: Poly, p: int) -> Poly:
    return trim([i * c % p for i, c in enumerate(a)][1:])


def powmod(base: Poly, e: int, m: Poly, p: int) -> Poly:
    result: Poly = [1]
    base = mod(base, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        base = mod(mul(base, base, p), m, p)
        e >>= 1
    return result


def _pth_root(a: Poly, p: int) -> Poly:
    # over F_p the Frobenius fixes coefficients, so only exponents shrink
    return trim([a[i] for i in range(0, len(a), p)])


def squarefree_decomposition(a: Poly, p: int) -> list[tuple[Poly, int]]:
    """Monic squarefree, pairwise coprime factors with multiplicities."""
    a = monic(trim(a), p)
    if deg(a) < 1:
        return []
    out: dict[int, Poly] = {}

    def merge(f: Poly, m: int) -> None:
        if deg(f) < 1:
            return
        out[m] = mul(out[m], f, p) if m in out else f

    def rec(f: Poly, mult: int) -> None:
        i = 1
        df = derivative(f, p)
        c = gcd(f, df, p)
        w = divmod_p(f, c, p)[0]
        while deg(w) > 0:
            y = gcd(w, c, p)
            merge(divmod_p(w, y, p)[0], i * mult)
            w = y
            c = divmod_p(c, y, p)[0]
            i += 1
        if deg(c) > 0:
            rec(_pth_root(c, p), mult * p)

    rec(a, 1)
    return sorted(((f, m) for m, f in out.items()), key=lambda t: t[1])


def distinct_degree(a: Poly, p: int) -> list[tuple[Poly, int]]:
    """DDF of a monic squarefree polynomial: (product of degree-d factors, d)."""
    out = []
    f = monic(a, p)
    x: Poly = [0, 1]
    h = x
    d = 0
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if deg(g) > 0:
            out.append((g, d))
            f = divmod_p(f, g, p)[0]
            h = mod(h, f, p)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def equal_degree(a: Poly, d: int, p: int, rng: random.Random | None = None) -> list[Poly]:
    """Split a product of distinct monic degree-d irreducibles."""
    a = monic(a, p)
    n = deg(a)
    if n == d:
        return [a]
    rng = rng or random.Random(0)
    while True:
        r = trim([rng.randrange(p) for _ in range(n)])
        if deg(r) < 1:
            continue
        if p == 2:
            t = r
            acc = r
            for _ in range(d - 1):
                t = mod(mul(t, t, p), a, p)
                acc = add(acc, t, p)
            g = gcd(a, acc, p)
        else:
            e = (p**d - 1) // 2
            g = gcd(a, sub(powmod(r, e, a, p), [1], p), p)
        if 0 < deg(g) < n:
            return equal_degree(g, d, p, rng) + equal_degree(divmod_p(a, g, p)[0], d, p, rng)


def factor(a: Poly, p: int) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicity."""
    out = []
    for f, m in squarefree_decomposition(a, p):
        for g, d in distinct_degree(f, p):
            for h in equal_degree(g, d, p):
                out.append((h, m))
    out.sort(key=lambda t: (deg(t[0]), t[0]))
    return out


def degree_pattern(a: Poly, p: int) -> list[int]:
    """Sorted degrees of the irreducible factors of a squarefree polynomial."""
    pattern = []
    for g, d in distinct_degree(a, p):
        pattern.extend([d] * (deg(g) // d))
    return sorted(pattern, reverse=True)


def is_squarefree(a: Poly, p: int) -> bool:
    a = trim(a)
    return deg(gcd(a, derivative(a, p), p)) == 0 if derivative(a, p) else deg(a) == 0
