"""Slow, independent reference implementations used only by the tests."""
from __future__ import annotations

from fractions import Fraction
from itertools import product as cartesian

import sympy

from kfree.perm import Perm


def closure(degree: int, gens) -> set[tuple[int, ...]]:
    """All group elements by breadth-first multiplication."""
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    gens = [g.img for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[i] for i in x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def index_of(img) -> int:
    seen = [False] * len(img)
    cycles = 0
    for s in range(len(img)):
        if not seen[s]:
            cycles += 1
            x = s
            while not seen[x]:
                seen[x] = True
                x = img[x]
    return len(img) - cycles


def gi_bruteforce(degree: int, gens) -> int:
    elems = closure(degree, [Perm(g) if not isinstance(g, Perm) else g for g in gens])
    for e in range(1, degree):
        small = [Perm(x) for x in elems if index_of(x) <= e and index_of(x) > 0]
        if len(closure(degree, small)) == len(elems):
            return e
    raise AssertionError


def det_fraction(mat) -> int:
    """Gaussian elimination over Q."""
    m = [[Fraction(x) for x in row] for row in mat]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for k in range(c, n):
                m[r][k] -= f * m[c][k]
    assert det.denominator == 1
    return int(det)


def sympy_disc(coeffs) -> int:
    x = sympy.Symbol("x")
    return int(sympy.discriminant(sympy.Poly(list(reversed(coeffs)), x)))


def sympy_resultant(a, b) -> int:
    x = sympy.Symbol("x")
    return int(sympy.resultant(sympy.Poly(list(reversed(a)), x), sympy.Poly(list(reversed(b)), x)))


def all_pairs(xs, ys):
    return list(cartesian(xs, ys))


def transformed_poly(f_coeffs, g_coeffs) -> list[int]:
    """Characteristic polynomial of g(theta) over Q, theta a root of monic f (ascending)."""
    x, y = sympy.symbols("x y")
    f = sum(c * y**i for i, c in enumerate(f_coeffs))
    g = sum(c * y**i for i, c in enumerate(g_coeffs))
    r = sympy.Poly(sympy.resultant(f, x - g, y), x)
    cs = [int(c) for c in reversed(r.all_coeffs())]
    if cs[-1] < 0:
        cs = [-c for c in cs]
    return cs
