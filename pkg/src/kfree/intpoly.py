"""Exact polynomials over Z and over Z[t] (and deeper nestings).

``IPoly`` is a dense univariate polynomial whose coefficients are Python ints
or, recursively, ``IPoly`` objects in another variable.  A bivariate cover
polynomial F(t, X) is an ``IPoly`` in X with ``IPoly``-in-t coefficients.

Everything is exact.  Resultants use the subresultant PRS, which needs only
ring operations plus exact division, so the same code serves Z, Z[t] and
Z[u][X].
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

Coeff = Union[int, "IPoly"]


def _is_zero(c) -> bool:
    return c == 0


def _exquo(a, b):
    """Exact quotient a / b in the coefficient ring."""
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{a} is not divisible by {b}")
        return q
    if isinstance(a, int):
        if a == 0:
            return 0
        if isinstance(b, IPoly) and b.degree == 0:
            return _exquo(a, b.coeffs[0])
        raise ArithmeticError("cannot divide a constant by a non-constant polynomial")
    return a.exquo(b)


class IPoly:
    """Dense univariate polynomial, ascending coefficients."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[Coeff] = (), var: str = "X"):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs: tuple = tuple(cs)
        self.var = var

    # -- construction helpers -------------------------------------------
    @classmethod
    def x(cls, var: str = "X") -> IPoly:
        return cls((0, 1), var)

    @classmethod
    def const(cls, c: Coeff, var: str = "X") -> IPoly:
        return cls((c,), var)

    @classmethod
    def from_roots(cls, roots: Sequence[int], var: str = "X") -> IPoly:
        out = cls((1,), var)
        for r in roots:
            out = out * cls((-r, 1), var)
        return out

    # -- basic properties --------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Coeff:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, i: int) -> Coeff:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    # -- ring operations -----------------------------------------------------
    def _lift(self, other) -> IPoly:
        if isinstance(other, IPoly) and other.var == self.var:
            return other
        if isinstance(other, (int, IPoly)):
            return IPoly((other,), self.var)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return IPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return IPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int) or (isinstance(other, IPoly) and other.var != self.var):
            if _is_zero(other):
                return IPoly((), self.var)
            return IPoly([c * other for c in self.coeffs], self.var)
        if not isinstance(other, IPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IPoly((), self.var)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if _is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return IPoly(out, self.var)

    def __rmul__(self, other):
        if isinstance(other, int) or isinstance(other, IPoly):
            if _is_zero(other):
                return IPoly((), self.var)
            return IPoly([other * c for c in self.coeffs], self.var)
        return NotImplemented

    def __pow__(self, k: int) -> IPoly:
        if k < 0:
            raise ValueError("negative power")
        result = IPoly((1,), self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, IPoly) and other.var == self.var:
            return self.coeffs == other.coeffs
        if isinstance(other, (int, IPoly)):
            if not self.coeffs:
                return other == 0
            return len(self.coeffs) == 1 and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash((self.var, self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- division --------------------------------------------------------------
    def exquo(self, other) -> IPoly:
        """Exact division; raises ArithmeticError when inexact."""
        if not isinstance(other, IPoly) or other.var != self.var:
            return IPoly([_exquo(c, other) for c in self.coeffs], self.var)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        db = other.degree
        lb = other.lc
        q = [0] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1 - db, -1, -1):
            c = rem[i + db]
            if _is_zero(c):
                continue
            qc = _exquo(c, lb)
            q[i] = qc
            for j, b in enumerate(other.coeffs):
                rem[i + j] = rem[i + j] - qc * b
        if any(not _is_zero(c) for c in rem):
            raise ArithmeticError("inexact polynomial division")
        return IPoly(q, self.var)

    def pseudo_rem(self, other: IPoly) -> IPoly:
        """lc(other)^(deg self - deg other + 1) * self mod other."""
        db = other.degree
        lb = other.lc
        rem = list(self.coeffs)
        delta = len(rem) - 1 - db
        if delta < 0:
            return self
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            rem = [x * lb for x in rem]
            if not _is_zero(c):
                for j, b in enumerate(other.coeffs):
                    rem[i - db + j] = rem[i - db + j] - c * b
            rem.pop()
        return IPoly(rem, self.var)

    def divmod_q(self, other: IPoly) -> tuple[IPoly, IPoly]:
        """Division over Q (coefficients become Fractions when needed)."""
        rem = [Fraction(c) for c in self.coeffs]
        db = other.degree
        lb = Fraction(other.lc)
        q = [Fraction(0)] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1 - db, -1, -1):
            c = rem[i + db]
            if c == 0:
                continue
            qc = c / lb
            q[i] = qc
            for j, b in enumerate(other.coeffs):
                rem[i + j] -= qc * b
        return IPoly(_demote(q), self.var), IPoly(_demote(rem[:max(db, 0)]), self.var)

    # -- calculus and evaluation ---------------------------------------------
    def derivative(self) -> IPoly:
        return IPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, g: IPoly) -> IPoly:
        acc = IPoly((), g.var)
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def map_coeffs(self, fn) -> IPoly:
        return IPoly([fn(c) for c in self.coeffs], self.var)

    def homogeneous_value(self, a: int, b: int, degree: int | None = None) -> int:
        """b^d * self(a/b) for the homogenisation of degree d (default deg self)."""
        d = self.degree if degree is None else degree
        acc = 0
        bp = 1
        powers_b = []
        for _ in range(d + 1):
            powers_b.append(bp)
            bp *= b
        ap = 1
        for i, c in enumerate(self.coeffs):
            acc += c * ap * powers_b[d - i]
            ap *= a
        return acc

    # -- integer content ---------------------------------------------------------
    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c if isinstance(c, int) else c.content())
        return g

    def primitive_part(self) -> IPoly:
        """Divide by the content and make the leading coefficient positive."""
        if self.is_zero():
            return self
        c = self.content()
        out = self.exquo(c) if c != 1 else self
        lead = out.lc
        while isinstance(lead, IPoly):
            lead = lead.lc
        return -out if lead < 0 else out

    def monic_q(self) -> IPoly:
        lc = Fraction(self.lc)
        return IPoly(_demote([Fraction(c) / lc for c in self.coeffs]), self.var)

    # -- display -------------------------------------------------------------------
    def __repr__(self) -> str:
        return f"IPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def _demote(values):
    return [int(v) if isinstance(v, Fraction) and v.denominator == 1 else v for v in values]


# ---------------------------------------------------------------------------
# resultants and discriminants
# ---------------------------------------------------------------------------

def resultant(f: IPoly, g: IPoly):
    """Res(f, g) by the subresultant PRS; lives in the coefficient ring."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if f.var != g.var:
        raise ValueError("variable mismatch")
    m, n = f.degree, g.degree
    if n == 0:
        return g.lc ** m
    if m == 0:
        return f.lc ** n
    sign = 1
    A, B = f, g
    if m < n:
        A, B = g, f
        if (m * n) % 2:
            sign = -1
    scale = 1
    if A.is_integral() and B.is_integral():
        ca, cb = A.content(), B.content()
        scale = ca ** B.degree * cb ** A.degree
        A, B = A.exquo(ca), B.exquo(cb)
    g_, h = 1, 1
    while True:
        da, db = A.degree, B.degree
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        R = A.pseudo_rem(B)
        if R.is_zero():
            return 0
        A = B
        B = R.exquo(g_ * h ** delta)
        g_ = A.lc
        if delta == 0:
            pass
        elif delta == 1:
            h = g_
        else:
            h = _exquo(g_ ** delta, h ** (delta - 1))
        if B.degree == 0:
            da = A.degree
            if da == 1:
                last = B.lc
            else:
                last = _exquo(B.lc ** da, h ** (da - 1))
            return sign * scale * last


def discriminant(f: IPoly):
    """(-1)^(n(n-1)/2) Res(f, f') / lc(f), exact in the coefficient ring."""
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    res = resultant(f, f.derivative())
    out = _exquo(res, f.lc)
    return -out if (n * (n - 1) // 2) % 2 else out


def discriminant_in_x(F: IPoly):
    return discriminant(F)


def sylvester_matrix(f: IPoly, g: IPoly) -> list[list]:
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return rows


def bareiss_det(mat: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    a = [row[:] for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# gcd and squarefree factorisation over Z / Q
# ---------------------------------------------------------------------------

def gcd_poly(f: IPoly, g: IPoly) -> IPoly:
    """Primitive gcd of two integer polynomials (positive leading coeff)."""
    if f.is_zero():
        return g.primitive_part()
    if g.is_zero():
        return f.primitive_part()
    a, b = f.primitive_part(), g.primitive_part()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = a.pseudo_rem(b)
        a = b
        b = r.primitive_part() if not r.is_zero() else r
    if a.degree == 0:
        return IPoly((1,), f.var)
    return a.primitive_part()


def squarefree_factorization(f: IPoly) -> list[tuple[IPoly, int]]:
    """Yun's algorithm over Q; returns primitive parts with multiplicities.

    The product of ``p**m`` equals ``f`` up to a rational constant.  Parts
    are pairwise coprime and squarefree; constants give an empty list.
    """
    if f.is_zero():
        raise ValueError("squarefree factorisation of zero")
    if f.degree < 1:
        return []
    f = f.primitive_part()
    df = f.derivative()
    a = gcd_poly(f, df)
    b = _exquo_q(f, a)
    c = _exquo_q(df, a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = gcd_poly(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = _exquo_q(b, a)
        c = _exquo_q(d, a)
        d = c - b.derivative()
        i += 1
    return out


def _exquo_q(f: IPoly, g: IPoly) -> IPoly:
    """f / g over Q, rescaled to a primitive integer polynomial times content."""
    q, r = f.divmod_q(g)
    if not r.is_zero():
        raise ArithmeticError("inexact rational division")
    den = 1
    for c in q.coeffs:
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    return IPoly([int(c * den) for c in q.coeffs], f.var)


def squarefree_part(f: IPoly) -> IPoly:
    """Primitive radical: product of the squarefree parts."""
    out = IPoly((1,), f.var)
    for p, _ in squarefree_factorization(f):
        out = out * p
    return out.primitive_part()


def is_squarefree(f: IPoly) -> bool:
    return all(m == 1 for _, m in squarefree_factorization(f))


def integer_roots(f: IPoly) -> list[int]:
    """Integer roots with multiplicity of an integer polynomial."""
    roots = []
    g = f.primitive_part()
    while g.degree > 0 and g.coeffs[0] == 0:
        roots.append(0)
        g = IPoly(g.coeffs[1:], g.var)
    if g.degree < 1:
        return roots
    c0 = abs(g.coeffs[0])
    lead = abs(g.lc)
    candidates = set()
    for d in _divisors(c0):
        candidates.update((d, -d))
    for r in sorted(candidates):
        if lead % 1 == 0:
            while g.degree > 0 and g(r) == 0:
                roots.append(r)
                g = g.exquo(IPoly((-r, 1), g.var))
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    from .factor import factor_integer

    fac = factor_integer(n)
    if fac.composite:
        raise ValueError("cannot enumerate divisors of an incompletely factored integer")
    divs = [1]
    for p, e in fac.factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs


# ---------------------------------------------------------------------------
# specialisation of bivariate polynomials
# ---------------------------------------------------------------------------

def t_degree(F: IPoly) -> int:
    return max((c.degree if isinstance(c, IPoly) else (0 if c != 0 else -1)) for c in F.coeffs)


def specialize(F: IPoly, a: int, b: int = 1) -> IPoly:
    """Primitive integer polynomial proportional to F(a/b, X)."""
    if b == 0:
        raise ValueError("affine specialisation needs b != 0")
    d = max(t_degree(F), 0)
    out = []
    for c in F.coeffs:
        if isinstance(c, IPoly):
            out.append(c.homogeneous_value(a, b, d))
        else:
            out.append(c * b**d)
    g = IPoly(out, F.var)
    if g.is_zero() or g.degree < 1:
        raise ValueError(f"degenerate fibre at t0 = {a}/{b}")
    return g.primitive_part()


def specialization_scale(F: IPoly, a: int, b: int = 1) -> tuple[int, int]:
    """(d, content): specialize(F) = b^d F(a/b, X) / content."""
    d = max(t_degree(F), 0)
    out = []
    for c in F.coeffs:
        out.append(c.homogeneous_value(a, b, d) if isinstance(c, IPoly) else c * b**d)
    g = IPoly(out, F.var)
    cont = g.content()
    lead = g.lc
    return d, cont if lead > 0 else -cont


def monic_integral(f: IPoly) -> IPoly:
    """Monic integer polynomial generating the same field: lc^(n-1) f(Y/lc)."""
    n = f.degree
    lead = f.lc
    if lead == 1:
        return f
    if lead == -1:
        return -f
    out = [f.coeffs[i] * lead ** (n - 1 - i) for i in range(n)] + [1]
    return IPoly(out, f.var)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

def format_poly(f: IPoly) -> str:
    if f.is_zero():
        return "0"
    terms = []
    for i in range(f.degree, -1, -1):
        c = f.coeffs[i]
        if _is_zero(c):
            continue
        mono = "" if i == 0 else (f.var if i == 1 else f"{f.var}^{i}")
        if isinstance(c, IPoly) and c.degree > 0:
            inner = format_poly(c)
            body = f"({inner})" if len(c.coeffs) - c.coeffs.count(0) > 1 else inner
            coef_txt = body
            sign = "+"
            if body.startswith("-") and not body.startswith("("):
                sign, coef_txt = "-", body[1:]
            text = coef_txt + ("*" + mono if mono else "")
        else:
            val = c.coeffs[0] if isinstance(c, IPoly) else c
            sign = "-" if val < 0 else "+"
            mag = abs(val)
            if mono:
                text = mono if mag == 1 else f"{mag}*{mono}"
            else:
                text = str(mag)
        terms.append((sign, text))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, text in terms[1:]:
        out += f" {sign} {text}"
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*^()/]))")


class _Parser:
    def __init__(self, text: str, outer: str, inner: str | None):
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"unexpected character at {pos} in {text!r}")
            num, name, op = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif name is not None:
                self.tokens.append(("var", name))
            else:
                self.tokens.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0
        self.outer = outer
        self.inner = inner

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        val = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"trailing tokens after position {self.i}")
        return val

    def expr(self):
        kind, val = self.peek()
        neg = False
        if kind == "op" and val in "+-":
            self.take()
            neg = val == "-"
        acc = self.term()
        if neg:
            acc = -acc
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if val == "+" else acc - rhs
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.power()
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                acc = acc * self.power()
            else:
                return acc

    def power(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k, e = self.take()
            if k != "num":
                raise ValueError("exponent must be a non-negative integer")
            return base**e
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return IPoly((val,), self.outer)
        if kind == "var":
            if val == self.outer:
                return IPoly((0, 1), self.outer)
            if self.inner is not None and val == self.inner:
                return IPoly((IPoly((0, 1), self.inner),), self.outer)
            raise ValueError(f"unknown variable {val!r}")
        if kind == "op" and val == "(":
            inner = self.expr()
            k, v = self.take()
            if v != ")":
                raise ValueError("missing closing parenthesis")
            return inner
        if kind == "op" and val == "-":
            return -self.atom()
        raise ValueError(f"unexpected token {val!r}")


def _as_outer(v, outer: str):
    if isinstance(v, IPoly) and v.var == outer:
        return v
    return IPoly((v,), outer)


def parse_poly(text: str, var: str = "X", param: str | None = None) -> IPoly:
    """Parse ``X^4 - X^2 - 6`` or, with ``param='t'``, ``X^2 - t``.

    With a parameter the result is an IPoly in ``var`` whose coefficients are
    IPolys in ``param`` (a constant coefficient stays an int).
    """
    out = _as_outer(_Parser(text, var, param).parse(), var)
    if param is None:
        return out
    return _normalize_bivariate(out, param)


def parse_univariate(text: str, var: str) -> IPoly:
    return parse_poly(text, var)


def _normalize_bivariate(F: IPoly, param: str) -> IPoly:
    cs = []
    for c in F.coeffs:
        if isinstance(c, IPoly):
            cs.append(c if c.degree > 0 else (c.coeffs[0] if c.coeffs else 0))
        else:
            cs.append(c)
    return IPoly(cs, F.var)


def to_bivariate(F: IPoly, param: str) -> IPoly:
    """Make every coefficient an IPoly in ``param`` (ints are promoted)."""
    return IPoly([c if isinstance(c, IPoly) else IPoly((c,), param) for c in F.coeffs], F.var)


def param_name(F: IPoly, default: str = "t") -> str:
    for c in F.coeffs:
        if isinstance(c, IPoly):
            return c.var
    return default


def swap_variables(F: IPoly, param: str) -> IPoly:
    """Rewrite F in Z[param][X] as an element of Z[X][param]."""
    d = max(t_degree(F), 0)
    rows = []
    for j in range(d + 1):
        row = []
        for c in F.coeffs:
            if isinstance(c, IPoly):
                row.append(c.coeff(j))
            else:
                row.append(c if j == 0 else 0)
        rows.append(IPoly(row, F.var))
    return IPoly(rows, param)
