"""Explicit covers with their branch data.

Every constructor returns a ``Cover`` that has passed ``build_cover``: the
declared branch polynomials (plus any apparent singularities of the
model) account for the whole radical of disc_t(F).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import gfp
from .beckmann import BranchDatum, Cover, CoverError, build_cover
from .factor import factor_integer
from .groups import GroupName
from .intpoly import (
    IPoly,
    discriminant,
    parse_poly,
    resultant,
    squarefree_factorization,
    squarefree_part,
)
from .perm import CycleType


class FamilyError(ValueError):
    pass


class ConditionI(FamilyError):
    """Separability modulo the primes dividing n (or n - 1) fails."""


class ConditionII(FamilyError):
    """The normalisation of f (parity of degree, value at 0) fails."""


class ConditionIII(FamilyError):
    """The branch locus of the base cover is not separable."""


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _t(param: str) -> IPoly:
    return IPoly((0, 1), param)


def _as_param(c, param: str) -> IPoly:
    return c if isinstance(c, IPoly) else IPoly((c,), param)


def _flatten(F: IPoly) -> IPoly:
    """Turn constant parameter-polynomial coefficients back into ints."""
    cs = []
    for c in F.coeffs:
        if isinstance(c, IPoly) and c.degree <= 0:
            cs.append(c.coeffs[0] if c.coeffs else 0)
        else:
            cs.append(c)
    out = IPoly(cs, F.var)
    lead = out.lc
    while isinstance(lead, IPoly):
        lead = lead.lc
    return -out if lead < 0 else out


def _primitive_bivariate(F: IPoly) -> IPoly:
    c = F.content()
    return _flatten(F.exquo(c) if c > 1 else F)


def _strip_factor(D: IPoly, g: IPoly) -> tuple[IPoly, int]:
    m = 0
    while True:
        try:
            q = D.exquo(g)
        except ArithmeticError:
            return D, m
        D, m = q, m + 1


def _ct(*parts: tuple[int, int]) -> CycleType:
    lengths: list[int] = []
    for length, count in parts:
        lengths.extend([length] * count)
    return CycleType(lengths)


def _check_split(alphas: Sequence) -> list[Fraction]:
    vals = [Fraction(a) for a in alphas]
    if len(set(vals)) != len(vals):
        raise FamilyError("the alphas must be distinct")
    if len(vals) < 2:
        raise FamilyError("need at least two alphas")
    return vals


def split_polynomial(alphas: Sequence, var: str = "X") -> IPoly:
    """Primitive integer polynomial with the given rational roots."""
    vals = _check_split(alphas)
    out = IPoly((1,), var)
    for a in vals:
        out = out * IPoly((-a.numerator, a.denominator), var)
    return out.primitive_part()


def resultant_in_t(A: Sequence, h: IPoly, param: str, var: str = "X") -> IPoly:
    """Res_T(A(T), X^2 - h(T)) as a polynomial in X over Z[param].

    ``A`` lists the coefficients of A in T (ints or polys in ``param``).
    """
    def lift(c) -> IPoly:
        return IPoly((c,), var)

    A_T = IPoly([lift(c) for c in A], "T")
    B = [lift(-c) for c in h.coeffs]
    B[0] = B[0] + IPoly((0, 0, 1), var)
    B_T = IPoly(B, "T")
    R = resultant(A_T, B_T)
    if not isinstance(R, IPoly):
        raise FamilyError("degenerate resultant")
    return _flatten(IPoly([_as_param(c, param) for c in R.coeffs], var))


def substitute_param(F: IPoly, num: IPoly, den: int = 1) -> IPoly:
    """den^d * F(num / den, X) with d = degree of F in its parameter."""
    d = 0
    for c in F.coeffs:
        if isinstance(c, IPoly):
            d = max(d, c.degree)
    new = []
    for c in F.coeffs:
        cpoly = c if isinstance(c, IPoly) else IPoly((c,), num.var)
        acc = IPoly((), num.var)
        power = IPoly((1,), num.var)
        for i in range(d + 1):
            term = cpoly.coeff(i)
            if term:
                acc = acc + power * (term * den ** (d - i))
            power = power * num
        new.append(acc)
    return _primitive_bivariate(IPoly(new, F.var))


def _compose_univariate(mu: IPoly, num: IPoly, den: int = 1) -> IPoly:
    d = mu.degree
    acc = IPoly((), num.var)
    power = IPoly((1,), num.var)
    for i in range(d + 1):
        acc = acc + power * (mu.coeff(i) * den ** (d - i))
        power = power * num
    return acc


def _apparent(D: IPoly, declared: Iterable[IPoly]) -> list[IPoly]:
    rest = D.primitive_part()
    for g in declared:
        rest, m = _strip_factor(rest, g)
        if m == 0:
            raise CoverError(f"{g} does not divide the discriminant")
    if rest.degree < 1:
        return []
    return [squarefree_part(rest)]


# ---------------------------------------------------------------------------
# split S_n family
# ---------------------------------------------------------------------------

def split_sn_family(alphas: Sequence, param: str = "t") -> Cover:
    """F = f(X) - t with f = prod (X - alpha_i); group S_n."""
    f = split_polynomial(alphas)
    n = f.degree
    F = _flatten(IPoly([_as_param(c, param) for c in f.coeffs], "X") - IPoly((_t(param),), "X"))
    disc = discriminant(F)
    parts = squarefree_factorization(disc)
    if any(m > 1 for _, m in parts):
        raise FamilyError("critical values of f collide; choose different alphas")
    mu = squarefree_part(disc)
    branch = [
        BranchDatum(mu, 2, _ct((2, 1), (1, n - 2)), "transpositions"),
        BranchDatum(None, n, CycleType([n]), "infinity"),
    ]
    return build_cover(F, branch, group_hint=GroupName("Symmetric", n), param=param)


# ---------------------------------------------------------------------------
# quadratic twists of the split family
# ---------------------------------------------------------------------------

@dataclass
class _TwistData:
    F: IPoly
    mu_double: IPoly
    mu_trans: IPoly
    apparent: list[IPoly]
    n: int


def _twist_data(f: IPoly, h: IPoly, A: Sequence, param: str) -> _TwistData:
    n = f.degree
    if h.degree < 1:
        raise FamilyError("h must be non-constant")
    if any(m > 1 for _, m in squarefree_factorization(h)):
        raise FamilyError("h must be separable")
    F = resultant_in_t(A, h, param)
    A_u = IPoly([_as_param(c, param) for c in A], "T")
    crit = discriminant(A_u)
    if any(m > 1 for _, m in squarefree_factorization(crit)):
        raise ConditionIII("critical values of the base cover collide")
    mu_double = squarefree_part(crit)
    mu_trans = squarefree_part(_as_param(resultant(IPoly([_as_param(c, param) for c in h.coeffs], "T"), A_u), param))
    if resultant(mu_double, mu_trans) == 0:
        raise FamilyError("a root of h is a critical point of f")
    D = discriminant(F)
    apparent = _apparent(D, [mu_double, mu_trans])
    return _TwistData(F, mu_double, mu_trans, apparent, n)


def quadratic_twist_compose(f: IPoly, h: IPoly, param: str = "u") -> Cover:
    """Degree-2n cover F(u, X) = Res_T(f(T) - u, X^2 - h(T)); group C2 wr S_n."""
    n = f.degree
    A = [_as_param(c, param) for c in f.coeffs]
    A[0] = A[0] - _t(param)
    data = _twist_data(f, h, A, param)
    inf = CycleType([2 * n]) if h.degree % 2 else CycleType([n, n])
    branch = [
        BranchDatum(data.mu_double, 2, _ct((2, 2), (1, 2 * n - 4)), "double transpositions"),
        BranchDatum(data.mu_trans, 2, _ct((2, 1), (1, 2 * n - 2)), "transpositions"),
        BranchDatum(None, inf.order, inf, "infinity"),
    ]
    return build_cover(data.F, branch, apparent=data.apparent,
                       group_hint=GroupName("C2WrSn", n), param=param)


def a2n_family(f: IPoly, h: IPoly, param: str = "s") -> Cover:
    """The twist cover pulled back along u = b + c s^2.

    b is the single transposition branch value; c is the squarefree
    constant that turns the discriminant into a square, which puts the
    group inside A_2n.
    """
    n = f.degree
    u_name = "u"
    base = quadratic_twist_compose(f, h, u_name)
    trans = next(b for b in base.branch if b.label == "transpositions")
    if trans.mu.degree != 1:
        raise FamilyError("the twist cover has more than one odd finite branch point")
    m1, m0 = trans.mu.coeff(1), trans.mu.coeff(0)
    b = Fraction(-m0, m1)
    D = base.disc_t
    rest, m = _strip_factor(D, trans.mu)
    if m != 1:
        raise FamilyError("unexpected multiplicity at the transposition point")
    parts = squarefree_factorization(rest)
    if any(mult % 2 for _, mult in parts):
        raise FamilyError("discriminant is not a square away from the transposition point")
    Q = IPoly((1,), u_name)
    for g, mult in parts:
        Q = Q * g ** (mult // 2)
    # D = L * (u - b) * Q^2 with L rational; mu_trans = m1 * (u - b)
    c = _squarefree_class(Fraction(D.lc) / (Fraction(Q.lc) ** 2 * m1) * m1 * m1)
    # u = b + c s^2 = (bn + c bd s^2) / bd
    s = IPoly((0, 1), param)
    num = IPoly((b.numerator,), param) + s * s * (c * b.denominator)
    F = substitute_param(base.F, num, b.denominator)
    double = next(x for x in base.branch if x.label == "double transpositions")
    mu_d = _compose_univariate(double.mu, num, b.denominator).primitive_part()
    if any(mult > 1 for _, mult in squarefree_factorization(mu_d)):
        raise FamilyError("pulled-back branch locus is not separable")
    inf_ct = CycleType([n, n])
    branch = [
        BranchDatum(mu_d, 2, _ct((2, 2), (1, 2 * n - 4)), "double transpositions"),
        BranchDatum(None, n, inf_ct, "infinity"),
    ]
    disc = discriminant(F)
    apparent = _apparent(disc, [mu_d])
    return build_cover(F, branch, apparent=apparent,
                       group_hint=GroupName("C2WrSnEven", n), param=param)


def _squarefree_class(q: Fraction) -> int:
    """Squarefree integer c with q * c a rational square."""
    if q == 0:
        raise FamilyError("zero constant")
    sign = -1 if q < 0 else 1
    value = abs(q.numerator) * q.denominator
    fac = factor_integer(value)
    out = 1
    for p, e in fac.factors:
        if e % 2:
            out *= p
    return sign * out


# ---------------------------------------------------------------------------
# Malle's AGL_3(2) octics
# ---------------------------------------------------------------------------

MALLE_TEXT = "X^4*(X^2 + a*X + 2*a)*(X - 2)^2 + t*((a - 5)*(X^2 + X) - 2*a - 2)*(X - 1)^2"


def malle_polynomial(a: int, t: int = 1) -> IPoly:
    """The octic at rational-free integer values of a and t."""
    X = IPoly.x()
    quad = X * X + a * X + 2 * a
    lin = (a - 5) * (X * X + X) - 2 * a - 2
    out = X**4 * quad * (X - 2) ** 2 + t * lin * (X - 1) ** 2
    if out.degree != 8:
        raise FamilyError(f"degree drops at a = {a}, t = {t}")
    return out


def malle_agl32(t: int = 1, param: str = "a") -> Cover:
    """Cover over the a-line at fixed t.

    With t fixed F is linear in a; its discriminant in a is a constant
    times the square of a separable septic, so the finite inertia is a
    product of two transpositions at each of seven points.
    """
    text = MALLE_TEXT.replace("t", str(t)) if t >= 0 else MALLE_TEXT.replace("t*", f"({t})*")
    F = _flatten(parse_poly(text, "X", param))
    if F.degree != 8:
        raise FamilyError("degenerate t")
    D = discriminant(F)
    parts = squarefree_factorization(D)
    branch = []
    for g, m in parts:
        if m != 2:
            raise FamilyError(f"unexpected multiplicity {m} in disc_a")
        branch.append(BranchDatum(g, 2, _ct((2, 2), (1, 4)), "double transpositions"))
    return build_cover(F, branch, group_hint=GroupName("AGL32"), param=param)


# ---------------------------------------------------------------------------
# 4-cycle families
# ---------------------------------------------------------------------------

def _prime_divisors(n: int) -> list[int]:
    return factor_integer(n).primes() if n > 1 else []


def _separable_mod(f: IPoly, p: int) -> bool:
    fb = gfp.reduce(f.coeffs, p)
    if gfp.deg(fb) < f.degree:
        return False
    return gfp.is_squarefree(fb, p)


def lemlast_family(f: IPoly, parity: str | None = None, param: str = "u") -> Cover:
    """Degree-2n covers whose finite inertia is generated by 4-cycles.

    Odd n:  F = Res_T(f(T) - u, X^2 - (-1)^((n-1)/2) f'(T)).
    Even n: F = Res_T(f(T) - u T, X^2 - (-1)^((n-2)/2) (T f'(T) - f(T))).
    """
    n = f.degree
    if f.lc != 1:
        raise ConditionII("f must be monic")
    parity = parity or ("odd" if n % 2 else "even")
    parity = parity.lower()
    if parity not in ("odd", "even"):
        raise ValueError("parity is 'odd' or 'even'")
    if (n % 2 == 1) != (parity == "odd"):
        raise ConditionII(f"degree {n} does not match the {parity} case")
    T = IPoly.x("T")
    fT = IPoly(f.coeffs, "T")
    if parity == "odd":
        for p in _prime_divisors(n):
            if not _separable_mod(f, p):
                raise ConditionI(f"f is not separable modulo {p}")
        sign = -1 if ((n - 1) // 2) % 2 else 1
        h = sign * fT.derivative()
        A = [_as_param(c, param) for c in fT.coeffs]
        A[0] = A[0] - _t(param)
        inf = CycleType([n, n])
    else:
        xf = IPoly((0,) + tuple(f.coeffs), "X")
        for p in _prime_divisors(n - 1):
            if not _separable_mod(xf, p):
                raise ConditionI(f"X f is not separable modulo {p}")
        if f.coeff(0) != (-1) ** (n // 2):
            raise ConditionII(f"f(0) must be {(-1) ** (n // 2)}")
        sign = -1 if ((n - 2) // 2) % 2 else 1
        h = sign * (T * fT.derivative() - fT)
        A = [_as_param(c, param) for c in fT.coeffs]
        A[1] = A[1] - _t(param)
        inf = CycleType([n - 1, n - 1, 1, 1])
    A_u = IPoly(A, "T")
    crit = discriminant(A_u)
    if any(m > 1 for _, m in squarefree_factorization(crit)):
        raise ConditionIII("the discriminant of the base cover is not separable")
    mu = squarefree_part(crit)
    F = resultant_in_t(A, h, param)
    D = discriminant(F)
    apparent = _apparent(D, [mu])
    branch = [
        BranchDatum(mu, 4, _ct((4, 1), (1, 2 * n - 4)), "4-cycles"),
        BranchDatum(None, inf.order, inf, "infinity"),
    ]
    return build_cover(F, branch, apparent=apparent,
                       group_hint=GroupName("C2WrSnFourCycle", n), param=param)


# ---------------------------------------------------------------------------
# Mestre's square-discriminant condition
# ---------------------------------------------------------------------------

def mestre_verify(f: IPoly, g: IPoly, param: str = "t") -> bool:
    """True iff disc_t(f - t g) is a constant times the square of a squarefree poly."""
    if g.is_zero():
        raise ValueError("g must be nonzero")
    if g.degree >= f.degree:
        raise ValueError("need deg g < deg f")
    t = _t(param)
    cs = []
    for i in range(f.degree + 1):
        cs.append(_as_param(f.coeff(i), param) - t * g.coeff(i))
    F = _flatten(IPoly(cs, "X"))
    D = discriminant(F)
    if not isinstance(D, IPoly) or D.degree < 1:
        return False
    parts = squarefree_factorization(D)
    return bool(parts) and all(m == 2 for _, m in parts)


def mestre_search(f: IPoly, degree: int, bound: int) -> list[IPoly]:
    """All g of the given degree with coefficients in [-bound, bound] passing the test."""
    found = []
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=degree + 1):
        if coeffs[-1] == 0:
            continue
        g = IPoly(coeffs, "X")
        if mestre_verify(f, g):
            found.append(g)
    return found
