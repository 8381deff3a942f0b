"""Exact field discriminants, ramification shapes and field fingerprints.

For a monic irreducible f with root theta the field discriminant is
disc(f) / [O_K : Z[theta]]^2.  Primes dividing disc(f) once are settled
immediately; the rest go through Dedekind's criterion and, when Z[theta]
is not p-maximal, through Round 2 enlargement (see ``orders``).
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from math import gcd

from . import gfp
from .factor import Factorization, factor_integer, primes_up_to, valuation
from .intpoly import IPoly, discriminant, monic_integral
from .orders import Order, charpoly, rank_mod_p
from .perm import CycleType


class Method(str, Enum):
    TAME_FORMULA = "TameFormula"
    DEDEKIND_MAXIMAL = "DedekindMaximal"
    ROUND2 = "Round2"


class NotSquarefree(ValueError):
    pass


class ConsistencyError(AssertionError):
    """A computed discriminant violated Stickelberger or the parity rule."""


def _as_monic(f: IPoly) -> IPoly:
    if f.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if not f.is_integral():
        raise TypeError("expected an integer polynomial")
    return monic_integral(f)


def _coeffs(f: IPoly) -> list[int]:
    return list(f.coeffs)


# ---------------------------------------------------------------------------
# irreducibility
# ---------------------------------------------------------------------------

def _subset_sums(parts: list[int]) -> set[int]:
    sums = {0}
    for d in parts:
        sums |= {s + d for s in sums}
    return sums


def is_irreducible(f: IPoly, primes: int = 40) -> bool:
    """Irreducibility over Q.

    Degree patterns modulo good primes usually certify irreducibility: a
    rational factor of degree m would show up as a sub-sum m in every
    pattern.  When the patterns cannot exclude every m (groups without an
    n-cycle-like witness, such as V4 quartics) sympy decides.
    """
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    f = f.primitive_part()
    if f.content() != 1 or f.coeffs[0] == 0:
        return False
    D = discriminant(f)
    if D == 0:
        return False
    possible = set(range(1, n))
    seen = 0
    for p in primes_up_to(2000):
        if D % p == 0 or f.lc % p == 0:
            continue
        pattern = gfp.degree_pattern(gfp.monic(gfp.reduce(f.coeffs, p), p), p)
        possible &= _subset_sums(pattern)
        if not possible:
            return True
        seen += 1
        if seen >= primes:
            break
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(f.coeffs)), x, domain="ZZ")
    return bool(poly.is_irreducible)


# ---------------------------------------------------------------------------
# p-local computations
# ---------------------------------------------------------------------------

def dedekind_test(f: IPoly, p: int) -> bool:
    """True iff Z[theta] is p-maximal."""
    f = _as_monic(f)
    if discriminant(f) == 0:
        raise NotSquarefree("Dedekind's criterion needs a squarefree polynomial")
    return _dedekind(_coeffs(f), p)


def _dedekind(cs: list[int], p: int) -> bool:
    fbar = gfp.reduce(cs, p)
    parts = gfp.squarefree_decomposition(fbar, p)
    g: gfp.Poly = [1]
    h: gfp.Poly = [1]
    for part, m in parts:
        g = gfp.mul(g, part, p)
        h = gfp.mul(h, _poly_power(part, m - 1, p), p)
    if all(m == 1 for _, m in parts):
        return True
    # F = (g h - f) / p computed with integer lifts of g and h
    gh = _int_mul(g, h)
    diff = [(gh[i] if i < len(gh) else 0) - (cs[i] if i < len(cs) else 0) for i in range(max(len(gh), len(cs)))]
    if any(c % p for c in diff):
        raise ArithmeticError("lift mismatch in Dedekind test")
    F = gfp.reduce([c // p for c in diff], p)
    common = gfp.gcd(gfp.gcd(F, g, p), h, p) if F else gfp.gcd(g, h, p)
    return gfp.deg(common) == 0


def _poly_power(a: gfp.Poly, k: int, p: int) -> gfp.Poly:
    out: gfp.Poly = [1]
    for _ in range(k):
        out = gfp.mul(out, a, p)
    return out


def _int_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def p_maximal_order(f: IPoly, p: int) -> Order:
    f = _as_monic(f)
    order = Order.equation_order(_coeffs(f), p)
    order.make_p_maximal()
    return order


def pmax_disc_valuation(f: IPoly, p: int) -> tuple[int, int]:
    """(v_p of the field discriminant, v_p of the index of Z[theta])."""
    f = _as_monic(f)
    D = discriminant(f)
    if D == 0:
        raise NotSquarefree("polynomial is not squarefree")
    if D % p:
        return 0, 0
    ind = p_maximal_order(f, p).index_valuation()
    return valuation(D, p) - 2 * ind, ind


# ---------------------------------------------------------------------------
# the discriminant
# ---------------------------------------------------------------------------

@dataclass
class PrimeData:
    valuation: int
    index_valuation: int
    method: Method


@dataclass
class DiscResult:
    poly: IPoly
    poly_disc: int
    field_disc: Factorization
    per_prime: dict[int, PrimeData]
    undetermined: list[int] = field(default_factory=list)
    orders: dict[int, Order] = field(default_factory=dict, repr=False)

    @property
    def value(self) -> int:
        return self.field_disc.value

    def is_k_free(self, k: int) -> bool:
        return not self.undetermined and self.field_disc.is_k_free(k)

    def to_dict(self) -> dict:
        return {
            "poly": str(self.poly),
            "poly_disc": str(self.poly_disc),
            "field_disc": str(self.field_disc.value),
            "factors": json.loads(self.field_disc.to_json()),
            "primes": {
                str(p): {"valuation": d.valuation, "index": d.index_valuation, "method": d.method.value}
                for p, d in sorted(self.per_prime.items())
            },
            "undetermined": self.undetermined,
        }


def field_discriminant(f: IPoly, hints: tuple[int, ...] = ()) -> DiscResult:
    """Signed discriminant of Q[X]/(f) with per-prime provenance.

    ``hints`` are integers likely to share prime factors with disc(f); they
    only speed up factoring.
    """
    f = _as_monic(f)
    D = discriminant(f)
    if D == 0:
        raise NotSquarefree("polynomial is not squarefree")
    fac = factor_integer(D, hints=hints)
    per_prime: dict[int, PrimeData] = {}
    orders: dict[int, Order] = {}
    out_factors = []
    undetermined = []
    for p, e in fac.factors:
        if fac.composite and not _looks_prime(p):
            undetermined.append(p)
            out_factors.append((p, e))
            continue
        if e == 1:
            per_prime[p] = PrimeData(1, 0, Method.TAME_FORMULA)
            out_factors.append((p, 1))
            continue
        if _dedekind(_coeffs(f), p):
            per_prime[p] = PrimeData(e, 0, Method.DEDEKIND_MAXIMAL)
            out_factors.append((p, e))
            continue
        order = Order.equation_order(_coeffs(f), p)
        ind = order.make_p_maximal()
        orders[p] = order
        v = e - 2 * ind
        per_prime[p] = PrimeData(v, ind, Method.ROUND2)
        if v:
            out_factors.append((p, v))
    disc = Factorization(fac.sign, out_factors, bool(undetermined))
    result = DiscResult(f, D, disc, per_prime, undetermined, orders)
    if not undetermined:
        _check(result)
    return result


def _looks_prime(n: int) -> bool:
    from .factor import is_probable_prime

    return is_probable_prime(n)


def _check(res: DiscResult) -> None:
    value = res.field_disc.value
    if value % 4 not in (0, 1):
        raise ConsistencyError(f"Stickelberger fails for {value}")
    for p, data in res.per_prime.items():
        if (valuation(res.poly_disc, p) - data.valuation) % 2:
            raise ConsistencyError(f"parity fails at {p}")
    if (value > 0) != (res.poly_disc > 0):
        raise ConsistencyError("sign mismatch")


# ---------------------------------------------------------------------------
# ramification shape
# ---------------------------------------------------------------------------

class ShapeStatus(str, Enum):
    TAME = "Tame"
    WILD = "Wild"
    UNDETERMINED = "Undetermined"


@dataclass
class RamificationShape:
    prime: int
    parts: list[tuple[int, int]]          # (e_i, f_i), sorted descending
    status: ShapeStatus
    valuation: int

    def tame_exponent(self) -> int:
        return sum((e - 1) * f for e, f in self.parts)

    def as_cycle_type(self) -> CycleType | None:
        """Cycle type of an inertia generator when all e_i share residue degree 1 structure.

        For tame ramification each prime with (e, f) contributes f cycles of
        length e to a generator of inertia.
        """
        if self.status is not ShapeStatus.TAME:
            return None
        lengths: list[int] = []
        for e, fdeg in self.parts:
            lengths.extend([e] * fdeg)
        return CycleType(lengths)


def _shape_from_factorization(g: list[int], p: int) -> list[tuple[int, int]]:
    parts = [(m, gfp.deg(h)) for h, m in gfp.factor(gfp.reduce(g, p), p)]
    return sorted(parts, reverse=True)


def _residue_degrees(order: Order, p: int) -> list[int]:
    """Residue degrees at an unramified p from Frobenius kernel dimensions."""
    n = order.n
    frob = [[v % p for v in row] for row in order.frobenius_matrix(p)]
    dims = {}
    power = [[int(i == j) for j in range(n)] for i in range(n)]
    for d in range(1, n + 1):
        power = [[sum(power[i][k] * frob[k][j] for k in range(n)) % p for j in range(n)] for i in range(n)]
        shifted = [[(power[i][j] - (1 if i == j else 0)) % p for j in range(n)] for i in range(n)]
        dims[d] = n - rank_mod_p(shifted, p)
    # on F_{p^f} the fixed space of Frob^d has dimension gcd(d, f), and
    # gcd(d, f) = sum of phi(e) over e | gcd(d, f); so with N_e the number
    # of primes whose residue degree is divisible by e,
    # dims[d] = sum_{e | d} phi(e) N_e.
    N = {}
    for e in range(1, n + 1):
        acc = sum(_mobius(e // d) * dims[d] for d in range(1, e + 1) if e % d == 0)
        N[e] = acc // _phi(e)
    degrees = []
    for fdeg in range(1, n + 1):
        count = sum(_mobius(m // fdeg) * N[m] for m in range(fdeg, n + 1, fdeg))
        degrees.extend([fdeg] * count)
    return sorted(degrees, reverse=True)


def _phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@lru_cache(maxsize=None)
def _mobius(n: int) -> int:
    out = 1
    m = n
    q = 2
    while q * q <= m:
        if m % q == 0:
            m //= q
            if m % q == 0:
                return 0
            out = -out
        q += 1
    if m > 1:
        out = -out
    return out


def ramification_shape(f: IPoly, p: int, result: DiscResult | None = None, tries: int = 60) -> RamificationShape:
    """Decomposition of p in the field as a list of (e_i, f_i)."""
    f = _as_monic(f)
    D = discriminant(f)
    cs = _coeffs(f)
    if D % p:
        parts = [(1, d) for d in gfp.degree_pattern(gfp.reduce(cs, p), p)]
        return RamificationShape(p, parts, ShapeStatus.TAME, 0)
    if result is not None and p in result.per_prime:
        v = result.per_prime[p].valuation
    else:
        v, _ = pmax_disc_valuation(f, p)
    parts = None
    if dedekind_test(f, p):
        parts = _shape_from_factorization(cs, p)
    else:
        order = (result.orders.get(p) if result else None) or p_maximal_order(f, p)
        if v == 0:
            parts = [(1, d) for d in _residue_degrees(order, p)]
        else:
            rng = random.Random(p)
            for _ in range(tries):
                alpha = order.random_element(rng)
                g = charpoly(order.mult_matrix(alpha))
                dg = discriminant(IPoly(g))
                if dg != 0 and valuation(dg, p) == v:
                    parts = _shape_from_factorization(g, p)
                    break
    if parts is None:
        return RamificationShape(p, [], ShapeStatus.UNDETERMINED, v)
    wild = any(e % p == 0 for e, _ in parts)
    status = ShapeStatus.WILD if wild else ShapeStatus.TAME
    return RamificationShape(p, parts, status, v)


# ---------------------------------------------------------------------------
# fingerprints
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Fingerprint:
    degree: int
    disc: int
    patterns: tuple[tuple[int, ...], ...]

    def key(self) -> str:
        body = ";".join(".".join(map(str, pat)) for pat in self.patterns)
        return f"{self.degree}|{self.disc}|{body}"


FINGERPRINT_PRIMES = 25


def field_fingerprint(f: IPoly, result: DiscResult | None = None) -> Fingerprint:
    """Degree, discriminant and splitting patterns at 25 unramified primes.

    Patterns are field invariants: at a prime p not dividing the field
    discriminant they are the residue degrees of the primes above p.  Equal
    fields give equal fingerprints; the converse can fail.
    """
    f = _as_monic(f)
    result = result or field_discriminant(f)
    if result.undetermined:
        raise ValueError("fingerprint needs a fully determined discriminant")
    disc = result.value
    D = result.poly_disc
    cs = _coeffs(f)
    patterns = []
    p = 1
    while len(patterns) < FINGERPRINT_PRIMES:
        p += 1
        if any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            continue
        if disc % p == 0:
            continue
        if D % p:
            pat = gfp.degree_pattern(gfp.reduce(cs, p), p)
        else:
            order = result.orders.get(p) or p_maximal_order(f, p)
            result.orders[p] = order
            pat = _residue_degrees(order, p)
        patterns.append(tuple(pat))
    return Fingerprint(f.degree, disc, tuple(patterns))
