"""Covers with branch data, bad primes, and ramification prediction.

A cover is one defining polynomial F(t, X) plus analytic branch data: for
each branch point an irreducible-or-not primitive polynomial mu(t) whose
roots are the branch points of that datum (or ``None`` for t = infinity),
the inertia order e and the cycle type of an inertia generator.

For a coprime pair (a, b) and a prime p outside the bad set S0, p ramifies
in the specialisation at t0 = a/b exactly when some mu_i(a, b) has p-adic
valuation nu > 0 with e_i not dividing nu.  The inertia group is then
generated by sigma_i^gcd(nu, e_i) and the tame discriminant exponent is
the index of that power.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import Iterable, Sequence

from .discverify import field_discriminant, is_irreducible, pmax_disc_valuation
from .factor import factor_integer, primes_up_to, valuation
from .groups import GroupName
from .intpoly import (
    IPoly,
    discriminant,
    format_poly,
    monic_integral,
    param_name,
    parse_poly,
    resultant,
    specialize,
    squarefree_factorization,
)
from .perm import CycleType, power_cycle_type


class CoverError(ValueError):
    """Branch data does not match the defining polynomial."""


class BranchPointError(ValueError):
    pass


class DegenerateFibre(ValueError):
    pass


@dataclass(frozen=True)
class BranchDatum:
    mu: IPoly | None               # None means the point at infinity (mu = Y)
    e: int
    cycle_type: CycleType
    label: str = ""

    def __post_init__(self):
        if self.e < 2:
            raise CoverError(f"inertia order must be >= 2 (got {self.e})")
        if self.cycle_type.order != self.e:
            raise CoverError(
                f"cycle type {self.cycle_type} has order {self.cycle_type.order}, not {self.e}"
            )

    @property
    def is_infinite(self) -> bool:
        return self.mu is None

    @property
    def is_rational(self) -> bool:
        return self.mu is None or self.mu.degree == 1

    @property
    def index(self) -> int:
        return self.cycle_type.index

    def value(self, a: int, b: int) -> int:
        """mu(a, b) for the homogenised mu."""
        if self.mu is None:
            return b
        return self.mu.homogeneous_value(a, b)

    def to_dict(self) -> dict:
        return {
            "mu": "infinity" if self.mu is None else format_poly(self.mu),
            "e": self.e,
            "cycle_type": list(self.cycle_type.lengths),
            "label": self.label,
        }

    @classmethod
    def from_dict(cls, d: dict, param: str = "t") -> BranchDatum:
        mu_txt = str(d["mu"]).strip()
        mu = None if mu_txt.lower() in ("infinity", "inf", "oo") else parse_poly(mu_txt, param)
        return cls(mu, int(d["e"]), CycleType(d["cycle_type"]), d.get("label", ""))


@dataclass
class Cover:
    F: IPoly
    branch: list[BranchDatum]
    bad_primes: frozenset[int]
    group_hint: GroupName | None = None
    apparent: list[IPoly] = field(default_factory=list)
    param: str = "t"
    disc_t: IPoly | None = field(default=None, repr=False)

    @property
    def degree(self) -> int:
        return self.F.degree

    @property
    def sum_finite_index(self) -> int:
        """Sum over finite branch points: deg(mu_i) * ind(sigma_i)."""
        return sum(b.mu.degree * b.index for b in self.branch if b.mu is not None)

    @property
    def alpha_star(self) -> float:
        return 1.0 / self.sum_finite_index

    def finite_branch(self) -> list[BranchDatum]:
        return [b for b in self.branch if b.mu is not None]

    def to_dict(self) -> dict:
        return {
            "F": format_poly(self.F),
            "param": self.param,
            "branch": [b.to_dict() for b in self.branch],
            "apparent": [format_poly(a) for a in self.apparent],
            "bad_primes": sorted(self.bad_primes),
            "group_hint": None if self.group_hint is None else str(self.group_hint),
            "sum_finite_index": self.sum_finite_index,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: dict) -> Cover:
        param = d.get("param", "t")
        F = parse_poly(d["F"], "X", param)
        branch = [BranchDatum.from_dict(b, param) for b in d["branch"]]
        apparent = [parse_poly(a, param) for a in d.get("apparent", [])]
        hint = d.get("group_hint")
        cover = build_cover(
            F, branch, apparent=apparent,
            group_hint=GroupName.parse(hint) if hint else None,
            extra_bad=d.get("bad_primes", ()), param=param,
        )
        return cover

    @classmethod
    def from_json(cls, text: str) -> Cover:
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# construction and the bad-prime recipe
# ---------------------------------------------------------------------------

def _prime_divisors(n: int) -> set[int]:
    n = abs(n)
    if n <= 1:
        return set()
    fac = factor_integer(n)
    if fac.composite:
        raise CoverError(f"could not factor {n} while computing bad primes")
    return set(fac.primes())


def _disc_t(F: IPoly, param: str) -> IPoly:
    D = discriminant(F)
    if not isinstance(D, IPoly):
        D = IPoly((D,), param)
    if D.is_zero():
        raise CoverError("F is inseparable in X")
    return D


def build_cover(
    F: IPoly,
    branch: Sequence[BranchDatum],
    apparent: Sequence[IPoly] = (),
    group_hint: GroupName | None = None,
    extra_bad: Iterable[int] = (),
    param: str | None = None,
) -> Cover:
    """Check the branch data against disc_t(F) and attach the bad primes.

    ``apparent`` lists factors of disc_t(F) that are not branch points
    (singularities of the model).  The radical of disc_t(F) must be the
    product of the finite mu's and the apparent factors.
    """
    param = param or param_name(F)
    n = F.degree
    if n < 1:
        raise CoverError("F must have positive degree in X")
    branch = list(branch)
    apparent = [a.primitive_part() for a in apparent if a.degree > 0]
    for b in branch:
        if b.cycle_type.degree != n:
            raise CoverError(f"cycle type {b.cycle_type} is not of degree {n}")
        if b.mu is not None and b.mu != b.mu.primitive_part():
            raise CoverError(f"mu = {b.mu} is not primitive")
    finite = [b.mu for b in branch if b.mu is not None]
    factors = finite + apparent
    for i, g in enumerate(factors):
        if g.degree < 1:
            raise CoverError("branch polynomials must be non-constant")
        if any(m > 1 for _, m in squarefree_factorization(g)):
            raise CoverError(f"{g} is not squarefree")
        for h in factors[i + 1:]:
            if resultant(g, h) == 0:
                raise CoverError(f"{g} and {h} share a root")
    D = _disc_t(F, param)
    # radical of D must equal the product of all declared factors
    rest = D.primitive_part()
    for g in factors:
        m = 0
        while True:
            try:
                q = rest.exquo(g)
            except ArithmeticError:
                break
            rest = q
            m += 1
        if m == 0:
            raise CoverError(f"declared factor {g} does not divide disc_t(F)")
    if rest.degree > 0:
        raise CoverError(f"disc_t(F) has an undeclared factor {rest.primitive_part()}")
    bad = set(extra_bad)
    bad |= _recipe(F, branch, apparent, D)
    return Cover(F, branch, frozenset(bad), group_hint, apparent, param, D)


def _recipe(F: IPoly, branch: Sequence[BranchDatum], apparent: Sequence[IPoly], D: IPoly) -> set[int]:
    n = F.degree
    bad: set[int] = set(primes_up_to(n))
    lead = F.lc
    if isinstance(lead, IPoly):
        bad |= _prime_divisors(lead.content())
        bad |= _prime_divisors(lead.lc)
    else:
        bad |= _prime_divisors(lead)
    polys = [b.mu for b in branch if b.mu is not None] + list(apparent)
    for b in branch:
        bad |= _prime_divisors(b.e)
    for i, g in enumerate(polys):
        bad |= _prime_divisors(g.lc)
        if g.degree >= 2:
            bad |= _prime_divisors(discriminant(g))
        for h in polys[i + 1:]:
            bad |= _prime_divisors(resultant(g, h))
    bad |= _prime_divisors(D.content())
    return bad


def bad_primes(cover: Cover) -> frozenset[int]:
    return cover.bad_primes


# ---------------------------------------------------------------------------
# prediction
# ---------------------------------------------------------------------------

class Verdict(str, Enum):
    KFREE = "KFree"
    NOT_KFREE = "NotKFree"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class RamEntry:
    prime: int
    label: str
    nu: int
    g: int
    cycle_type: CycleType
    exponent: int

    @property
    def inertia_order(self) -> int:
        return self.cycle_type.order


@dataclass
class SpecializationReport:
    t0: tuple[int, int]
    poly: IPoly
    poly_disc: int
    entries: list[RamEntry]
    bad_prime_contacts: frozenset[int]
    bad_primes: frozenset[int]

    def predicted_valuation(self, p: int) -> int:
        if p in self.bad_primes:
            raise ValueError(f"no prediction at bad prime {p}")
        return sum(e.exponent for e in self.entries if e.prime == p)

    def predicted_disc_part(self) -> dict[int, int]:
        return {e.prime: e.exponent for e in self.entries}

    def verdict(self, k: int) -> Verdict:
        """k-free verdict from the prediction alone.

        Good primes are decided by the prediction.  A bad prime can only be
        ruled harmless through the polynomial discriminant, which bounds the
        field valuation from above.
        """
        if any(e.exponent >= k for e in self.entries):
            return Verdict.NOT_KFREE
        for p in self.bad_primes:
            if self.poly_disc % p == 0 and valuation(self.poly_disc, p) >= k:
                return Verdict.UNDETERMINED
        return Verdict.KFREE

    def to_dict(self, ks: Sequence[int] = (2, 3, 4)) -> dict:
        a, b = self.t0
        return {
            "t0": f"{a}/{b}" if b != 1 else str(a),
            "poly": format_poly(self.poly),
            "entries": [
                {"p": e.prime, "branch": e.label, "nu": e.nu, "gcd": e.g,
                 "inertia_cycle_type": list(e.cycle_type.lengths), "exponent": e.exponent}
                for e in self.entries
            ],
            "bad_prime_contacts": sorted(self.bad_prime_contacts),
            "verdicts": {str(k): self.verdict(k).value for k in ks},
        }


def _normalise(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ValueError("b must be nonzero for an affine value")
    g = gcd(a, b)
    a, b = a // g, b // g
    if b < 0:
        a, b = -a, -b
    return a, b


def branch_values(cover: Cover, a: int, b: int = 1) -> list[int]:
    return [d.value(a, b) for d in cover.branch]


def is_branch_point(cover: Cover, a: int, b: int = 1) -> bool:
    a, b = _normalise(a, b)
    return any(d.value(a, b) == 0 for d in cover.branch)


def is_degenerate(cover: Cover, a: int, b: int = 1) -> bool:
    """Branch point or apparent singularity (fibre polynomial not separable)."""
    a, b = _normalise(a, b)
    if any(d.value(a, b) == 0 for d in cover.branch):
        return True
    return any(g.homogeneous_value(a, b) == 0 for g in cover.apparent)


def predict_specialization(cover: Cover, a: int, b: int = 1) -> SpecializationReport:
    a, b = _normalise(a, b)
    values = branch_values(cover, a, b)
    if any(v == 0 for v in values):
        raise BranchPointError(f"t0 = {a}/{b} is a branch point")
    poly = specialize(cover.F, a, b)
    D = discriminant(poly)
    if D == 0:
        raise DegenerateFibre(f"t0 = {a}/{b} gives an inseparable fibre")
    entries: list[RamEntry] = []
    contacts: set[int] = set()
    for datum, v in zip(cover.branch, values):
        if abs(v) == 1:
            continue
        fac = factor_integer(v)
        if fac.composite:
            raise ArithmeticError(f"could not factor mu({a}, {b}) = {v}")
        for p, nu in fac.factors:
            if p in cover.bad_primes:
                contacts.add(p)
                continue
            if nu % datum.e == 0:
                continue
            g = gcd(nu, datum.e)
            ct = power_cycle_type(datum.cycle_type, g)
            entries.append(RamEntry(p, datum.label, nu, g, ct, ct.index))
    for p in cover.bad_primes:
        if b % p == 0:
            contacts.add(p)
    entries.sort(key=lambda e: e.prime)
    return SpecializationReport((a, b), poly, D, entries, frozenset(contacts), cover.bad_primes)


def find_unramified_value(cover: Cover, p: int, bound: int) -> int | None:
    """Smallest |t0| <= bound (0, 1, -1, 2, -2, ...) whose field is unramified at p."""
    for m in range(0, bound + 1):
        for t0 in ((0,) if m == 0 else (m, -m)):
            if is_degenerate(cover, t0):
                continue
            poly = specialize(cover.F, t0)
            if not is_irreducible(poly):
                continue
            v, _ = pmax_disc_valuation(monic_integral(poly), p)
            if v == 0:
                return t0
    return None


def verified_valuations(poly: IPoly, hints: Sequence[int] = ()) -> dict[int, int]:
    """Exact v_p of the field discriminant at every prime dividing disc(poly)."""
    res = field_discriminant(monic_integral(poly), hints=tuple(hints))
    return {p: d.valuation for p, d in res.per_prime.items()}
