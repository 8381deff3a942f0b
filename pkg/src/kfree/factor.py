"""Integer factorisation: trial division, Miller-Rabin, Pollard-Brent rho.

Factorisations of discriminants drive every k-free verdict, so results
carry a ``composite`` flag: when rho gives up within its effort budget the
unsplit cofactor is kept as a (non-prime) factor and the flag is raised.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterable

_SMALL_PRIMES: list[int] = []


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return [i for i, v in enumerate(flags) if v]


_SMALL_PRIMES = _sieve(10_000)
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def primes_up_to(limit: int) -> list[int]:
    if limit <= _SMALL_PRIMES[-1]:
        return [p for p in _SMALL_PRIMES if p <= limit]
    return _sieve(limit)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with the first 13 prime bases.

    Deterministic below 3.3e24; a strong probable-prime test above that.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:60]:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    c = max(n + 1, 2)
    while not is_probable_prime(c):
        c += 1
    return c


def _brent(n: int, budget: int, rng: random.Random) -> int | None:
    """One Pollard-Brent run; returns a nontrivial factor or None."""
    if n % 2 == 0:
        return 2
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    m = 128
    g = r = q = 1
    x = ys = y
    steps = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r *= 2
        steps += r
        if steps > budget:
            return None
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
    return g if g != n else None


@dataclass
class Factorization:
    """sign * prod p^e.  ``composite`` marks an unsplit cofactor."""

    sign: int
    factors: list[tuple[int, int]]
    composite: bool = False

    @property
    def value(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def max_exponent(self) -> int:
        return max((e for _, e in self.factors), default=0)

    def is_k_free(self, k: int) -> bool:
        return all(e < k for _, e in self.factors)

    def radical(self) -> int:
        return math.prod(p for p, _ in self.factors)

    def to_json(self) -> str:
        body = {"sign": self.sign, "factors": [[p, e] for p, e in self.factors]}
        if self.composite:
            body["composite"] = True
        return json.dumps(body, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> Factorization:
        d = json.loads(text)
        return cls(d["sign"], [(int(p), int(e)) for p, e in d["factors"]], bool(d.get("composite", False)))

    def __str__(self) -> str:
        if not self.factors:
            return str(self.sign)
        body = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)
        return ("-" if self.sign < 0 else "") + body


def factor_integer(
    n: int,
    hints: Iterable[int] = (),
    effort: int = 2_000_000,
    seed: int = 1,
) -> Factorization:
    """Factor ``n``; ``hints`` are integers sharing factors with ``n``.

    Hint gcds are split off first, which is how factors of the branch-point
    values mu_i(t0) reach the discriminant cheaply.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    counts: dict[int, int] = {}
    composite = False
    rng = random.Random(seed)

    def pull(p: int, m: int) -> int:
        while m % p == 0:
            m //= p
            counts[p] = counts.get(p, 0) + 1
        return m

    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        if n % p == 0:
            n = pull(p, n)
    if 1 < n <= _SMALL_PRIMES[-1] ** 2:
        counts[n] = counts.get(n, 0) + 1
        n = 1

    pending = [n] if n > 1 else []
    for h in hints:
        h = abs(int(h))
        if h < 2:
            continue
        nxt = []
        for m in pending:
            g = gcd(m, h)
            if 1 < g < m:
                nxt.extend([g, m // g])
            else:
                nxt.append(m)
        pending = nxt

    while pending:
        # smallest first, so primes split off by hints are divided out of
        # the larger pieces before any of those reaches Pollard rho
        pending.sort(reverse=True)
        m = pending.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            counts[m] = counts.get(m, 0) + 1
            pending = [pull(m, x) for x in pending]
            continue
        r = isqrt(m)
        if r * r == m:
            pending.extend([r, r])
            continue
        # split against known primes first; hints may have produced repeats
        hit = next((p for p in counts if m % p == 0), None)
        if hit is not None:
            pending.append(pull(hit, m))
            continue
        d = None
        for _ in range(8):
            d = _brent(m, effort, rng)
            if d:
                break
        if not d:
            counts[m] = counts.get(m, 0) + 1
            composite = True
            continue
        pending.extend([d, m // d])

    # merge factors that are powers of each other's pieces (e.g. from hints)
    merged: dict[int, int] = {}
    for p, e in counts.items():
        merged[p] = merged.get(p, 0) + e
    return Factorization(sign, sorted(merged.items()), composite)


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def squarefree_part(fac: Factorization) -> int:
    """s(N): product of the primes dividing N exactly once."""
    return math.prod(p for p, e in fac.factors if e == 1)


def squarefree_kernel(n: int) -> int:
    """Signed squarefree class of n (n divided by its largest square)."""
    fac = factor_integer(n)
    return fac.sign * math.prod(p for p, e in fac.factors if e % 2)


class IncompleteFactorization(ValueError):
    pass


@dataclass(frozen=True)
class IntegerProfile:
    is_k_free: bool
    squarefree_part: int
    metric: float


def integer_profile(fac: Factorization | int, k: int) -> IntegerProfile:
    """k-freeness, s(N) and the metric log(|N|/s(N)) / log|N|.

    The metric is 0 exactly for squarefree N and 1 exactly for squarefull N.
    It is the only floating point quantity in the package.
    """
    if isinstance(fac, int):
        fac = factor_integer(fac)
    if fac.composite:
        raise IncompleteFactorization("factorisation has an unsplit composite part")
    if k < 1:
        raise ValueError("k must be positive")
    m = abs(fac.value)
    s = squarefree_part(fac)
    metric = 0.0 if m == 1 else math.log(m // s) / math.log(m)
    return IntegerProfile(fac.is_k_free(k), s, metric)
