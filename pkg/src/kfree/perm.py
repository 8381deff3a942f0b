"""Permutations, cycle types and the index statistic.

Points are 1-based at every public boundary (parsing, printing, ``images``);
internally a permutation is a tuple of 0-based images, ``img[i]`` being the
image of point ``i``.

Products follow the "apply left factor first" convention: ``(p * q)(i) =
q(p(i))``.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable, Sequence


class Perm:
    """An explicit bijection of {1..n}."""

    __slots__ = ("img",)

    def __init__(self, img: Sequence[int]):
        img = tuple(img)
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"not a permutation of 0..{len(img) - 1}: {img}")
        self.img = img

    @classmethod
    def _raw(cls, img: tuple[int, ...]) -> Perm:
        p = object.__new__(cls)
        p.img = img
        return p

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> Perm:
        """Build from 1-based one-line notation, ``[2, 1, 3]`` swaps 1 and 2."""
        return cls([i - 1 for i in images])

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Perm:
        """Build from 1-based cycles; the cycles are composed left to right."""
        img = list(range(n))
        for cyc in cycles:
            cyc = [c - 1 for c in cyc]
            if len(set(cyc)) != len(cyc):
                raise ValueError(f"repeated point in cycle {cyc}")
            if cyc and max(cyc) >= n or any(c < 0 for c in cyc):
                raise ValueError(f"cycle {cyc} out of range for degree {n}")
            step = list(range(n))
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                step[a] = b
            img = [step[x] for x in img]
        return cls._raw(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.img)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.img)

    def __call__(self, point: int) -> int:
        return self.img[point - 1] + 1

    def __mul__(self, other: Perm) -> Perm:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        o = other.img
        return Perm._raw(tuple(o[x] for x in self.img))

    def __pow__(self, k: int) -> Perm:
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> Perm:
        inv = [0] * len(self.img)
        for i, x in enumerate(self.img):
            inv[x] = i
        return Perm._raw(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.img))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, 1-based, each starting at its smallest point."""
        seen = [False] * len(self.img)
        out = []
        for start in range(len(self.img)):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x + 1)
                x = self.img[x]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> CycleType:
        return CycleType(len(c) for c in self.cycles(include_fixed=True))

    def index(self) -> int:
        return self.degree - len(self.cycles(include_fixed=True))

    def order(self) -> int:
        return self.cycle_type().order

    def sign(self) -> int:
        return -1 if self.index() % 2 else 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.img == other.img

    def __hash__(self) -> int:
        return hash(self.img)

    def __repr__(self) -> str:
        return f"Perm({format_cycles(self)!r}, degree={self.degree})"

    def __str__(self) -> str:
        return format_cycles(self)


@dataclass(frozen=True, init=False)
class CycleType:
    """Multiset of cycle lengths, stored in non-increasing order."""

    lengths: tuple[int, ...]

    def __init__(self, lengths: Iterable[int]):
        lengths = tuple(sorted((int(x) for x in lengths), reverse=True))
        if any(x < 1 for x in lengths):
            raise ValueError("cycle lengths must be positive")
        object.__setattr__(self, "lengths", lengths)

    @property
    def degree(self) -> int:
        return sum(self.lengths)

    @property
    def index(self) -> int:
        return self.degree - len(self.lengths)

    @property
    def order(self) -> int:
        return lcm(*self.lengths) if self.lengths else 1

    def is_even(self) -> bool:
        return self.index % 2 == 0

    def __iter__(self):
        return iter(self.lengths)

    def __len__(self) -> int:
        return len(self.lengths)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.lengths)) + "]"


def cycle_type_and_index(p: Perm) -> tuple[CycleType, int]:
    ct = p.cycle_type()
    return ct, ct.index


def product_cycle_type(x: CycleType, y: CycleType) -> CycleType:
    """Cycle type of ``(g, h)`` in the product action of degree deg(x)*deg(y).

    A pair of cycles of lengths e and f splits into gcd(e, f) cycles of
    length lcm(e, f).
    """
    out: list[int] = []
    for e in x.lengths:
        for f in y.lengths:
            out.extend([lcm(e, f)] * gcd(e, f))
    return CycleType(out)


def power_cycle_type(ct: CycleType, k: int) -> CycleType:
    """Cycle type of the k-th power of an element of type ``ct``."""
    if k < 1:
        raise ValueError("k must be positive")
    out: list[int] = []
    for length in ct.lengths:
        g = gcd(length, k)
        out.extend([length // g] * g)
    return CycleType(out)


def product_action(g: Perm, h: Perm) -> Perm:
    """The permutation (g, h) acting on pairs; pair (i, j) is point i*n + j."""
    m, n = g.degree, h.degree
    return Perm._raw(tuple(g.img[i] * n + h.img[j] for i in range(m) for j in range(n)))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, degree: int | None = None) -> Perm:
    """Parse ``(1 2)(3 4 5)`` or ``[2,1,4,5,3]``.

    For cycle notation without ``degree`` the degree is the largest point
    mentioned.
    """
    s = text.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise ValueError(f"unterminated image list: {text!r}")
        body = s[1:-1].strip()
        images = [int(x) for x in re.split(r"[,\s]+", body) if x]
        if degree is not None and degree != len(images):
            raise ValueError(f"expected {degree} images, got {len(images)}")
        return Perm.from_images(images)
    if s in ("", "()", "1", "id", "e"):
        if degree is None:
            raise ValueError("identity needs an explicit degree")
        return Perm.identity(degree)
    leftover = _CYCLE_RE.sub("", s).strip()
    if leftover:
        raise ValueError(f"could not parse permutation {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(s):
        pts = [int(x) for x in re.split(r"[,\s]+", body.strip()) if x]
        if pts:
            cycles.append(pts)
    top = max((max(c) for c in cycles), default=0)
    if degree is None:
        degree = top
    elif top > degree:
        raise ValueError(f"point {top} exceeds degree {degree}")
    return Perm.from_cycles(degree, cycles)


def format_cycles(p: Perm) -> str:
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def cycle_type_counts(perms: Iterable[Perm]) -> Counter:
    return Counter(p.cycle_type() for p in perms)
