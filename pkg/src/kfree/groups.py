"""Permutation groups via a base and strong generating set.

``PermGroup`` wraps a deterministic Schreier-Sims stabilizer chain.  It gives
exact order, membership by sifting, and element enumeration through the chain
(capped at ``MAX_ENUMERATION`` elements).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import factorial
from typing import Iterable, Iterator, Sequence

from .perm import CycleType, Perm, parse_perm

MAX_ENUMERATION = 10**7


class GroupTooLarge(ValueError):
    pass


def _mul(p: tuple, q: tuple) -> tuple:
    return tuple(q[x] for x in p)


def _inv(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


class _Level:
    __slots__ = ("base", "gens", "trans")

    def __init__(self, base: int):
        self.base = base
        self.gens: list[tuple] = []
        self.trans: dict[int, tuple] = {}

    def rebuild(self, ident: tuple) -> None:
        trans = {self.base: ident}
        queue = [self.base]
        for x in queue:
            u = trans[x]
            for s in self.gens:
                y = s[x]
                if y not in trans:
                    trans[y] = _mul(u, s)
                    queue.append(y)
        self.trans = trans


class PermGroup:
    """A permutation group of degree n given by generators."""

    def __init__(self, degree: int, generators: Iterable[Perm] = ()):
        gens = list(generators)
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
        self.degree = degree
        self.generators: tuple[Perm, ...] = tuple(g for g in gens if not g.is_identity())
        self._ident = tuple(range(degree))
        self._levels: list[_Level] = []
        for g in self.generators:
            residue, _ = self._sift(g.img, 0)
            if residue != self._ident:
                self._add(0, g.img)

    # -- Schreier-Sims -------------------------------------------------
    def _sift(self, g: tuple, start: int) -> tuple[tuple, int]:
        for i in range(start, len(self._levels)):
            lev = self._levels[i]
            x = g[lev.base]
            u = lev.trans.get(x)
            if u is None:
                return g, i
            g = _mul(g, _inv(u))
        return g, len(self._levels)

    def _add(self, i: int, g: tuple) -> None:
        if i == len(self._levels):
            moved = next(x for x in range(self.degree) if g[x] != x)
            self._levels.append(_Level(moved))
        lev = self._levels[i]
        lev.gens.append(g)
        lev.rebuild(self._ident)
        for x, u in list(lev.trans.items()):
            for s in list(lev.gens):
                us = _mul(u, s)
                schreier = _mul(us, _inv(lev.trans[us[lev.base]]))
                if schreier == self._ident:
                    continue
                residue, _ = self._sift(schreier, i + 1)
                if residue != self._ident:
                    self._add(i + 1, residue)

    # -- basic queries -------------------------------------------------
    @cached_property
    def order(self) -> int:
        out = 1
        for lev in self._levels:
            out *= len(lev.trans)
        return out

    @property
    def base(self) -> list[int]:
        return [lev.base + 1 for lev in self._levels]

    def __contains__(self, p: Perm) -> bool:
        if p.degree != self.degree:
            return False
        residue, _ = self._sift(p.img, 0)
        return residue == self._ident

    def contains(self, p: Perm) -> bool:
        return p in self

    @cached_property
    def is_transitive(self) -> bool:
        if self.degree <= 1:
            return True
        seen = {0}
        queue = [0]
        for x in queue:
            for g in self.generators:
                y = g.img[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen) == self.degree

    def is_trivial(self) -> bool:
        return self.order == 1

    def elements(self) -> Iterator[Perm]:
        """Every element exactly once, via the transversals of the chain."""
        if self.order > MAX_ENUMERATION:
            raise GroupTooLarge(f"order {self.order} exceeds enumeration cap {MAX_ENUMERATION}")
        transversals = [list(lev.trans.values()) for lev in reversed(self._levels)]
        for combo in itertools.product(*transversals):
            g = self._ident
            for u in combo:
                g = _mul(g, u)
            yield Perm._raw(g)

    def __iter__(self) -> Iterator[Perm]:
        return self.elements()

    def __len__(self) -> int:
        return self.order

    @cached_property
    def cycle_types(self) -> frozenset[CycleType]:
        return frozenset(g.cycle_type() for g in self.elements())

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return all(g in other for g in self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup) or other.degree != self.degree:
            return False
        return self.order == other.order and self.is_subgroup_of(other)

    __hash__ = None

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"PermGroup(degree={self.degree}, order={self.order}, generators=[{gens}])"


def close_group(degree: int, generators: Sequence[Perm]) -> PermGroup:
    return PermGroup(degree, generators)


def generator_index(G: PermGroup) -> int:
    """Smallest e such that the elements of index <= e generate G.

    Any generating set whose elements all have index <= e lies inside that
    set, so this equals the min over generating sets of the max index.
    """
    if G.is_trivial():
        raise ValueError("generator index undefined for the trivial group")
    if not G.is_transitive:
        raise ValueError("generator index is only defined here for transitive groups")
    by_index: dict[int, list[Perm]] = {}
    for g in G.elements():
        by_index.setdefault(g.index(), []).append(g)
    current = PermGroup(G.degree)
    for e in range(1, G.degree):
        added = False
        for g in by_index.get(e, ()):
            if g not in current:
                current = PermGroup(G.degree, current.generators + (g,))
                added = True
                if current.order == G.order:
                    return e
        if added and current.order == G.order:
            return e
    raise AssertionError("elements of index <= n-1 always generate G")


def even_subgroup(G: PermGroup) -> PermGroup:
    """G ∩ A_n, generated by Schreier generators for the sign kernel."""
    odd = next((g for g in G.generators if g.sign() < 0), None)
    if odd is None:
        return G
    reps = [Perm.identity(G.degree), odd]
    gens = []
    for r in reps:
        for s in G.generators:
            rs = r * s
            rep = reps[0] if rs.sign() > 0 else reps[1]
            h = rs * rep.inverse()
            if not h.is_identity():
                gens.append(h)
    return PermGroup(G.degree, gens)


# -- constructions --------------------------------------------------------

def direct_product(G: PermGroup, H: PermGroup) -> PermGroup:
    """G x H acting on pairs, degree deg(G)*deg(H)."""
    if not (G.is_transitive and H.is_transitive):
        raise ValueError("direct product needs transitive factors")
    m, n = G.degree, H.degree
    gens = []
    for g in G.generators:
        gens.append(Perm._raw(tuple(g.img[i] * n + j for i in range(m) for j in range(n))))
    for h in H.generators:
        gens.append(Perm._raw(tuple(i * n + h.img[j] for i in range(m) for j in range(n))))
    return PermGroup(m * n, gens)


def wreath_with_symmetric(G: PermGroup, n: int) -> PermGroup:
    """Imprimitive wreath product G wr S_n of degree k*n.

    Block b (0-based) holds points b*k .. b*k+k-1.  G acts inside block 0 and
    S_n permutes the blocks rigidly.
    """
    if n < 2:
        raise ValueError("wreath product needs n >= 2")
    if not G.is_transitive:
        raise ValueError("base group must be transitive")
    k = G.degree
    N = k * n
    gens = []
    for g in G.generators:
        gens.append(Perm._raw(tuple(g.img[x] if x < k else x for x in range(N))))

    def block_perm(sigma: Sequence[int]) -> Perm:
        return Perm._raw(tuple(sigma[x // k] * k + x % k for x in range(N)))

    swap = list(range(n))
    swap[0], swap[1] = 1, 0
    gens.append(block_perm(swap))
    if n > 2:
        gens.append(block_perm([(b + 1) % n for b in range(n)]))
    return PermGroup(N, gens)


def construct_product(kind: str, G: PermGroup, other: PermGroup | int) -> PermGroup:
    kind = kind.lower()
    if kind == "direct":
        if not isinstance(other, PermGroup):
            raise TypeError("direct product needs a second group")
        return direct_product(G, other)
    if kind in ("wreath", "imprimitivewreath", "imprimitive_wreath"):
        if not isinstance(other, int):
            raise TypeError("wreath product needs the number of blocks")
        return wreath_with_symmetric(G, other)
    raise ValueError(f"unknown product kind {kind!r}")


def symmetric_group(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("n must be positive")
    gens = []
    if n >= 2:
        gens.append(Perm.from_cycles(n, [(1, 2)]))
    if n >= 3:
        gens.append(Perm.from_cycles(n, [tuple(range(1, n + 1))]))
    return PermGroup(n, gens)


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        raise ValueError("alternating group needs n >= 3")
    gens = [Perm.from_cycles(n, [(1, 2, 3)])]
    if n > 3:
        long = tuple(range(1, n + 1)) if n % 2 else tuple(range(2, n + 1))
        gens.append(Perm.from_cycles(n, [long]))
    return PermGroup(n, gens)


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of the n-gon, degree n, order 2n."""
    if n < 3:
        raise ValueError("dihedral group needs n >= 3")
    rot = Perm._raw(tuple((i + 1) % n for i in range(n)))
    refl = Perm._raw(tuple((-i) % n for i in range(n)))
    return PermGroup(n, [rot, refl])


def cyclic_regular(n: int) -> PermGroup:
    if n < 2:
        raise ValueError("cyclic group needs n >= 2")
    return PermGroup(n, [Perm._raw(tuple((i + 1) % n for i in range(n)))])


def c2_wreath_sn(n: int) -> PermGroup:
    return wreath_with_symmetric(symmetric_group(2), n)


def c2_wreath_sn_even(n: int) -> PermGroup:
    return even_subgroup(c2_wreath_sn(n))


def c2_wreath_sn_four_cycles(n: int) -> PermGroup:
    """Subgroup of C2 wr S_n generated by 4-cycles lying over transpositions."""
    if n < 2:
        raise ValueError("n must be >= 2")
    N = 2 * n
    gens = []
    for b in range(n - 1):
        p, q = 2 * b + 1, 2 * b + 3
        gens.append(Perm.from_cycles(N, [(p, q, p + 1, q + 1)]))
    if n > 2:
        p, q = 1, 2 * n - 1
        gens.append(Perm.from_cycles(N, [(p, q, p + 1, q + 1)]))
    return PermGroup(N, gens)


def _projective_line_action(q: int, matrices) -> list[Perm]:
    # points 0..q-1 are field elements, q is infinity
    def act(m, x):
        a, b, c, d = m
        if x == q:
            return q if c % q == 0 else a * pow(c, -1, q) % q
        num, den = (a * x + b) % q, (c * x + d) % q
        return q if den == 0 else num * pow(den, -1, q) % q

    return [Perm._raw(tuple(act(m, x) for x in range(q + 1))) for m in matrices]


def _f2_vectors() -> list[tuple[int, int, int]]:
    return [((v >> 2) & 1, (v >> 1) & 1, v & 1) for v in range(8)]


def _f2_matvec(m, v):
    return tuple(sum(m[i][j] * v[j] for j in range(3)) % 2 for i in range(3))


# elementary transvection and the companion matrix of x^3 + x + 1 generate GL_3(2)
_GL32_GENS = (
    ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
    ((0, 0, 1), (1, 0, 1), (0, 1, 0)),
)


def psl25() -> PermGroup:
    """PSL_2(5) on the 6 points of the projective line over F_5."""
    gens = _projective_line_action(5, [(1, 1, 0, 1), (0, 4, 1, 0)])
    return PermGroup(6, gens)


def psl32() -> PermGroup:
    """PSL_3(2) = GL_3(2) on the 7 nonzero vectors of F_2^3."""
    vecs = [v for v in _f2_vectors() if any(v)]
    pos = {v: i for i, v in enumerate(vecs)}
    gens = [Perm._raw(tuple(pos[_f2_matvec(m, v)] for v in vecs)) for m in _GL32_GENS]
    return PermGroup(7, gens)


def agl32() -> PermGroup:
    """AGL_3(2) on the 8 vectors of F_2^3."""
    vecs = _f2_vectors()
    pos = {v: i for i, v in enumerate(vecs)}
    gens = [Perm._raw(tuple(pos[_f2_matvec(m, v)] for v in vecs)) for m in _GL32_GENS]
    shift = (1, 0, 0)
    gens.append(Perm._raw(tuple(pos[tuple((a + b) % 2 for a, b in zip(v, shift))] for v in vecs)))
    return PermGroup(8, gens)


@dataclass(frozen=True)
class GroupName:
    """Tag for a group from the generator-index classification (plus helpers)."""

    kind: str
    n: int | None = None

    KINDS = (
        "Symmetric", "Alternating", "Dihedral", "CyclicRegular", "C2WrSn",
        "C2WrSnEven", "C2WrSnFourCycle", "PSL25", "PSL32", "AGL32",
    )

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        needs_n = self.kind not in ("PSL25", "PSL32", "AGL32")
        if needs_n and self.n is None:
            raise ValueError(f"{self.kind} needs a parameter n")

    def __str__(self) -> str:
        return self.kind if self.n is None else f"{self.kind}({self.n})"

    @classmethod
    def parse(cls, text: str) -> GroupName:
        text = text.strip()
        aliases = {"S": "Symmetric", "A": "Alternating", "D": "Dihedral", "C": "CyclicRegular"}
        if "(" in text:
            kind, _, rest = text.partition("(")
            n = int(rest.rstrip(")"))
            return cls(aliases.get(kind, kind), n)
        for short, kind in aliases.items():
            if text.startswith(short) and text[len(short):].isdigit():
                return cls(kind, int(text[len(short):]))
        return cls(text)


def named_group(name: GroupName | str) -> PermGroup:
    if isinstance(name, str):
        name = GroupName.parse(name)
    n = name.n
    builders = {
        "Symmetric": lambda: symmetric_group(n),
        "Alternating": lambda: alternating_group(n),
        "Dihedral": lambda: dihedral_group(n),
        "CyclicRegular": lambda: cyclic_regular(n),
        "C2WrSn": lambda: c2_wreath_sn(n),
        "C2WrSnEven": lambda: c2_wreath_sn_even(n),
        "C2WrSnFourCycle": lambda: c2_wreath_sn_four_cycles(n),
        "PSL25": psl25,
        "PSL32": psl32,
        "AGL32": agl32,
    }
    return builders[name.kind]()


def group_from_text(text: str) -> PermGroup:
    """Parse a group file: optional ``degree N`` line, then one generator per line."""
    degree = None
    gens_text = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("degree"):
            degree = int(line.split()[1])
            continue
        gens_text.append(line)
    if degree is None:
        probes = [parse_perm(t) for t in gens_text if not t.startswith("[")]
        listed = [len(t.strip("[]").split(",")) for t in gens_text if t.startswith("[")]
        degree = max([p.degree for p in probes] + listed + [1])
    gens = [parse_perm(t, degree) for t in gens_text]
    return PermGroup(degree, gens)


def order_divides_factorial(G: PermGroup) -> bool:
    return factorial(G.degree) % G.order == 0
