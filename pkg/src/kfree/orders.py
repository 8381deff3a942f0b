"""Orders in K = Q[X]/(f) containing Z[theta], and p-maximal enlargement.

An order is kept as an integer matrix ``M`` in lower-triangular Hermite
form together with a denominator ``d = p^k``: basis element ``w_i`` is
``(1/d) * sum_j M[i][j] theta^j`` and row ``i`` has its last nonzero entry
in column ``i``.  Multiplication goes through integer structure constants
``C[i][j]`` (coordinates of ``w_i * w_j`` in the ``w`` basis).

Enlargement is the Pohst-Zassenhaus step: the p-radical ``I`` is the
kernel of a power of Frobenius on ``O/pO``; the new order is ``(1/p) U``
with ``U = {x in O : x I in p I}``.  Linear algebra over F_p is done by
row reduction; the lattice side is integer Hermite reduction.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

MAX_DEGREE = 24


class UnsupportedDegree(ValueError):
    pass


# ---------------------------------------------------------------------------
# linear algebra helpers
# ---------------------------------------------------------------------------

def rref_mod_p(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F_p; returns (nonzero rows, pivot columns)."""
    a = [[x % p for x in r] for r in rows]
    pivots: list[int] = []
    if not a:
        return [], pivots
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                m = a[i][c]
                a[i] = [(x - m * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def left_kernel_mod_p(mat: list[list[int]], p: int) -> list[list[int]]:
    """Basis (in reduced echelon form) of {v : v * mat = 0 mod p}."""
    n = len(mat)
    if n == 0:
        return []
    cols = len(mat[0])
    # v * mat = 0  <=>  mat^T v^T = 0
    trans = [[mat[i][j] % p for i in range(n)] for j in range(cols)]
    red, pivots = rref_mod_p(trans, p)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for fcol in free:
        v = [0] * n
        v[fcol] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[fcol]) % p
        basis.append(v)
    if not basis:
        return []
    red_basis, _ = rref_mod_p(basis, p)
    return red_basis


def rank_mod_p(mat: list[list[int]], p: int) -> int:
    return len(rref_mod_p(mat, p)[0])


def lattice_from_kernel(kernel: list[list[int]], p: int, n: int) -> list[list[int]]:
    """Z-basis of (lift of a subspace of F_p^n) + p Z^n.

    ``kernel`` must be in reduced echelon form; the rows plus p*e_j for
    the non-pivot columns j form a basis.
    """
    pivots = set()
    rows = []
    for r in kernel:
        pc = next(i for i, x in enumerate(r) if x)
        pivots.add(pc)
        rows.append(list(r))
    for j in range(n):
        if j not in pivots:
            e = [0] * n
            e[j] = p
            rows.append(e)
    return rows


def hnf_lower(rows: list[list[int]]) -> list[list[int]]:
    """Lower-triangular Hermite form of a full-rank n x n integer basis.

    Row i of the output has its last nonzero entry, positive, in column i;
    each entry M[i][j] with j < i is reduced into [0, M[j][j]).
    """
    n = len(rows)
    work = [list(r) for r in rows]
    out: list[list[int] | None] = [None] * n
    for col in range(n - 1, -1, -1):
        live = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        if not live:
            raise ValueError("lattice is not of full rank")
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r2 = [x - q * y for x, y in zip(r, piv)]
                if r2[col] != 0:
                    nxt.append(r2)
                else:
                    rest.append(r2)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        out[col] = piv
        work = [r for r in rest if any(r)]
    # reduce entries below the diagonal
    for i in range(n):
        row = out[i]
        for j in range(i - 1, -1, -1):
            q = row[j] // out[j][j]
            if q:
                row = [x - q * y for x, y in zip(row, out[j])]
        out[i] = row
    return out  # type: ignore[return-value]


def charpoly(mat: list[list[int]]) -> list[int]:
    """Characteristic polynomial of an integer matrix (ascending, monic).

    Faddeev-LeVerrier; every division is exact for integer input.
    """
    n = len(mat)
    coeffs = [0] * n + [1]
    m = [[0] * n for _ in range(n)]
    c_prev = 1
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        if k == 1:
            m = [[int(i == j) for j in range(n)] for i in range(n)]
        else:
            am = _matmul(mat, m)
            m = [[am[i][j] + (c_prev if i == j else 0) for j in range(n)] for i in range(n)]
        am = _matmul(mat, m)
        tr = sum(am[i][i] for i in range(n))
        q, r = divmod(-tr, k)
        if r:
            raise ArithmeticError("charpoly: inexact division")
        c_prev = q
        coeffs[n - k] = q
    return coeffs


def _matmul(a, b):
    n, m, l = len(a), len(b), len(b[0])
    bt = list(zip(*b))
    return [[sum(a[i][k] * bt[j][k] for k in range(m)) for j in range(l)] for i in range(n)]


# ---------------------------------------------------------------------------
# orders
# ---------------------------------------------------------------------------

def _polymul_mod(a: list[int], b: list[int], f: list[int]) -> list[int]:
    """(a * b) mod f for monic integer f; result length n."""
    n = len(f) - 1
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            base = k - n
            for j in range(n):
                prod[base + j] -= c * f[j]
        prod[k] = 0
    return prod[:n]


@dataclass
class Order:
    f: list[int]                  # monic, ascending
    p: int
    M: list[list[int]]
    d: int
    C: list[list[list[int]]] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.f) - 1

    @classmethod
    def equation_order(cls, f: list[int], p: int) -> Order:
        n = len(f) - 1
        if n > MAX_DEGREE:
            raise UnsupportedDegree(f"degree {n} exceeds the cap of {MAX_DEGREE}")
        M = [[int(i == j) for j in range(n)] for i in range(n)]
        o = cls(list(f), p, M, 1)
        o._structure()
        return o

    def index_valuation(self) -> int:
        """v_p of [O : Z[theta]]."""
        n = self.n
        k = 0
        d = self.d
        while d % self.p == 0:
            d //= self.p
            k += 1
        v = n * k
        for i in range(n):
            x = self.M[i][i]
            while x % self.p == 0:
                x //= self.p
                v -= 1
        return v

    def coords(self, w: list[int], scale: int) -> list[int]:
        """Basis coordinates of the element (1/scale) * sum w_j theta^j."""
        n = self.n
        d = self.d
        x = [0] * n
        # x M / d = w / scale  =>  x_j = (d w_j / scale - sum_{i>j} x_i M[i][j]) / M[j][j]
        for j in range(n - 1, -1, -1):
            acc = d * w[j]
            s = 0
            for i in range(j + 1, n):
                if x[i]:
                    s += x[i] * self.M[i][j]
            num = acc - scale * s
            den = scale * self.M[j][j]
            q, r = divmod(num, den)
            if r:
                raise ArithmeticError("element is not in the order")
            x[j] = q
        return x

    def _structure(self) -> None:
        n = self.n
        dd = self.d * self.d
        C = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                w = _polymul_mod(self.M[i], self.M[j], self.f)
                c = self.coords(w, dd)
                C[i][j] = c
                C[j][i] = c
        self.C = C  # type: ignore[assignment]

    def theta_vector(self, x: list[int]) -> tuple[list[int], int]:
        """Power-basis numerator and denominator of sum x_i w_i."""
        n = self.n
        w = [0] * n
        for i, c in enumerate(x):
            if c:
                row = self.M[i]
                for j in range(i + 1):
                    w[j] += c * row[j]
        return w, self.d

    # -- arithmetic in coordinates -------------------------------------------
    def mul(self, x: list[int], y: list[int], modulus: int | None = None) -> list[int]:
        n = self.n
        out = [0] * n
        C = self.C
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                cij = C[i][j]
                for k in range(n):
                    if cij[k]:
                        out[k] += ab * cij[k]
        if modulus:
            out = [v % modulus for v in out]
        return out

    def pow_mod(self, x: list[int], e: int, p: int) -> list[int]:
        result = self.one()
        base = [v % p for v in x]
        while e:
            if e & 1:
                result = self.mul(result, base, p)
            base = self.mul(base, base, p)
            e >>= 1
        return result

    def one(self) -> list[int]:
        w = [0] * self.n
        w[0] = 1
        return self.coords(w, 1)

    def mult_matrix(self, x: list[int]) -> list[list[int]]:
        """Row j = coordinates of x * w_j."""
        n = self.n
        rows = []
        for j in range(n):
            e = [0] * n
            e[j] = 1
            rows.append(self.mul(x, e))
        return rows

    def frobenius_matrix(self, p: int) -> list[list[int]]:
        n = self.n
        rows = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            rows.append(self.pow_mod(e, p, p))
        return rows

    # -- Round 2 step -----------------------------------------------------
    def radical_basis(self, with_pivots: bool = False):
        """Z-basis (in w coordinates) of the p-radical I_p of O."""
        p, n = self.p, self.n
        j = 1
        q = p
        while q < n:
            q *= p
            j += 1
        frob = self.frobenius_matrix(p)
        mat = frob
        for _ in range(j - 1):
            mat = [[v % p for v in row] for row in _matmul(mat, frob)]
        ker = left_kernel_mod_p(mat, p)
        basis = lattice_from_kernel(ker, p, n)
        if with_pivots:
            return basis, [next(i for i, x in enumerate(row) if x) for row in ker]
        return basis

    def enlarge(self) -> int:
        """One Pohst-Zassenhaus step.  Returns dim U/pO (0 means p-maximal)."""
        p, n = self.p, self.n
        B, pivots = self.radical_basis(with_pivots=True)
        # B = kernel rows (reduced echelon, pivot columns ``pivots``) followed
        # by p * e_j for the other columns, so coordinates are read off directly
        r = len(pivots)
        others = [j for j in range(n) if j not in set(pivots)]
        cols: list[list[int]] = [[] for _ in range(n)]
        for i in range(n):
            Ci = self.C[i]
            for beta in B:
                v = [0] * n
                for j, b in enumerate(beta):
                    if b:
                        cij = Ci[j]
                        for k in range(n):
                            v[k] += b * cij[k]
                y = [v[c] for c in pivots]
                for c in others:
                    rest = v[c] - sum(y[m] * B[m][c] for m in range(r))
                    q, rem = divmod(rest, p)
                    if rem:
                        raise ArithmeticError("radical is not an O-module")
                    y.append(q)
                cols[i].extend(x % p for x in y)
        ker = left_kernel_mod_p(cols, p)
        if not ker:
            return 0
        U = lattice_from_kernel(ker, p, n)
        # new basis rows in theta coordinates, denominator d * p
        newrows = []
        for u in U:
            w, _ = self.theta_vector(u)
            newrows.append(w)
        d = self.d * p
        H = hnf_lower(newrows)
        while d > 1 and all(x % p == 0 for row in H for x in row):
            H = [[x // p for x in row] for row in H]
            d //= p
        self.M, self.d = H, d
        self._structure()
        return len(ker)

    def make_p_maximal(self, max_steps: int = 200) -> int:
        steps = 0
        while self.enlarge():
            steps += 1
            if steps > max_steps:
                raise RuntimeError("Round 2 did not terminate")
        return self.index_valuation()

    def random_element(self, rng: random.Random, spread: int = 3) -> list[int]:
        return [rng.randint(-spread, spread) for _ in range(self.n)]
