"""Integer lattice kernels: Hermite normal form, exact LLL on a Gram matrix,
and Fincke-Pohst short vector enumeration.

Everything here is exact.  Floats appear only as hints for enumeration
ranges; every accept/reject decision is made on Fractions or integers.
"""
from __future__ import annotations

import math
import os
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


def budget() -> int:
    raw = os.environ.get("QUATREFINE_BUDGET")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_BUDGET


# ---------------------------------------------------------------- HNF

def hnf(rows: Iterable[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form of an integer matrix; zero rows dropped.

    Pivots are positive and entries above a pivot lie in [0, pivot).
    """
    A = [list(r) for r in rows if any(r)]
    if not A:
        return []
    n = len(A[0])
    top = 0
    pivots = []
    for col in range(n):
        live = [i for i in range(top, len(A)) if A[i][col]]
        if not live:
            continue
        while len(live) > 1:
            k = min(live, key=lambda i: abs(A[i][col]))
            pk = A[k]
            pv = pk[col]
            for i in live:
                if i == k:
                    continue
                q = A[i][col] // pv
                if q:
                    ri = A[i]
                    for c in range(col, n):
                        ri[c] -= q * pk[c]
            live = [i for i in live if A[i][col]]
        k = live[0]
        A[top], A[k] = A[k], A[top]
        if A[top][col] < 0:
            A[top] = [-x for x in A[top]]
        pivots.append((top, col))
        top += 1
        if top == len(A):
            break
    A = A[:top]
    for r, col in pivots:
        pv = A[r][col]
        for i in range(r):
            q = A[i][col] // pv
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
    return A


def _clear(vectors: Sequence[Sequence[Fraction | int]]) -> tuple[list[list[int]], int]:
    den = 1
    for v in vectors:
        for x in v:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
    return [[int(x * den) for x in v] for v in vectors], den


class Lattice:
    """A full-rank or partial Z-lattice in Q^n, stored as HNF rows / den."""

    __slots__ = ("rows", "den", "n", "_hash")

    def __init__(self, rows: Sequence[Sequence[int]], den: int = 1):
        H = hnf(rows)
        g = den
        for r in H:
            for x in r:
                if x:
                    g = gcd(g, x)
                    if g == 1:
                        break
        if g > 1:
            H = [[x // g for x in r] for r in H]
            den //= g
        self.rows = tuple(tuple(r) for r in H)
        self.den = den
        self.n = len(rows[0]) if rows else 0
        self._hash = None

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence[Fraction | int]]) -> "Lattice":
        ints, den = _clear(vectors)
        return cls(ints, den)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.den) for x in r] for r in self.rows]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Lattice) and self.den == other.den and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.den, self.rows))
        return self._hash

    def __repr__(self) -> str:
        return f"Lattice(rank={self.rank}, den={self.den})"

    def _pivots(self) -> list[int]:
        out = []
        for r in self.rows:
            out.append(next(i for i, x in enumerate(r) if x))
        return out

    def coordinates(self, v: Sequence[Fraction | int]) -> list[Fraction] | None:
        """Rational coordinates of v in the HNF basis, or None if v is not in the span."""
        w = [Fraction(x) * self.den for x in v]
        coeffs = []
        for r, p in zip(self.rows, self._pivots()):
            c = w[p] / r[p]
            coeffs.append(c)
            if c:
                w = [a - c * b for a, b in zip(w, r)]
        if any(w):
            return None
        return coeffs

    def contains(self, v: Sequence[Fraction | int]) -> bool:
        c = self.coordinates(v)
        return c is not None and all(x.denominator == 1 for x in c)

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(b) for b in other.basis())

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice.from_vectors(self.basis() + other.basis())

    def intersect(self, other: "Lattice") -> "Lattice":
        return (self.dual() + other.dual()).dual()

    def det(self) -> Fraction:
        """Covolume for a full-rank lattice."""
        assert self.rank == self.n
        p = 1
        for i, r in enumerate(self.rows):
            p *= r[i]
        return Fraction(p, self.den ** self.n)

    def index_in(self, bigger: "Lattice") -> int:
        q = self.det() / bigger.det()
        assert q.denominator == 1
        return int(q)

    def dual(self) -> "Lattice":
        """{x : x.b in Z for every b in the lattice} for a full-rank lattice."""
        B = self.basis()
        inv = mat_inverse(B)
        return Lattice.from_vectors(transpose(inv))

    def quotient_reps(self, bigger: "Lattice") -> list[list[Fraction]]:
        """Coset representatives of bigger/self for full-rank self inside bigger."""
        bb = bigger.basis()
        M = [bigger.coordinates(b) for b in self.basis()]
        H = hnf([[int(x) for x in row] for row in M])
        diag = [H[i][i] for i in range(len(H))]
        reps = [[Fraction(0)] * self.n]
        for i, m in enumerate(diag):
            new = []
            for c in range(m):
                for v in reps:
                    new.append([a + c * b for a, b in zip(v, bb[i])])
            reps = new
        return reps


def integral_solutions(W: Sequence[Sequence[Fraction]]) -> Lattice:
    """{z in Z^n : z W in Z^m} for a rational n x m matrix W."""
    n = len(W)
    gens = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(len(W[0])):
        gens.append([W[i][col] for i in range(n)])
    return Lattice.from_vectors(gens).dual()


# ------------------------------------------------------ rational algebra

def transpose(M: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*M)]


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(r, c)) for c in Bt] for r in A]


def mat_inverse(M: Sequence[Sequence[Fraction | int]]) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[p] = A[p], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def det(M: Sequence[Sequence[Fraction | int]]) -> Fraction:
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    out = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            out = -out
        pv = A[c][c]
        out *= pv
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] / pv
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return out


# ------------------------------------------------------------- LLL

def lll_gram(G: Sequence[Sequence[Fraction | int]], delta: Fraction = Fraction(99, 100)):
    """LLL-reduce the positive definite form with Gram matrix G.

    Returns (T, G') with T unimodular (rows express the new basis in the
    old one) and G' = T G T^t.
    """
    n = len(G)
    G = [[Fraction(x) for x in row] for row in G]
    T = [[int(i == j) for j in range(n)] for i in range(n)]

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        bstar = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                s = G[i][j] - sum(mu[j][k] * mu[i][k] * bstar[k] for k in range(j))
                mu[i][j] = s / bstar[j]
            bstar[i] = G[i][i] - sum(mu[i][k] ** 2 * bstar[k] for k in range(i))
        return mu, bstar

    mu, bstar = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                _row_op(G, T, k, j, q)
                mu, bstar = gso()
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            _swap(G, T, k, k - 1)
            mu, bstar = gso()
            k = max(k - 1, 1)
    return T, G


def _row_op(G, T, k, j, q):
    """Replace basis vector k by b_k - q b_j, updating the Gram matrix."""
    n = len(G)
    T[k] = [a - q * b for a, b in zip(T[k], T[j])]
    gjj = G[j][j]
    gkj = G[k][j]
    newkk = G[k][k] - 2 * q * gkj + q * q * gjj
    for m in range(n):
        if m != k:
            G[k][m] = G[k][m] - q * G[j][m]
            G[m][k] = G[k][m]
    G[k][k] = newkk


def _swap(G, T, a, b):
    T[a], T[b] = T[b], T[a]
    G[a], G[b] = G[b], G[a]
    for row in G:
        row[a], row[b] = row[b], row[a]


# ------------------------------------------------------- Fincke-Pohst

def short_vectors(G: Sequence[Sequence[Fraction | int]], bound: Fraction | int,
                  limit: int | None = None) -> list[tuple[list[int], Fraction]]:
    """All nonzero integer x with x G x^t <= bound, as (x, value) pairs.

    G is LLL-reduced internally; returned coordinates refer to the
    original basis.
    """
    n = len(G)
    bound = Fraction(bound)
    T, R = lll_gram(G)
    # q(y) = sum_i Q[i][i] (y_i + sum_{j>i} Q[i][j] y_j)^2
    Q = [[Fraction(x) for x in row] for row in R]
    for i in range(n):
        for j in range(i + 1, n):
            Q[j][i] = Q[i][j]
            Q[i][j] = Q[i][j] / Q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                Q[k][l] -= Q[k][i] * Q[i][l]
    diag = [Q[i][i] for i in range(n)]
    upper = [[Q[i][j] if j > i else Fraction(0) for j in range(n)] for i in range(n)]

    cap = limit if limit is not None else budget()
    nodes = 0
    found: list[tuple[list[int], Fraction]] = []
    y = [0] * n

    def rec(i: int, remaining: Fraction):
        nonlocal nodes
        c = -sum((upper[i][j] * y[j] for j in range(i + 1, n)), Fraction(0))
        s = remaining / diag[i]
        r = math.sqrt(float(s)) if s > 0 else 0.0
        cf = float(c)
        lo = math.floor(cf - r) - 1
        hi = math.ceil(cf + r) + 1
        for x in range(lo, hi + 1):
            nodes += 1
            if nodes > cap:
                raise BudgetExceeded(f"short vector enumeration exceeded {cap} nodes")
            t = diag[i] * (x - c) ** 2
            if t > remaining:
                continue
            y[i] = x
            if i == 0:
                if any(y):
                    found.append((list(y), bound - remaining + t))
            else:
                rec(i - 1, remaining - t)
        y[i] = 0

    rec(n - 1, bound)
    out = []
    for yv, val in found:
        x = [sum(yv[k] * T[k][m] for k in range(n)) for m in range(n)]
        out.append((x, val))
    return out


def quad_value(G: Sequence[Sequence[Fraction | int]], x: Sequence[int]) -> Fraction:
    n = len(x)
    return sum((Fraction(G[i][j]) * x[i] * x[j] for i in range(n) for j in range(n)), Fraction(0))


def content(values: Iterable[int]) -> int:
    return reduce(gcd, values, 0)
