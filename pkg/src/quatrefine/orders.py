"""O_F-orders in quaternion algebras over a real quadratic field.

Lattices are stored as integer HNF over the Q-basis
{1, w, i, wi, j, wj, k, wk} of H, where w generates O_F.  Orders carry
their reduced discriminant, and the unit group is recovered by
short-vector enumeration of a twisted trace form.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .lattice import BudgetExceeded, Lattice, budget, det, mat_inverse, mat_mul, short_vectors
from .quadfield import (
    FieldElem, FieldError, FundUnitData, IdealF, PrimeIdealF, fundamental_unit, local_artin,
    mod_three_halves, omega_data, primes_above,
)
from .quatalg import QuatAlgebra, QuatElem, ramification, standard_algebra

Vec = tuple[Fraction, ...]


class OrderError(ValueError):
    """Raised when a basis does not define an order (kind in .kind)."""

    def __init__(self, kind: str, msg: str = ""):
        super().__init__(f"{kind}: {msg}" if msg else kind)
        self.kind = kind


# ------------------------------------------------------------ group tags

@dataclass(frozen=True)
class GroupTag:
    label: str
    order: int

    def __str__(self):
        return self.label

    @property
    def ascii(self) -> str:
        return self.label.replace("†", "dag").replace("‡", "ddag")

    @property
    def is_cyclic(self) -> bool:
        return self.label.startswith("C")


def _tags():
    out = {}
    for n in (1, 2, 3, 4, 5, 6, 8, 10, 12):
        out[f"C{n}"] = GroupTag(f"C{n}", n)
    for n in (2, 3):
        out[f"D{n}"] = GroupTag(f"D{n}", 2 * n)
        out[f"D{n}†"] = GroupTag(f"D{n}†", 2 * n)
        out[f"D{n}‡"] = GroupTag(f"D{n}‡", 2 * n)
    for n in (4, 5, 6, 12):
        out[f"D{n}"] = GroupTag(f"D{n}", 2 * n)
    out["A4"] = GroupTag("A4", 12)
    out["S4"] = GroupTag("S4", 24)
    out["A5"] = GroupTag("A5", 60)
    return out


GROUP_TAGS: dict[str, GroupTag] = _tags()
NONCYCLIC = tuple(GROUP_TAGS[s] for s in ("S4", "D4", "A4", "D6", "D2†", "D2‡", "D3†", "D3‡"))
CYCLIC = tuple(GROUP_TAGS[s] for s in ("C1", "C2", "C3", "C4", "C6"))


def group_tag(label: str) -> GroupTag:
    s = label.replace("ddag", "‡").replace("dag", "†")
    if s not in GROUP_TAGS:
        raise KeyError(f"unknown group {label!r}")
    return GROUP_TAGS[s]


# ------------------------------------------------------ vector arithmetic

def elem_vec(x: QuatElem) -> Vec:
    out = []
    for c in x.coords:
        out.extend(c.omega_coords())
    return tuple(out)


def vec_elem(alg: QuatAlgebra, v: Sequence[Fraction]) -> QuatElem:
    d = alg.d
    return QuatElem(alg, tuple(FieldElem.from_omega(v[2 * n], v[2 * n + 1], d) for n in range(4)))


class _Mult:
    """Sparse structure constants of H on the 8-dimensional Q-basis."""

    _cache: dict = {}

    def __init__(self, alg: QuatAlgebra):
        d = alg.d
        basis = []
        for n in range(4):
            for w in (FieldElem.from_int(1, d), FieldElem.omega(d)):
                cs = [FieldElem.from_int(0, d)] * 4
                cs[n] = w
                basis.append(QuatElem(alg, tuple(cs)))
        self.table = [[[(r, c) for r, c in enumerate(elem_vec(p * q)) if c] for q in basis] for p in basis]
        self.t, self.m = omega_data(d)

    @classmethod
    def of(cls, alg: QuatAlgebra) -> "_Mult":
        key = (alg.a, alg.b)
        if key not in cls._cache:
            cls._cache[key] = cls(alg)
        return cls._cache[key]

    def mul(self, v: Sequence[Fraction], w: Sequence[Fraction]) -> Vec:
        out = [Fraction(0)] * 8
        table = self.table
        for p, vp in enumerate(v):
            if not vp:
                continue
            row = table[p]
            for q, wq in enumerate(w):
                if not wq:
                    continue
                s = vp * wq
                for r, c in row[q]:
                    out[r] += s * c
        return tuple(out)

    def omega_times(self, v: Sequence[Fraction]) -> Vec:
        out = []
        for n in range(4):
            c0, c1 = v[2 * n], v[2 * n + 1]
            out.extend((c1 * self.m, c0 + c1 * self.t))
        return tuple(out)


def _of_span(alg: QuatAlgebra, vecs: Iterable[Sequence[Fraction]]) -> Lattice:
    M = _Mult.of(alg)
    gens = []
    for v in vecs:
        v = tuple(Fraction(x) for x in v)
        gens.append(v)
        gens.append(M.omega_times(v))
    return Lattice.from_vectors(gens)


def _is_integral_vec(alg: QuatAlgebra, v: Sequence[Fraction]) -> bool:
    x = vec_elem(alg, v)
    return x.tr().is_integral() and x.nr().is_integral()


# ------------------------------------------------------------ lattices

@dataclass(frozen=True)
class QuatLattice:
    alg: QuatAlgebra
    lat: Lattice

    @classmethod
    def from_elements(cls, alg: QuatAlgebra, elems: Iterable[QuatElem]) -> "QuatLattice":
        """The O_F-span of the given elements."""
        return cls(alg, _of_span(alg, (elem_vec(x) for x in elems)))

    @property
    def zbasis(self) -> tuple[tuple[int, ...], ...]:
        return self.lat.rows

    @property
    def denom(self) -> int:
        return self.lat.den

    @property
    def rank(self) -> int:
        return self.lat.rank

    def vectors(self) -> list[Vec]:
        return [tuple(r) for r in self.lat.basis()]

    def elements(self) -> list[QuatElem]:
        return [vec_elem(self.alg, v) for v in self.vectors()]

    def contains(self, x: QuatElem) -> bool:
        return self.lat.contains(elem_vec(x))

    def contains_lattice(self, other: "QuatLattice") -> bool:
        return self.lat.contains_lattice(other.lat)

    def conjugate(self, x: QuatElem) -> "QuatLattice":
        xi = x.inverse()
        return QuatLattice(self.alg, Lattice.from_vectors([elem_vec(x * b * xi) for b in self.elements()]))

    def __eq__(self, other):
        return isinstance(other, QuatLattice) and self.alg == other.alg and self.lat == other.lat

    def __hash__(self):
        return hash(self.lat)


def dual_lattice(L: QuatLattice) -> QuatLattice:
    """{x in H : Tr(x L) in O_F}."""
    alg = L.alg
    M = _Mult.of(alg)
    basis_vecs = [tuple(Fraction(int(i == j)) for j in range(8)) for i in range(8)]
    cols = []
    for lam in L.vectors():
        # Tr(e_m lam) for each Q-basis vector e_m, in omega coordinates
        tr0, tr1 = [], []
        for e in basis_vecs:
            prod = M.mul(e, lam)
            tr0.append(2 * prod[0])
            tr1.append(2 * prod[1])
        cols.extend((tr0, tr1))
    return QuatLattice(alg, Lattice.from_vectors(cols).dual())


# ------------------------------------------------------------ orders

@dataclass(eq=False)
class QuatOrder:
    lattice: QuatLattice
    name: str = ""
    _disc: IdealF | None = field(default=None, repr=False)
    _units: "UnitGroup | None" = field(default=None, repr=False)

    @property
    def alg(self) -> QuatAlgebra:
        return self.lattice.alg

    @property
    def d(self) -> int:
        return self.alg.d

    @property
    def disc(self) -> IdealF:
        if self._disc is None:
            self._disc = discriminant(self)
        return self._disc

    @property
    def group_tag(self) -> "GroupTag":
        return reduced_units(self).tag

    def elements(self) -> list[QuatElem]:
        return self.lattice.elements()

    def contains(self, x: QuatElem) -> bool:
        return self.lattice.contains(x)

    def contains_order(self, other: "QuatOrder") -> bool:
        return self.lattice.contains_lattice(other.lattice)

    def is_maximal(self) -> bool:
        return self.disc == ramification(self.alg).disc_H

    def __eq__(self, other):
        return isinstance(other, QuatOrder) and self.lattice == other.lattice

    def __hash__(self):
        return hash(self.lattice)

    def __repr__(self):
        return f"QuatOrder({self.name or '?'}, d={self.d}, alg={self.alg.label()})"


def _closure_products(M: _Mult, vecs: list[Vec]) -> list[Vec]:
    return [M.mul(v, w) for v in vecs for w in vecs]


def make_order(basis: Sequence[QuatElem], alg: QuatAlgebra | None = None, name: str = "") -> QuatOrder:
    """The O_F-span of `basis`, verified to be an order."""
    if alg is None:
        alg = basis[0].alg
    L = QuatLattice.from_elements(alg, basis)
    if L.rank != 8:
        raise OrderError("not-full-rank", "the basis does not span H over F")
    if not L.contains(alg.one()):
        raise OrderError("not-a-ring", "1 is not in the span")
    M = _Mult.of(alg)
    gens = [elem_vec(x) for x in basis]
    for p in _closure_products(M, gens):
        if not L.lat.contains(p):
            raise OrderError("not-a-ring", "the span is not closed under multiplication")
    for v in L.vectors():
        if not _is_integral_vec(alg, v):
            raise OrderError("not-integral", "a basis element has non-integral trace or norm")
    return QuatOrder(L, name)


def _order_from_lattice(L: QuatLattice, name: str = "") -> QuatOrder:
    return QuatOrder(L, name)


def discriminant(O: QuatOrder) -> IdealF:
    """Reduced discriminant: (Steinitz ideal of the coordinates) * 4ab."""
    alg = O.alg
    d = alg.d
    rows = [list(x.coords) for x in O.elements()]
    minors = []
    for S in combinations(range(8), 4):
        m = _det_F([rows[s] for s in S], d)
        if m:
            minors.append(m)
    steinitz = IdealF.from_generators(minors, d)
    return steinitz * IdealF.principal(4 * alg.a * alg.b)


def _det_F(M: list[list[FieldElem]], d: int) -> FieldElem:
    n = len(M)
    A = [row[:] for row in M]
    out = FieldElem.from_int(1, d)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return FieldElem.from_int(0, d)
        if p != c:
            A[c], A[p] = A[p], A[c]
            out = -out
        pv = A[c][c]
        out = out * pv
        inv = pv.inverse()
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] * inv
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return out


def reduced_discriminant_of_algebra(alg: QuatAlgebra) -> IdealF:
    return ramification(alg).disc_H


# --------------------------------------------------------- overorders

def _closure(alg: QuatAlgebra, L: Lattice, ceiling: Lattice) -> Lattice | None:
    """Smallest ring containing L; None if it leaves `ceiling`."""
    M = _Mult.of(alg)
    while True:
        vecs = [tuple(r) for r in L.basis()]
        new = []
        for v in vecs:
            for w in vecs:
                p = M.mul(v, w)
                if not L.contains(p):
                    if not ceiling.contains(p):
                        return None
                    new.append(p)
        if not new:
            return L
        L = Lattice.from_vectors(vecs + new)


def overorders(O: QuatOrder, candidates_in: Lattice | None = None) -> list[QuatOrder]:
    """All orders containing O (O itself included)."""
    alg = O.alg
    top = dual_lattice(O.lattice).lat
    if candidates_in is not None:
        top = top.intersect(candidates_in)
    limit = budget()
    found = {O.lattice.lat: O}
    queue = [O.lattice.lat]
    states = 0
    M = _Mult.of(alg)
    while queue:
        R = queue.pop()
        tried = set()
        for rep in R.quotient_reps(top.intersect(dual_lattice(QuatLattice(alg, R)).lat) if R != O.lattice.lat else top):
            states += 1
            if states > limit:
                raise BudgetExceeded(f"overorder enumeration exceeded {limit} states")
            if all(x.denominator == 1 for x in (R.coordinates(rep) or [Fraction(1, 2)])):
                continue
            if not _is_integral_vec(alg, rep):
                continue
            start = Lattice.from_vectors(R.basis() + [rep, M.omega_times(rep)])
            if start in tried:
                continue
            tried.add(start)
            S = _closure(alg, start, top)
            if S is None or S in found:
                continue
            found[S] = _order_from_lattice(QuatLattice(alg, S))
            queue.append(S)
    return list(found.values())


def maximal_overorders(O: QuatOrder) -> list[QuatOrder]:
    target = ramification(O.alg).disc_H
    if O.disc == target:
        return [O]
    out = [R for R in overorders(O) if R.disc == target]
    return sorted(out, key=lambda R: (R.lattice.lat.den, R.lattice.lat.rows))


def _scaled(L: Lattice, g: FieldElem, alg: QuatAlgebra) -> Lattice:
    gq = QuatElem(alg, (g, FieldElem.from_int(0, alg.d), FieldElem.from_int(0, alg.d), FieldElem.from_int(0, alg.d)))
    return Lattice.from_vectors([elem_vec(gq * vec_elem(alg, v)) for v in L.basis()])


def local_maximal_overorders(O: QuatOrder, P: PrimeIdealF) -> list[QuatOrder]:
    """Overorders of O that are maximal at P and agree with O away from P."""
    alg = O.alg
    d = alg.d
    n = 2 * max(1, O.disc.valuation(P)) + 2
    gens = IdealF.from_dict(d, {P: n}).lattice().basis()
    box = None
    for g in gens:
        gi = FieldElem.from_omega(g[0], g[1], d).inverse()
        part = _scaled(O.lattice.lat, gi, alg)
        box = part if box is None else box.intersect(part)
    target_v = ramification(alg).disc_H.valuation(P)
    out = []
    for R in overorders(O, candidates_in=box):
        if R.disc.valuation(P) == target_v:
            out.append(R)
    return out


# ------------------------------------------------------------ units

@dataclass
class UnitGroup:
    tag: GroupTag
    reps: list[QuatElem]
    orders: list[int]

    def __iter__(self):
        return iter((self.tag, self.reps))


def _pair(alg: QuatAlgebra, x: QuatElem, y: QuatElem) -> FieldElem:
    a, b = alg.a, alg.b
    x0, x1, x2, x3 = x.coords
    y0, y1, y2, y3 = y.coords
    return x0 * y0 - a * x1 * y1 - b * x2 * y2 + a * b * x3 * y3


def _units_of_norm(O: QuatOrder, lam: FieldElem) -> list[QuatElem]:
    """Elements u of O with Nr(u) = 1/lam, via the form Tr_{F/Q}(lam Nr)."""
    alg = O.alg
    els = O.elements()
    n = len(els)
    G = [[Fraction(0)] * n for _ in range(n)]
    for s in range(n):
        for t in range(s, n):
            v = (lam * _pair(alg, els[s], els[t])).trace()
            G[s][t] = G[t][s] = v
    out = []
    for x, val in short_vectors(G, 2):
        u = sum((els[k] * x[k] for k in range(n) if x[k]), alg.one() * 0)
        out.append(u)
    return out


def _canon(v: Vec) -> Vec:
    for c in v:
        if c:
            return v if c > 0 else tuple(-x for x in v)
    return v


def reduced_units(O: QuatOrder, fu: FundUnitData | None = None) -> UnitGroup:
    if O._units is not None:
        return O._units
    alg = O.alg
    fu = fu or fundamental_unit(alg.d)
    eps = fu.eps
    found = _units_of_norm(O, FieldElem.from_int(1, alg.d))
    if fu.norm_sign == 1:
        found += _units_of_norm(O, eps.inverse())
    reps = {}
    for u in found:
        reps[_canon(elem_vec(u))] = u
    keys = sorted(reps)
    one = _canon(elem_vec(alg.one()))
    M = _Mult.of(alg)
    eps_q = alg.one() * eps
    eps2 = eps * eps

    def mul(k1, k2):
        p = vec_elem(alg, M.mul(k1, k2))
        if p.nr() == eps2:
            p = p / eps
        return _canon(elem_vec(p))

    orders = []
    for k in keys:
        x, n = k, 1
        while x != one:
            x = mul(x, k)
            n += 1
            if n > 120:
                raise AssertionError("unit of unexpected order")
        orders.append(n)
    group = [reps[k] for k in keys]
    tag = _classify(len(keys), orders, [reps[k].nr() for k in keys], eps)
    ug = UnitGroup(tag, group, orders)
    O._units = ug
    return ug


def _classify(size: int, orders: list[int], norms: list[FieldElem], eps: FieldElem) -> GroupTag:
    if size in orders:
        return GROUP_TAGS.get(f"C{size}") or GroupTag(f"C{size}", size)
    half = size // 2
    if size >= 4 and size % 2 == 0 and (half in orders or half == 2):
        if size == 4 or size == 6:
            n = half
            invols = [nm for o, nm in zip(orders, norms) if o == 2]
            kind = "†" if all(nm == 1 for nm in invols) else "‡"
            return GROUP_TAGS[f"D{n}{kind}"]
        if half in orders:
            return GROUP_TAGS.get(f"D{half}") or GroupTag(f"D{half}", size)
    return {12: GROUP_TAGS["A4"], 24: GROUP_TAGS["S4"], 60: GROUP_TAGS["A5"]}[size]


def unit_group(O: QuatOrder, fu: FundUnitData | None = None) -> tuple[GroupTag, list[QuatElem]]:
    ug = reduced_units(O, fu)
    return ug.tag, ug.reps


def vigneras_index(O: QuatOrder, fu: FundUnitData | None = None) -> int:
    """[O^x : O_F^x O^1], read off from the norms of the unit representatives."""
    ug = reduced_units(O, fu)
    return 2 if any(u.nr() != 1 for u in ug.reps) else 1


# --------------------------------------------------------- normalizers

def normalizer_membership(x: QuatElem, O: QuatOrder) -> bool:
    if not x.nr():
        raise ZeroDivisionError("zero divisor")
    return O.lattice.conjugate(x) == O.lattice


def conjugate_order(O: QuatOrder, x: QuatElem) -> QuatOrder:
    return QuatOrder(O.lattice.conjugate(x), O.name)


def orbits(orders: Sequence[QuatOrder], gens: Sequence[QuatElem]) -> list[list[QuatOrder]]:
    """Orbits of a finite set of orders under conjugation by the group generated by gens."""
    index = {R.lattice: R for R in orders}
    seen = set()
    out = []
    for R in orders:
        if R.lattice in seen:
            continue
        orbit = [R]
        seen.add(R.lattice)
        stack = [R]
        while stack:
            S = stack.pop()
            for g in gens:
                T = S.lattice.conjugate(g)
                if T not in index:
                    raise AssertionError("conjugate left the set of overorders")
                if T not in seen:
                    seen.add(T)
                    orbit.append(index[T])
                    stack.append(index[T])
        out.append(orbit)
    return out


# -------------------------------------------------------- embeddings

def _subalgebra_lattice(O: QuatOrder, Y: QuatElem) -> Lattice:
    """O meet F(Y), in coordinates (x0, x1, y0, y1) for x + y*Y."""
    alg = O.alg
    d = alg.d
    w = FieldElem.omega(d)
    one = alg.one()
    images = [one, one * w, Y, Y * w]
    Mimg = [list(elem_vec(x)) for x in images]
    Binv = mat_inverse(O.lattice.lat.basis())
    W = mat_mul(Mimg, Binv)
    cols = [[W[r][c] for r in range(4)] for c in range(8)]
    return Lattice.from_vectors(cols).dual()


def optimal_embedding_count(B, O: QuatOrder, fu: FundUnitData | None = None) -> int:
    """m(B, O, O^x): optimal embeddings of the CM order B into O modulo unit conjugation.

    B must expose `gen_trace`, `gen_norm` (FieldElem) and `embedding_lattice` (rank-4
    Lattice in coordinates (x0, x1, y0, y1) of x + y*u for its unit generator u).
    """
    ug = reduced_units(O, fu)
    t, n = B.gen_trace, B.gen_norm
    cands = []
    for u in ug.reps:
        for y in (u, -u):
            if y.tr() == t and y.nr() == n:
                cands.append(y)
    good = [y for y in cands if _subalgebra_lattice(O, y) == B.embedding_lattice]
    keys = {_canon_full(y): y for y in good}
    seen = set()
    count = 0
    for k, y in keys.items():
        if k in seen:
            continue
        count += 1
        for g in ug.reps:
            z = g * y * g.inverse()
            seen.add(_canon_full(z))
    return count


def _canon_full(x: QuatElem) -> Vec:
    return elem_vec(x)


# ---------------------------------------------------- subfield orders

def integral_closure_in(alg: QuatAlgebra, y: QuatElem) -> Lattice:
    """The maximal order of F(y) inside H, y integral and non-central."""
    one = alg.one()
    d = alg.d
    w = FieldElem.omega(d)
    vecs = [elem_vec(x) for x in (one, one * w, y, y * w)]
    L = Lattice.from_vectors(vecs)
    disc = y.tr() * y.tr() - 4 * y.nr()
    nm = abs(disc.norm())
    from sympy import factorint
    ps = sorted(p for p in factorint(nm.numerator))
    grew = True
    while grew:
        grew = False
        for p in ps:
            basis = L.basis()
            for coeffs in _box(p, 4):
                if not any(coeffs):
                    continue
                v = tuple(sum((c * b[m] for c, b in zip(coeffs, basis)), Fraction(0)) / p for m in range(8))
                if L.contains(v):
                    continue
                x = vec_elem(alg, v)
                if x.tr().is_integral() and x.nr().is_integral():
                    L = Lattice.from_vectors(basis + [v])
                    grew = True
                    break
            if grew:
                break
    return L


def _box(p: int, n: int):
    if n == 0:
        yield ()
        return
    for rest in _box(p, n - 1):
        for c in range(p):
            yield rest + (c,)


def _lattice_times(alg: QuatAlgebra, L: Lattice, x: QuatElem, left: bool = True) -> list[Vec]:
    out = []
    for v in L.basis():
        e = vec_elem(alg, v)
        out.append(elem_vec(x * e if left else e * x))
    return out


def _sum_order(alg: QuatAlgebra, A: Lattice, x: QuatElem, name: str) -> QuatOrder:
    """A + A x for a commutative order A, checked to be an order."""
    vecs = [tuple(v) for v in A.basis()] + _lattice_times(alg, A, x, left=False)
    L = QuatLattice(alg, _of_span(alg, vecs))
    return _checked(L, name)


def _checked(L: QuatLattice, name: str) -> QuatOrder:
    alg = L.alg
    if L.rank != 8:
        raise OrderError("not-full-rank", name)
    if not L.contains(alg.one()):
        raise OrderError("not-a-ring", name)
    M = _Mult.of(alg)
    vecs = L.vectors()
    for p in _closure_products(M, vecs):
        if not L.lat.contains(p):
            raise OrderError("not-a-ring", name)
    return QuatOrder(L, name)


def _ideal_times_lattice(alg: QuatAlgebra, I: IdealF, A: Lattice) -> Lattice:
    d = alg.d
    out = []
    for g in I.lattice().basis():
        gq = alg.one() * FieldElem.from_omega(g[0], g[1], d)
        out += _lattice_times(alg, A, gq)
    return Lattice.from_vectors(out)


def conductor_order(alg: QuatAlgebra, y: QuatElem, f: IdealF) -> Lattice:
    """O_F + f O_{F(y)} inside H."""
    OK = integral_closure_in(alg, y)
    base = Lattice.from_vectors([elem_vec(alg.one()), elem_vec(alg.one() * FieldElem.omega(alg.d))])
    return base + _ideal_times_lattice(alg, f, OK)


# ------------------------------------------------ explicit orders

def _dyadic(d: int) -> PrimeIdealF:
    Ps = primes_above(2, d)
    if len(Ps) != 1:
        raise FieldError("2 is split")
    return Ps[0]


def _F(fu: FundUnitData, x, y=0) -> FieldElem:
    return FieldElem(Fraction(x), Fraction(y), fu.d)


MINIMAL_SPECS = {
    # group label -> (algebra tag, condition on fu, basis builder, disc generator)
    "D2†": ("A", None, "2"),
    "D2‡": ("B", "norm+", "2"),
    "D3†": ("C", None, "3"),
    "D3‡": ("D", "norm+", "3"),
    "D4": ("A", "two_eps", "4"),
    "D6": ("C", "three_eps", "6"),
    "A4": ("A", None, "12"),
    "S4": ("A", "two_eps", "24"),
}


def _condition_ok(cond: str | None, fu: FundUnitData) -> bool:
    if cond is None:
        return True
    if cond == "norm+":
        return fu.norm_sign == 1
    if cond == "two_eps":
        return fu.two_eps_square
    if cond == "three_eps":
        return fu.three_eps_square
    raise KeyError(cond)


def _minimal_basis(kind: str, alg: QuatAlgebra, fu: FundUnitData) -> list[QuatElem]:
    one, i, j, k = alg.basis()
    h = Fraction(1, 2)
    if kind == "2":
        return [one, i, j, k]
    if kind == "3":
        return [one, i, (one + j) * h, i * (one + j) * h]
    if kind == "4":
        s = (one + j) * fu.theta
        return [one, i, s, i * s]
    if kind == "6":
        s = (one * 3 + j) * (fu.sigma * h)
        return [one, s, i, i * s]
    if kind == "12":
        return [one, i, j, alg.xi()]
    if kind == "24":
        return [one, (one + i) * fu.theta, (one + j) * fu.theta, alg.xi()]
    raise KeyError(kind)


MINIMAL_DISC = {"2": 4, "3": 3, "4": 2, "6": 1, "12": 2, "24": 1}


def minimal_G_order(G: GroupTag | str, fu: FundUnitData | int, alg: QuatAlgebra | None = None) -> QuatOrder:
    if isinstance(G, str):
        G = group_tag(G)
    if isinstance(fu, int):
        fu = fundamental_unit(fu)
    if G.label not in MINIMAL_SPECS:
        raise OrderError("no-minimal-order", f"{G} is not a noncyclic group with a minimal order")
    tag, cond, kind = MINIMAL_SPECS[G.label]
    if not _condition_ok(cond, fu):
        raise OrderError("condition-not-met", f"{G} needs {cond} (d={fu.d})")
    std = standard_algebra(tag, fu)
    if alg is None:
        alg = std
    elif (alg.a, alg.b) != (std.a, std.b):
        raise OrderError("wrong-algebra", f"{G} lives in the presentation {std.label()}")
    O = make_order(_minimal_basis(kind, alg, fu), alg, name=f"minimal {G}")
    expect = IdealF.principal(FieldElem.from_int(MINIMAL_DISC[kind], fu.d))
    if O.disc != expect:
        raise AssertionError(f"minimal {G} order has discriminant {O.disc}, expected {expect}")
    return O


# Normalizer generators of the minimal orders modulo F^x O^x, with the
# order of the quotient group they generate.
def minimal_normalizer(G: GroupTag | str, alg: QuatAlgebra) -> tuple[list[QuatElem], int]:
    if isinstance(G, str):
        G = group_tag(G)
    one, i, j, k = alg.basis()
    label = G.label
    if label == "D2†":
        return [one + i, one + j], 6
    if label in ("D2‡", "A4"):
        return [one + i], 2
    if label in ("D3†", "D3‡"):
        return [j], 2
    return [], 1


# ----------------------------------------------- case catalogue

@dataclass(frozen=True)
class CaseSpec:
    case_id: str
    algebra: str
    contains: str            # minimal group whose order lies inside
    admissible: Callable[[FundUnitData], bool]
    build: Callable[[QuatAlgebra, FundUnitData], QuatOrder]
    note: str = ""


def _thirds(fu: FundUnitData) -> tuple[int, int]:
    return mod_three_halves(fu.eps.x), mod_three_halves(fu.eps.y)


def _fj_unramified(fu: FundUnitData) -> bool:
    d = fu.d
    return all(local_artin(P, -fu.eps) != 0 for P in primes_above(2, d))


def _integral_coords(fu: FundUnitData) -> bool:
    return fu.eps.x.denominator == 1 and fu.eps.y.denominator == 1


def _basis_order(alg, elems, name):
    return make_order(elems, alg, name)


def _build_B_xi(alg, fu):
    one, i, j, k = alg.basis()
    return make_order([one, i, j, alg.xi()], alg, "B-xi")


def _build_Oj(alg, fu):
    one, i, j, k = alg.basis()
    return _sum_order(alg, integral_closure_in(alg, j), i, "Oj")


def _build_Oi(alg, fu):
    one, i, j, k = alg.basis()
    return _sum_order(alg, integral_closure_in(alg, i), j, "Oi")


def _build_B_quarter(alg, fu):
    one, i, j, k = alg.basis()
    s = _F(fu, 0, 1)
    q = Fraction(1, 4)
    return make_order([one, i, (one * (s - 1) + i * (s + 1) + j * 2) * q,
                       (one * (s + 1) + i * (s - 1) + k * 2) * q], alg, "B-quarter")


def _build_B_quarter_minus(alg, fu):
    one, i, j, k = alg.basis()
    s = _F(fu, 0, 1)
    q = Fraction(1, 4)
    return make_order([one, i, (one * (s - 1) + i * 2 + j * 2) * q,
                       (one * 2 + i * (s - 1) + k * 2) * q], alg, "B-quarter-minus")


def _build_B_quarter_plus(alg, fu):
    one, i, j, k = alg.basis()
    s = _F(fu, 0, 1)
    q = Fraction(1, 4)
    return make_order([one, i, (one * (s + 1) + i * 2 + j * 2) * q,
                       (one * 2 + i * (s + 1) + k * 2) * q], alg, "B-quarter-plus")


def _build_B_half(alg, fu):
    one, i, j, k = alg.basis()
    s = _F(fu, 0, 1)
    h = Fraction(1, 2)
    return make_order([one, (one + i + j * (s + 1)) * h, j, (one * (s + 1) + j + k) * h], alg, "B-half")


def _eq53_B(alg: QuatAlgebra, fu: FundUnitData) -> Lattice:
    """The order of F(i) used for the xi-type maximal orders (2 ramified in F)."""
    one, i, j, k = alg.basis()
    d = fu.d
    if d % 4 == 2:
        return integral_closure_in(alg, i)
    P = _dyadic(d)
    return conductor_order(alg, i, IdealF.from_dict(d, {P: 1}))


def _build_B_center(alg, fu):
    one, i, j, k = alg.basis()
    rho = (one + i + j + k) * Fraction(1, 2)
    return _sum_order(alg, _eq53_B(alg, fu), rho, "B-center")


def _build_B_Oi_prime(alg, fu):
    one, i, j, k = alg.basis()
    s = _F(fu, 0, 1)
    h = Fraction(1, 2)
    return make_order([one, (one + i + j * s) * h, j, (one * s + j + k) * h], alg, "B-Oi-prime")


def _build_B_Oj_prime_4b(alg, fu):
    one, i, j, k = alg.basis()
    s = _F(fu, 0, 1)
    h = Fraction(1, 2)
    return make_order([one, i, (one * s + i + j) * h, (one + i * s + k) * h], alg, "B-Oj-prime-4b")


def _build_B_Oj_prime_2b(alg, fu):
    one, i, j, k = alg.basis()
    s = _F(fu, 0, 1)
    h = Fraction(1, 2)
    return make_order([one, i, (one * (s + 1) + i * s + j) * h, (one * s + i * (s + 1) + k) * h],
                      alg, "B-Oj-prime-2b")


def _delta_order(alg, fu, coeff_j: FieldElem, name: str) -> QuatOrder:
    one, i, j, k = alg.basis()
    h = Fraction(1, 2)
    delta = (i * -3 + j * (2 * coeff_j) + k) * Fraction(1, 6)
    return make_order([one, i, (one + j) * h, delta], alg, name)


def _build_D_delta(alg, fu):
    _, b3 = _thirds(fu)
    s = _F(fu, 0, 1)
    coeff = {0: _F(fu, 1), 1: s + 1, 2: s - 1}[b3]
    return _delta_order(alg, fu, coeff, "D-delta")


def _build_D_minimal(alg, fu):
    return make_order(_minimal_basis("3", alg, fu), alg, "D-minimal")


def _build_D_sixth(alg, fu):
    return _delta_order(alg, fu, _F(fu, 1), "D-sixth")


def _build_D_sixth_sqrt(alg, fu):
    return _delta_order(alg, fu, _F(fu, 0, 1), "D-sixth-sqrt")


def _build_D_delta2(alg, fu):
    a3, b3 = _thirds(fu)
    s = _F(fu, 0, 1)
    table = {(1, 0): s, (2, 0): _F(fu, 1), (0, 1): s + 1, (0, 2): s - 1}
    return _delta_order(alg, fu, table[(a3, b3)], "D-delta2")


def _build_S4(alg, fu):
    return make_order(_minimal_basis("24", alg, fu), alg, "S4-max")


def _build_D6(alg, fu):
    return make_order(_minimal_basis("6", alg, fu), alg, "D6-max")


def _build_A4(alg, fu):
    d = fu.d
    one, i, j, k = alg.basis()
    if d % 8 == 1:
        return make_order(_minimal_basis("12", alg, fu), alg, "A4-max")
    if d % 8 == 5:
        s = _F(fu, 0, 1)
        q = Fraction(1, 4)
        return make_order([one, (one * (s + 1) - i * 2 + j * (1 - s)) * q, j, alg.xi()], alg, "A4-max")
    return _sum_order(alg, _eq53_B(alg, fu), alg.xi(), "A4-max")


def _build_O4dagger(alg, fu):
    d = fu.d
    one, i, j, k = alg.basis()
    s = _F(fu, 0, 1)
    h = Fraction(1, 2)
    if d % 4 == 2:
        return make_order([one, i, (one + i * s + j) * h, (-(one * s) + i + k) * h], alg, "D2dag-max")
    return make_order([one, i, (one * s + j) * h, (i * s + k) * h], alg, "D2dag-max")


def _build_O6dagger(alg, fu):
    d = fu.d
    one, i, j, k = alg.basis()
    h = Fraction(1, 2)
    if d % 3 == 0:
        return _sum_order(alg, integral_closure_in(alg, (one + j) * h), i, "D3dag-max")
    if d % 3 == 1:
        return make_order(_minimal_basis("3", alg, fu), alg, "D3dag-max")
    s = _F(fu, 0, 1)
    return make_order([one, (i + k) * h, (one + j) * h, (j * s + k) * Fraction(1, 3)], alg, "D3dag-max")


def _d(fu):
    return fu.d


CASES: dict[str, CaseSpec] = {c.case_id: c for c in [
    CaseSpec("S4-max", "A", "S4", lambda fu: fu.two_eps_square, _build_S4),
    CaseSpec("D6-max", "C", "D6", lambda fu: fu.three_eps_square, _build_D6),
    CaseSpec("A4-max", "A", "A4", lambda fu: True, _build_A4),
    CaseSpec("D4-max", "A", "D4", lambda fu: fu.two_eps_square and _d(fu) % 4 in (2, 3), _build_O4dagger),
    CaseSpec("D2dag-max", "A", "D2†", lambda fu: _d(fu) % 4 in (2, 3), _build_O4dagger),
    CaseSpec("D3dag-max", "C", "D3†", lambda fu: not fu.three_eps_square, _build_O6dagger),
    CaseSpec("B-xi", "B", "D2‡",
             lambda fu: fu.norm_sign == 1 and _d(fu) % 8 == 1 and int(fu.eps.x) % 4 == 1, _build_B_xi),
    CaseSpec("B-Oj", "B", "D2‡", lambda fu: fu.norm_sign == 1 and _fj_unramified(fu), _build_Oj),
    CaseSpec("B-quarter", "B", "D2‡",
             lambda fu: fu.norm_sign == 1 and ((_d(fu) % 8 == 1 and int(fu.eps.x) % 4 == 3) or (
                 _d(fu) % 8 == 5 and not _fj_unramified(fu) and _integral_coords(fu))),
             _build_B_quarter),
    CaseSpec("B-quarter-minus", "B", "D2‡",
             lambda fu: fu.norm_sign == 1 and _d(fu) % 8 == 5 and not _fj_unramified(fu)
             and not _integral_coords(fu) and int(2 * fu.eps.y) % 4 == 1, _build_B_quarter_minus),
    CaseSpec("B-quarter-plus", "B", "D2‡",
             lambda fu: fu.norm_sign == 1 and _d(fu) % 8 == 5 and not _fj_unramified(fu)
             and not _integral_coords(fu) and int(2 * fu.eps.y) % 4 == 3, _build_B_quarter_plus),
    CaseSpec("B-Oi", "B", "D2‡",
             lambda fu: fu.norm_sign == 1 and _d(fu) % 4 == 3 and int(fu.eps.x) % 2 == 0, _build_Oi),
    CaseSpec("B-half", "B", "D2‡",
             lambda fu: fu.norm_sign == 1 and _d(fu) % 4 == 3 and int(fu.eps.x) % 2 == 0, _build_B_half),
    CaseSpec("B-center", "B", "D2‡",
             lambda fu: fu.norm_sign == 1 and ((_d(fu) % 4 == 2 and _d(fu) > 6) or (
                 _d(fu) % 4 == 3 and int(fu.eps.x) % 2 == 1)), _build_B_center),
    CaseSpec("B-Oi-prime", "B", "D2‡",
             lambda fu: fu.norm_sign == 1 and _d(fu) % 4 == 2 and _d(fu) > 6, _build_B_Oi_prime),
    CaseSpec("B-Oj-prime-4b", "B", "D2‡",
             lambda fu: fu.norm_sign == 1 and _d(fu) % 4 == 2 and _d(fu) > 6 and not _fj_unramified(fu)
             and int(fu.eps.y) % 4 == 0, _build_B_Oj_prime_4b),
    CaseSpec("B-Oj-prime-2b", "B", "D2‡",
             lambda fu: fu.norm_sign == 1 and _d(fu) % 4 == 2 and _d(fu) > 6 and not _fj_unramified(fu)
             and int(fu.eps.y) % 4 == 2, _build_B_Oj_prime_2b),
    CaseSpec("D-Oj", "D", "D3‡", lambda fu: fu.norm_sign == 1 and _d(fu) % 3 == 0 and _d(fu) > 6,
             lambda alg, fu: _sum_order(alg, integral_closure_in(alg, (alg.one() + alg.basis()[2]) * Fraction(1, 2)),
                                        alg.basis()[1], "D-Oj")),
    CaseSpec("D-delta", "D", "D3‡",
             lambda fu: fu.norm_sign == 1 and _d(fu) % 3 == 0 and _d(fu) > 6 and _thirds(fu)[0] == 2,
             _build_D_delta),
    CaseSpec("D-minimal", "D", "D3‡",
             lambda fu: fu.norm_sign == 1 and _d(fu) % 3 == 1 and _eps_mod3(fu) == 1, _build_D_minimal),
    CaseSpec("D-sixth", "D", "D3‡",
             lambda fu: fu.norm_sign == 1 and _d(fu) % 3 == 1 and _eps_mod3(fu) == -1, _build_D_sixth),
    CaseSpec("D-sixth-sqrt", "D", "D3‡",
             lambda fu: fu.norm_sign == 1 and _d(fu) % 3 == 1 and _eps_mod3(fu) == -1, _build_D_sixth_sqrt),
    CaseSpec("D-delta2", "D", "D3‡", lambda fu: fu.norm_sign == 1 and _d(fu) % 3 == 2, _build_D_delta2),
]}


def _eps_mod3(fu: FundUnitData) -> int:
    A = int(2 * fu.eps.x)
    return 1 if A % 3 == 2 else -1


def explicit_maximal_order(case_id: str, fu: FundUnitData | int, alg: QuatAlgebra | None = None) -> QuatOrder:
    if isinstance(fu, int):
        fu = fundamental_unit(fu)
    if case_id not in CASES:
        raise OrderError("unknown-case", case_id)
    spec = CASES[case_id]
    if spec.algebra in ("B", "D") and fu.norm_sign != 1:
        raise OrderError("case-mismatch", f"{case_id} needs Nm(eps) = 1")
    std = standard_algebra(spec.algebra, fu)
    if alg is not None and (alg.a, alg.b) != (std.a, std.b):
        raise OrderError("case-mismatch", f"{case_id} lives in {std.label()}")
    if not spec.admissible(fu):
        raise OrderError("case-mismatch", f"{case_id} does not apply to d={fu.d}")
    O = spec.build(std, fu)
    O.name = case_id
    if not O.is_maximal():
        raise AssertionError(f"{case_id} at d={fu.d} is not maximal (disc {O.disc})")
    small = minimal_G_order(spec.contains, fu)
    if not O.contains_order(small):
        raise AssertionError(f"{case_id} at d={fu.d} does not contain the minimal {spec.contains}-order")
    return O


def admissible_cases(fu: FundUnitData | int) -> list[str]:
    if isinstance(fu, int):
        fu = fundamental_unit(fu)
    out = []
    for cid, spec in CASES.items():
        if spec.algebra in ("B", "D") and fu.norm_sign != 1:
            continue
        if spec.admissible(fu):
            out.append(cid)
    return out


# ------------------------------------------------------ diagnostics

def gorenstein_check(O: QuatOrder) -> bool:
    """Whether disc(O) * Nr(O^dual) is the unit ideal."""
    dual = dual_lattice(O.lattice).elements()
    vals = [x.nr() for x in dual]
    vals += [(x + y).nr() for x, y in combinations(dual, 2)]
    nr_ideal = IdealF.from_generators(vals, O.d)
    return (O.disc * nr_ideal) == IdealF.unit(O.d)


def to_json(O: QuatOrder) -> str:
    return json.dumps({
        "hnf": [list(r) for r in O.lattice.zbasis],
        "denominator": O.lattice.denom,
        "algebra": {"a": str(O.alg.a), "b": str(O.alg.b), "tag": O.alg.tag, "d": O.d},
        "name": O.name,
    })


def from_json(s: str) -> QuatOrder:
    from .quatalg import parse_algebra
    data = json.loads(s)
    alg_d = data["algebra"]
    d = alg_d["d"]
    if alg_d.get("tag"):
        alg = standard_algebra(alg_d["tag"], d)
    else:
        alg = parse_algebra(f"{alg_d['a']},{alg_d['b']}", d)
    L = Lattice(data["hnf"], data["denominator"])
    return QuatOrder(QuatLattice(alg, L), data.get("name", ""))
