"""CM O_F-orders with nontrivial unit index [B^x : O_F^x].

Only three CM extensions of F = Q(sqrt d), d >= 6, carry such orders:
F(sqrt -1), F(sqrt -3) and F(sqrt -eps) when Nm(eps) = 1.  Each field is
modelled as F(u) with u^2 = t u - n; an element x + y u is stored as the
rational 4-vector of omega coordinates (x0, x1, y0, y1).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from sympy import factorint

from .lattice import Lattice, short_vectors
from .quadclass import class_number_real, h_imag
from .quadfield import (
    FieldElem, FieldError, FundUnitData, IdealF, fundamental_unit, local_artin,
    omega_data, primes_above,
)

Vec = tuple[Fraction, ...]

FIELD_TAGS = ("F(√−1)", "F(√−3)", "F(√−ε)")


def _squarefree_part(n: int) -> int:
    out = 1
    for p, e in factorint(n).items():
        if e % 2:
            out *= p
    return out


@dataclass(frozen=True)
class CMField:
    tag: str
    t: FieldElem          # trace of u
    n: FieldElem          # norm of u
    mu: int               # number of roots of unity
    neg: FieldElem        # K = F(sqrt(neg))

    @property
    def d(self) -> int:
        return self.t.d

    def elem(self, v: Vec) -> tuple[FieldElem, FieldElem]:
        d = self.d
        return FieldElem.from_omega(v[0], v[1], d), FieldElem.from_omega(v[2], v[3], d)

    def vec(self, x: FieldElem, y: FieldElem) -> Vec:
        return x.omega_coords() + y.omega_coords()

    def mul(self, v: Vec, w: Vec) -> Vec:
        x1, y1 = self.elem(v)
        x2, y2 = self.elem(w)
        return self.vec(x1 * x2 - self.n * y1 * y2, x1 * y2 + x2 * y1 + self.t * y1 * y2)

    def trace(self, v: Vec) -> FieldElem:
        x, y = self.elem(v)
        return 2 * x + self.t * y

    def norm(self, v: Vec) -> FieldElem:
        x, y = self.elem(v)
        return x * x + self.t * x * y + self.n * y * y

    def is_integral(self, v: Vec) -> bool:
        return self.trace(v).is_integral() and self.norm(v).is_integral()

    def omega_times(self, v: Vec) -> Vec:
        x, y = self.elem(v)
        w = FieldElem.omega(self.d)
        return self.vec(w * x, w * y)

    def of_span(self, vecs) -> Lattice:
        gens = []
        for v in vecs:
            v = tuple(Fraction(c) for c in v)
            gens += [v, self.omega_times(v)]
        return Lattice.from_vectors(gens)

    def one(self) -> Vec:
        return (Fraction(1), Fraction(0), Fraction(0), Fraction(0))

    def u(self) -> Vec:
        return (Fraction(0), Fraction(0), Fraction(1), Fraction(0))


def cm_fields(fu: FundUnitData) -> list[CMField]:
    d = fu.d
    one = FieldElem.from_int(1, d)
    zero = FieldElem.from_int(0, d)
    out = [CMField("F(√−1)", zero, one, 4, -one),
           CMField("F(√−3)", -one, one, 6, -3 * one)]
    if fu.norm_sign == 1 and not fu.three_eps_square:
        out.append(CMField("F(√−ε)", zero, fu.eps, 2, -fu.eps))
    return out


def maximal_order(K: CMField) -> Lattice:
    """O_K by 2-saturation of O_F[u] (u is integral, disc(u) | 4n+t^2)."""
    L = K.of_span([K.one(), K.u()])
    disc = K.t * K.t - 4 * K.n
    primes = sorted(factorint(abs(int(disc.norm()))))
    changed = True
    while changed:
        changed = False
        for p in primes:
            basis = L.basis()
            for coeffs in product(range(p), repeat=4):
                if not any(coeffs):
                    continue
                v = tuple(sum((c * b[m] for c, b in zip(coeffs, basis)), Fraction(0)) / p for m in range(4))
                if not L.contains(v) and K.is_integral(v):
                    L = K.of_span(basis + [v])
                    changed = True
                    break
            if changed:
                break
    return L


def _minors_ideal(K: CMField, L: Lattice) -> IdealF:
    rows = [K.elem(v) for v in L.basis()]
    gens = []
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            m = rows[a][0] * rows[b][1] - rows[a][1] * rows[b][0]
            if m:
                gens.append(m)
    return IdealF.from_generators(gens, K.d)


def conductor(K: CMField, B: Lattice, OK: Lattice) -> IdealF:
    return _minors_ideal(K, B) * _minors_ideal(K, OK).inverse()


def order_with_conductor(K: CMField, OK: Lattice, f: IdealF) -> Lattice:
    d = K.d
    vecs = [K.one()]
    for g in f.lattice().basis():
        c = FieldElem.from_omega(g[0], g[1], d)
        for v in OK.basis():
            x, y = K.elem(v)
            vecs.append(K.vec(c * x, c * y))
    return K.of_span(vecs)


def _units(K: CMField, L: Lattice, fu: FundUnitData) -> list[Vec]:
    """Units of L with norm 1 (and norm eps when Nm(eps) = 1), up to nothing."""
    basis = [tuple(v) for v in L.basis()]
    elems = [K.elem(v) for v in basis]
    lams = [FieldElem.from_int(1, K.d)]
    if fu.norm_sign == 1:
        lams.append(fu.eps.inverse())
    out = []
    for lam in lams:
        n = len(basis)
        G = [[Fraction(0)] * n for _ in range(n)]
        for a in range(n):
            xa, ya = elems[a]
            for b in range(a, n):
                xb, yb = elems[b]
                pair = xa * xb + K.t * (xa * yb + xb * ya) / 2 + K.n * ya * yb
                G[a][b] = G[b][a] = (lam * pair).trace()
        for x, _ in short_vectors(G, 2):
            out.append(tuple(sum((x[m] * basis[m][c] for m in range(n)), Fraction(0)) for c in range(4)))
    return out


def _canon(v: Vec) -> Vec:
    for c in v:
        if c:
            return v if c > 0 else tuple(-x for x in v)
    return v


def _reduced_units(K: CMField, L: Lattice, fu: FundUnitData) -> list[Vec]:
    return sorted({_canon(v) for v in _units(K, L, fu)})


def _class_order(K: CMField, v: Vec, fu: FundUnitData) -> int:
    one = _canon(K.one())
    eps2 = fu.eps * fu.eps
    x, n = _canon(v), 1
    while x != one:
        p = K.mul(x, v)
        if K.norm(p) == eps2:
            xx, yy = K.elem(p)
            p = K.vec(xx / fu.eps, yy / fu.eps)
        x = _canon(p)
        n += 1
        if n > 24:
            raise AssertionError("CM unit of unexpected order")
    return n


@dataclass
class CMOrderDescriptor:
    field_tag: str
    conductor: IdealF
    w: int
    hasse_Q: int
    gen_minpoly: tuple[FieldElem, FieldElem]
    h_B: Fraction
    lattice: Lattice                 # coordinates (x, y) of x + y u, u the field generator
    embedding_lattice: Lattice       # coordinates of x + y u_B, u_B the unit generator
    unit_gen: Vec
    field: CMField
    h_K: int
    w_K: int

    @property
    def gen_trace(self) -> FieldElem:
        return self.gen_minpoly[0]

    @property
    def gen_norm(self) -> FieldElem:
        return self.gen_minpoly[1]

    @property
    def is_maximal(self) -> bool:
        return not self.conductor.factors

    def label(self) -> str:
        f = "O_F" if self.is_maximal else str(self.conductor)
        return f"{self.field_tag}, f={f}"

    def eichler_symbol(self, P) -> int:
        if self.conductor.valuation(P) > 0:
            return 1
        return local_artin(P, self.field.neg)

    def to_dict(self) -> dict:
        return {
            "field": self.field_tag,
            "conductor": str(self.conductor),
            "w": self.w,
            "Q": self.hasse_Q,
            "unit_minpoly": {"trace": str(self.gen_trace), "norm": str(self.gen_norm)},
            "h_B": str(self.h_B),
        }


def _rebase(K: CMField, L: Lattice, g: Vec) -> Lattice:
    """Rewrite L in coordinates of the F-basis {1, g}."""
    p, q = K.elem(g)
    out = []
    for v in L.basis():
        X, Y = K.elem(v)
        y = Y / q
        x = X - p * y
        out.append(x.omega_coords() + y.omega_coords())
    return Lattice.from_vectors(out)


def class_number_K(K: CMField, fu: FundUnitData, Q: int) -> int:
    """h(K) for the biquadratic field K = F(sqrt neg) by Herglotz's formula."""
    d = fu.d
    hd = class_number_real(d)
    if K.tag == "F(√−1)":
        pair = (1, _squarefree_part(d))
    elif K.tag == "F(√−3)":
        pair = (3, _squarefree_part(3 * d))
    else:
        pair = r_s_pair(fu)
    h1, h2 = (1 if m in (1, 3) else h_imag(m) for m in pair)
    val = Fraction(Q * hd * h1 * h2, 2)
    if val.denominator != 1:
        raise AssertionError(f"non-integral h({K.tag}) at d={d}")
    return int(val)


def r_s_pair(fu: FundUnitData | int) -> tuple[int, int]:
    if isinstance(fu, int):
        fu = fundamental_unit(fu)
    if fu.norm_sign != 1:
        raise FieldError("r_s_pair needs a totally positive fundamental unit")
    T = int(fu.eps.trace())
    r, s = _squarefree_part(T + 2), _squarefree_part(T - 2)
    return (r, s) if r <= s else (s, r)


def class_number_B(B: CMOrderDescriptor, fu: FundUnitData | None = None) -> int:
    """h(B) = h(K) N(f) / [O_K^x : B^x] * prod_{P | f} (1 - (K/P)/N(P))."""
    d = B.field.d
    val = Fraction(B.h_K) * B.conductor.norm() / Fraction(B.w_K, B.w)
    for P in B.conductor.primes():
        val *= 1 - Fraction(local_artin(P, B.field.neg), P.norm)
    if val.denominator != 1 or val <= 0:
        raise AssertionError(f"h(B) = {val} is not a positive integer ({B.label()}, d={d})")
    return int(val)


@lru_cache(maxsize=None)
def enumerate_B(d: int) -> tuple[CMOrderDescriptor, ...]:
    fu = fundamental_unit(d)
    if d < 6:
        raise FieldError("CM order enumeration covers d >= 6")
    out = []
    for K in cm_fields(fu):
        OK = maximal_order(K)
        units_K = _reduced_units(K, OK, fu)
        w_K = len(units_K)
        Q = Fraction(2 * w_K, K.mu)
        if Q.denominator != 1 or Q not in (1, 2):
            raise AssertionError(f"unit index {Q} for {K.tag} at d={d}")
        Q = int(Q)
        hK = class_number_K(K, fu, Q)
        one = _canon(K.one())
        conductors = {}
        for y in units_K:
            if y == one:
                continue
            fy = conductor(K, K.of_span([K.one(), y]), OK)
            for f in fy.divisors():
                conductors[f.factors] = f
        for f in sorted(conductors.values(), key=lambda I: (I.norm(), str(I))):
            L = order_with_conductor(K, OK, f)
            us = [v for v in units_K if L.contains(v)]
            w = len(us)
            if w == 1:
                continue
            gen = next(v for v in us if _class_order(K, v, fu) == w)
            emb = _rebase(K, L, gen)
            B = CMOrderDescriptor(K.tag, f, w, Q, (K.trace(gen), K.norm(gen)), Fraction(0), L, emb,
                                  gen, K, hK, w_K)
            B.h_B = Fraction(class_number_B(B, fu))
            out.append(B)
    return tuple(out)


def B_n(d: int, n: int) -> list[CMOrderDescriptor]:
    return [B for B in enumerate_B(d) if B.w == n]


# ------------------------------------------------- closed forms

def closed_form_h(B: CMOrderDescriptor, fu: FundUnitData) -> int | None:
    """Tabulated h(B) where one is available, None otherwise."""
    d = fu.d
    hd = class_number_real(d)
    Q = B.hasse_Q
    if B.field_tag == "F(√−1)":
        hm = h_imag(_squarefree_part(d))
        if B.is_maximal:
            return Q * hd * hm // 2
        P2 = primes_above(2, d)
        if d % 4 == 2:
            return hd * hm
        if d % 4 == 3:
            sym = _kron_half(-d)
            f_val = B.conductor.valuation(P2[0])
            if f_val == 1:
                return Q * hd * hm * (2 - sym) // 2
            return hd * hm * (2 - sym)
        return None
    if B.field_tag == "F(√−3)":
        if d % 3:
            if B.is_maximal:
                return Q * hd * h_imag(_squarefree_part(3 * d)) // 2
            return None
        hm = h_imag(d // 3)
        if B.is_maximal:
            return Q * hd * hm // 2
        if B.conductor.primes()[0].p == 3:
            return (3 - _kron_third(-(d // 3))) * hd * hm // 2
        # sqrt(-eps) orders when 3 eps is a square
        if B.conductor.norm() == 2:
            return hd * hm
        if B.conductor == IdealF.principal(FieldElem.from_int(2, d)):
            return (2 + _kron_half(d)) * hd * hm
        return None
    r, s = r_s_pair(fu)
    hL = hd * h_imag(r) * h_imag(s)
    if B.is_maximal:
        return hL
    val = Fraction(hL)
    for P, e in B.conductor.factors:
        val *= Fraction(P.norm) ** e - Fraction(P.norm) ** (e - 1) * local_artin(P, B.field.neg)
    return int(val)


def _kron_half(m: int) -> int:
    """Artin symbol of 2 in Q(sqrt m)."""
    D = m if m % 4 == 1 else 4 * m
    if D % 2 == 0:
        return 0
    return 1 if D % 8 == 1 else -1


def _kron_third(m: int) -> int:
    D = m if m % 4 == 1 else 4 * m
    if D % 3 == 0:
        return 0
    return 1 if D % 3 == 1 else -1


def cm_table_json(d: int) -> str:
    fu = fundamental_unit(d)
    rows = []
    for B in enumerate_B(d):
        row = B.to_dict()
        cf = closed_form_h(B, fu)
        row["h_B_closed_form"] = None if cf is None else str(cf)
        rows.append(row)
    return json.dumps({"d": d, "orders": rows}, ensure_ascii=False, indent=2)
