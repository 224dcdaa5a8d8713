"""Quaternion algebras (a, b / F) over a real quadratic field: arithmetic,
local Hilbert symbols and ramification."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import factorint

from .quadfield import (
    FieldElem, FieldError, FundUnitData, IdealF, PrimeIdealF, fundamental_unit,
    local_field, primes_above,
)


class AlgebraError(ValueError):
    pass


STANDARD_TAGS = ("A", "B", "C", "D")


@dataclass(frozen=True)
class QuatAlgebra:
    a: FieldElem
    b: FieldElem
    tag: str | None = None

    def __post_init__(self):
        if not self.a or not self.b:
            raise AlgebraError("structure constants must be nonzero")
        if self.a.d != self.b.d:
            raise AlgebraError("structure constants from different fields")

    @property
    def d(self) -> int:
        return self.a.d

    def is_totally_definite(self) -> bool:
        return self.a.is_totally_negative() and self.b.is_totally_negative()

    def elem(self, *coords) -> "QuatElem":
        cs = tuple(c if isinstance(c, FieldElem) else FieldElem.from_int(c, self.d) for c in coords)
        if len(cs) != 4:
            raise AlgebraError("a quaternion has four coordinates")
        return QuatElem(self, cs)

    def one(self) -> "QuatElem":
        return self.elem(1, 0, 0, 0)

    def basis(self) -> tuple["QuatElem", ...]:
        return tuple(self.elem(*[1 if k == n else 0 for k in range(4)]) for n in range(4))

    def xi(self) -> "QuatElem":
        h = Fraction(1, 2)
        return self.elem(h, h, h, h)

    def label(self) -> str:
        return f"({self.a},{self.b})"


@dataclass(frozen=True)
class QuatElem:
    alg: QuatAlgebra
    coords: tuple[FieldElem, FieldElem, FieldElem, FieldElem]

    def _check(self, other: "QuatElem"):
        if other.alg != self.alg:
            raise AlgebraError("elements of different algebras")

    def __add__(self, other):
        if not isinstance(other, QuatElem):
            other = self.alg.one() * other
        self._check(other)
        return QuatElem(self.alg, tuple(x + y for x, y in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return QuatElem(self.alg, tuple(-x for x in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QuatElem):
            return QuatElem(self.alg, tuple(x * other for x in self.coords))
        self._check(other)
        return mul(self, other)

    def __rmul__(self, other):
        return QuatElem(self.alg, tuple(other * x for x in self.coords))

    def __truediv__(self, other):
        if isinstance(other, QuatElem):
            return self * other.inverse()
        return QuatElem(self.alg, tuple(x / other for x in self.coords))

    def __eq__(self, other):
        if isinstance(other, QuatElem):
            return self.alg == other.alg and self.coords == other.coords
        if isinstance(other, (int, Fraction, FieldElem)):
            return self == self.alg.one() * other
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def conj(self) -> "QuatElem":
        return conj(self)

    def nr(self) -> FieldElem:
        return nr(self)

    def tr(self) -> FieldElem:
        return tr(self)

    def inverse(self) -> "QuatElem":
        n = nr(self)
        if not n:
            raise ZeroDivisionError("element of reduced norm zero")
        return conj(self) / n

    def __str__(self):
        names = ("", "i", "j", "k")
        parts = [f"({c})" + n for c, n in zip(self.coords, names) if c]
        return " + ".join(parts) or "0"

    __repr__ = __str__


def mul(x: QuatElem, y: QuatElem) -> QuatElem:
    a, b = x.alg.a, x.alg.b
    x0, x1, x2, x3 = x.coords
    y0, y1, y2, y3 = y.coords
    ab = a * b
    z0 = x0 * y0 + a * x1 * y1 + b * x2 * y2 - ab * x3 * y3
    z1 = x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2
    z2 = x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1
    z3 = x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1
    return QuatElem(x.alg, (z0, z1, z2, z3))


def conj(x: QuatElem) -> QuatElem:
    x0, x1, x2, x3 = x.coords
    return QuatElem(x.alg, (x0, -x1, -x2, -x3))


def nr(x: QuatElem) -> FieldElem:
    a, b = x.alg.a, x.alg.b
    x0, x1, x2, x3 = x.coords
    return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3


def tr(x: QuatElem) -> FieldElem:
    return 2 * x.coords[0]


# -------------------------------------------------------- Hilbert symbols

def _tame_symbol(lf, a, b) -> int:
    alpha, u = lf.unit_part(lf.coords(a))
    beta, w = lf.unit_part(lf.coords(b))
    q = lf.P.norm

    def chi(c):
        return 1 if lf.residue_power(c, (q - 1) // 2) == (1, 0) else -1

    s = 1
    if alpha * beta % 2 and (q - 1) // 2 % 2:
        s = -s
    if beta % 2:
        s *= chi(u)
    if alpha % 2:
        s *= chi(w)
    return s


def _span(gens, mul, identity):
    group = {identity}
    for g in gens:
        if g in group:
            continue
        group |= {mul(g, h) for h in group}
    return group


def _norm_group_symbol(lf, a: FieldElem, b: FieldElem) -> int:
    """(a, b)_P via the norm subgroup of F_P(sqrt b)/F_P in square classes."""
    if lf.is_square(b):
        return 1
    ca = lf.square_class(lf.coords(a))
    vb, cb = lf.unit_part(lf.coords(b))
    if vb % 2:
        cb = lf.mul(cb, lf.pi_coords())
    total = lf.square_class_count()
    target = total // 2
    one = lf.square_class((Fraction(1), Fraction(0)))
    group = {one}
    N = lf.square_level()
    pi = lf.pi_coords()
    reps = [tuple(Fraction(c) for c in r) for r in lf.reps(N)]
    scales = [(Fraction(1), Fraction(0)), lf.div_pi((Fraction(1), Fraction(0)))]
    for y0 in scales + [pi]:
        for x in reps:
            for xs in scales:
                xx = lf.mul(x, xs)
                # N(x + y sqrt b) = x^2 - b y^2
                xsq = lf.mul(xx, xx)
                ysq = lf.mul(lf.mul(y0, y0), cb)
                n = (xsq[0] - ysq[0], xsq[1] - ysq[1])
                if n == (0, 0):
                    continue
                c = lf.square_class(n)
                if c not in group:
                    group = _span([c], lf.class_mul, one) | group
                    group = _span(list(group), lf.class_mul, one)
                    if len(group) == target:
                        return 1 if ca in group else -1
    raise AssertionError("norm subgroup generation did not reach index 2")


def hilbert_symbol(a: FieldElem, b: FieldElem, P: PrimeIdealF) -> int:
    if not a or not b:
        raise FieldError("Hilbert symbol of zero")
    lf = local_field(P)
    if P.p != 2:
        return _tame_symbol(lf, a, b)
    return _norm_group_symbol(lf, a, b)


def hilbert_symbol_at(alg: QuatAlgebra, P: PrimeIdealF) -> int:
    return hilbert_symbol(alg.a, alg.b, P)


def _support(x: FieldElem) -> set[int]:
    n = x.norm()
    out = set()
    for m in (n.numerator, n.denominator):
        out |= {p for p in factorint(abs(m)) if p > 1}
    return out


@dataclass(frozen=True)
class RamificationData:
    finite_ramified: frozenset
    omega: int
    disc_H: IdealF


@lru_cache(maxsize=None)
def ramification(alg: QuatAlgebra) -> RamificationData:
    d = alg.d
    ps = {2, 3} | _support(alg.a) | _support(alg.b) | set(factorint(d))
    ram = []
    for p in sorted(ps):
        for P in primes_above(p, d):
            if hilbert_symbol_at(alg, P) == -1:
                ram.append(P)
    infinite = sum(1 for conj_ in (False, True) if alg.a.sign(conj_) < 0 and alg.b.sign(conj_) < 0)
    if (len(ram) + infinite) % 2:
        raise AssertionError(f"odd number of ramified places for {alg.label()}")
    return RamificationData(frozenset(ram), len(ram), IdealF.from_dict(d, {P: 1 for P in ram}))


def is_isomorphic(alg1: QuatAlgebra, alg2: QuatAlgebra) -> bool:
    if alg1.d != alg2.d:
        return False
    inf1 = tuple(alg1.a.sign(c) < 0 and alg1.b.sign(c) < 0 for c in (False, True))
    inf2 = tuple(alg2.a.sign(c) < 0 and alg2.b.sign(c) < 0 for c in (False, True))
    return inf1 == inf2 and ramification(alg1).finite_ramified == ramification(alg2).finite_ramified


def standard_algebra(tag: str, fu: FundUnitData | int) -> QuatAlgebra:
    if isinstance(fu, int):
        fu = fundamental_unit(fu)
    d = fu.d
    one = FieldElem.from_int(1, d)
    eps = fu.eps
    if tag == "Hinf":
        for t in STANDARD_TAGS:
            if t in ("B", "D") and fu.norm_sign == -1:
                continue
            alg = standard_algebra(t, fu)
            if ramification(alg).omega == 0:
                return alg
        return _search_unramified(d)
    if tag in ("B", "D") and fu.norm_sign == -1:
        raise AlgebraError(f"tag {tag} needs a totally positive fundamental unit (d={d})")
    consts = {
        "A": (-one, -one),
        "B": (-one, -eps),
        "C": (-one, -3 * one),
        "D": (-eps, -3 * one),
    }
    if tag not in consts:
        raise AlgebraError(f"unknown algebra tag {tag!r}")
    a, b = consts[tag]
    return QuatAlgebra(a, b, tag)


def _search_unramified(d: int) -> QuatAlgebra:
    """Some (-m, -n) with integers m, n, ramified only at the two infinite places."""
    from sympy import primerange
    small = [1, 2] + list(primerange(3, 200))
    for bound in range(len(small)):
        n = small[bound]
        for m in small[:bound + 1]:
            alg = QuatAlgebra(FieldElem.from_int(-m, d), FieldElem.from_int(-n, d), "Hinf")
            if ramification(alg).omega == 0:
                return alg
    raise AlgebraError(f"no totally definite algebra unramified at all finite places found for d={d}")


def parse_algebra(spec: str, d: int) -> QuatAlgebra:
    """Parse 'a,b' where a and b are integers or x+y*sqrt(d)-style pairs 'x:y'."""
    parts = spec.split(",")
    if len(parts) != 2:
        raise AlgebraError(f"expected 'a,b', got {spec!r}")
    vals = []
    for s in parts:
        s = s.strip()
        if ":" in s:
            x, y = s.split(":")
            vals.append(FieldElem(Fraction(x), Fraction(y), d))
        else:
            vals.append(FieldElem.from_int(Fraction(s), d))
    return QuatAlgebra(vals[0], vals[1])
