"""Exact arithmetic in a real quadratic field F = Q(sqrt d) and its ring of
integers: elements, the fundamental unit, square tests, prime ideals,
local completions and residue-class dispatch.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterable, Sequence

from sympy import factorint, isprime

from .lattice import Lattice


class FieldError(ValueError):
    pass


def squarefree(n: int) -> bool:
    return n > 0 and all(e == 1 for e in factorint(n).values())


def check_d(d: int) -> int:
    if not isinstance(d, int) or d < 2 or not squarefree(d):
        raise FieldError(f"d must be a square-free integer >= 2, got {d!r}")
    return d


def field_disc(d: int) -> int:
    return d if d % 4 == 1 else 4 * d


def omega_data(d: int) -> tuple[int, int]:
    """(t, m) with omega^2 = t*omega + m for the standard generator omega."""
    if d % 4 == 1:
        return 1, (d - 1) // 4
    return 0, d


# ------------------------------------------------------------ elements

def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class FieldElem:
    """x + y*sqrt(d) with rational x, y."""

    x: Fraction
    y: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "x", _frac(self.x))
        object.__setattr__(self, "y", _frac(self.y))

    @classmethod
    def from_int(cls, n, d: int) -> "FieldElem":
        return cls(_frac(n), Fraction(0), d)

    @classmethod
    def sqrt_d(cls, d: int) -> "FieldElem":
        return cls(Fraction(0), Fraction(1), d)

    @classmethod
    def omega(cls, d: int) -> "FieldElem":
        if d % 4 == 1:
            return cls(Fraction(1, 2), Fraction(1, 2), d)
        return cls(Fraction(0), Fraction(1), d)

    @classmethod
    def from_omega(cls, c0, c1, d: int) -> "FieldElem":
        return cls.from_int(c0, d) + cls.omega(d) * c1

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.d != self.d:
                raise FieldError("elements of different fields")
            return other
        return FieldElem(_frac(other), Fraction(0), self.d)

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElem(self.x + o.x, self.y + o.y, self.d)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(-self.x, -self.y, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElem(self.x - o.x, self.y - o.y, self.d)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElem(self.x * o.x + self.d * self.y * o.y, self.x * o.y + self.y * o.x, self.d)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return FieldElem(self.x / n, -self.y / n, self.d)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = FieldElem.from_int(1, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.x) or bool(self.y)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.d == other.d and self.x == other.x and self.y == other.y
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and self.x == other
        return NotImplemented

    def __hash__(self):
        return hash((self.x, self.y, self.d))

    def conj(self) -> "FieldElem":
        return FieldElem(self.x, -self.y, self.d)

    def norm(self) -> Fraction:
        return self.x * self.x - self.d * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def omega_coords(self) -> tuple[Fraction, Fraction]:
        """(c0, c1) with self = c0 + c1*omega."""
        if self.d % 4 == 1:
            return self.x - self.y, 2 * self.y
        return self.x, self.y

    def is_integral(self) -> bool:
        c0, c1 = self.omega_coords()
        return c0.denominator == 1 and c1.denominator == 1

    @property
    def denom(self) -> int:
        return 2 if (self.x.denominator == 2 or self.y.denominator == 2) and self.is_integral() else 1

    @property
    def u(self) -> int:
        return int(self.x * self.denom)

    @property
    def v(self) -> int:
        return int(self.y * self.denom)

    def sign(self, conjugate: bool = False) -> int:
        """Sign under the real embedding sqrt d > 0 (or its conjugate)."""
        x, y = self.x, (-self.y if conjugate else self.y)
        if x >= 0 and y >= 0:
            return 0 if (x == 0 and y == 0) else 1
        if x <= 0 and y <= 0:
            return -1
        # opposite signs: compare x^2 with d y^2
        big_x = x * x > self.d * y * y
        return (1 if x > 0 else -1) if big_x else (1 if y > 0 else -1)

    def is_totally_positive(self) -> bool:
        return self.sign() > 0 and self.sign(True) > 0

    def is_totally_negative(self) -> bool:
        return self.sign() < 0 and self.sign(True) < 0

    def __float__(self):
        return float(self.x) + float(self.y) * self.d ** 0.5

    def __str__(self):
        if self.y == 0:
            return str(self.x)
        den = 1
        for q in (self.x, self.y):
            den = den * q.denominator // __import__("math").gcd(den, q.denominator)
        a, b = int(self.x * den), int(self.y * den)
        parts = []
        if a:
            parts.append(str(a))
        if b == 1:
            sb = f"sqrt({self.d})"
        elif b == -1:
            sb = f"-sqrt({self.d})"
        else:
            sb = f"{b}*sqrt({self.d})"
        if parts and b > 0:
            sb = "+" + sb
        parts.append(sb)
        s = "".join(parts)
        return s if den == 1 else f"({s})/{den}"

    def __repr__(self):
        return f"FieldElem({self})"


def F(x, y=0, d: int = 0) -> FieldElem:
    return FieldElem(_frac(x), _frac(y), d)


# ------------------------------------------------------ squares in F

def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def is_square_in_F(x: FieldElem) -> FieldElem | None:
    """A square root of x in F, or None.  The root returned is positive
    under the embedding sqrt d > 0."""
    if not x:
        raise FieldError("zero has no square class")
    d = x.d
    roots = []
    if x.y == 0:
        r = _rational_sqrt(x.x)
        if r is not None:
            roots.append(FieldElem(r, 0, d))
        r = _rational_sqrt(x.x / d)
        if r is not None:
            roots.append(FieldElem(0, r, d))
    else:
        n = _rational_sqrt(x.norm())
        if n is not None:
            for s2 in ((x.x + n) / 2, (x.x - n) / 2):
                s = _rational_sqrt(s2)
                if s:
                    roots.append(FieldElem(s, x.y / (2 * s), d))
    for r in roots:
        if r * r == x:
            return r if r.sign() > 0 else -r
    return None


# ------------------------------------------------------ fundamental unit

@dataclass(frozen=True)
class FundUnitData:
    eps: FieldElem
    norm_sign: int
    two_eps_square: bool
    three_eps_square: bool
    theta: FieldElem | None
    sigma: FieldElem | None
    S: tuple[FieldElem, ...]

    @property
    def d(self) -> int:
        return self.eps.d


@lru_cache(maxsize=None)
def fundamental_unit(d: int) -> FundUnitData:
    """Fundamental unit of Q(sqrt d) from the continued fraction of -omega-bar."""
    check_d(d)
    D = field_disc(d)
    t, m = omega_data(d)
    w = FieldElem.omega(d)
    # xi = -conj(omega) = (P + sqrt D)/Q
    P, Q = (-1, 2) if d % 4 == 1 else (0, 2)
    r = isqrt(D)
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    while True:
        assert Q > 0
        a = (P + r) // Q
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        cand = FieldElem.from_int(p, d) + w * q
        nm = cand.norm()
        if q > 0 and abs(nm) == 1:
            eps = cand
            break
        P = a * Q - P
        Q = (D - P * P) // Q
    eps = next(c for c in (eps, -eps, eps.conj(), -eps.conj()) if c.x > 0 and c.y > 0)
    ns = int(eps.norm())
    theta = sigma = None
    if ns == 1:
        half = is_square_in_F(eps / 2)
        third = is_square_in_F(eps / 3)
        theta, sigma = half, third
    S = (FieldElem.from_int(1, d),) if ns == -1 else (FieldElem.from_int(1, d), eps)
    return FundUnitData(eps, ns, theta is not None, sigma is not None, theta, sigma, S)


# ------------------------------------------------------ Kronecker / Artin

def kronecker(D: int, p: int) -> int:
    """Kronecker symbol (D/p) for a prime p."""
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    if D % p == 0:
        return 0
    return 1 if pow(D, (p - 1) // 2, p) == 1 else -1


def artin_symbol(p: int, d: int) -> int:
    """(F/p): +1 split, 0 ramified, -1 inert."""
    if not isprime(p):
        raise FieldError(f"{p} is not prime")
    return kronecker(field_disc(check_d(d)), p)


# ------------------------------------------------------------ primes

@dataclass(frozen=True)
class PrimeIdealF:
    """A prime of O_F above p.  For split primes `root` is the image of omega
    in Z/p^k for the completion this prime defines."""

    p: int
    kind: str
    d: int
    root: int | None = None
    residue_degree: int = 1

    @property
    def norm(self) -> int:
        return self.p ** self.residue_degree

    @property
    def e(self) -> int:
        return 2 if self.kind == "ramified" else 1

    def __str__(self):
        if self.kind == "split":
            return f"P{self.p}[{self.root % self.p}]"
        return f"P{self.p}" + ("" if self.kind == "ramified" else "i")

    def __repr__(self):
        return f"PrimeIdealF({self.p}, {self.kind}{'' if self.root is None else ', root=' + str(self.root % self.p)})"

    def lattice(self) -> Lattice:
        """The ideal as a Z-lattice in omega coordinates."""
        p = self.p
        if self.kind == "inert":
            return Lattice([[p, 0], [0, p]])
        if self.kind == "split":
            return Lattice([[p, 0], [-(self.root % p), 1]])
        pi = local_field(self).pi_omega_coords()
        t, m = omega_data(self.d)
        gens = [[p, 0], [0, p], list(pi), [pi[1] * m, pi[0] + pi[1] * t]]
        return Lattice(gens)

    def valuation(self, x: FieldElem) -> int:
        return local_field(self).valuation(x)

    def sort_key(self):
        return (self.p, self.kind, (self.root or 0) % self.p)


def _hensel_root(t: int, m: int, p: int, r0: int, k: int) -> int:
    """Lift a simple root r0 of X^2 - tX - m mod p to a root mod p^k."""
    r = r0 % p
    mod = p
    while mod < p ** k:
        mod = min(mod * mod, p ** k)
        f = r * r - t * r - m
        fp = 2 * r - t
        r = (r - f * pow(fp, -1, mod)) % mod
    return r


ROOT_PRECISION = 96


@lru_cache(maxsize=None)
def primes_above(p: int, d: int) -> tuple[PrimeIdealF, ...]:
    if not isprime(p):
        raise FieldError(f"{p} is not prime")
    s = artin_symbol(p, d)
    if s == 0:
        return (PrimeIdealF(p, "ramified", d),)
    if s == -1:
        return (PrimeIdealF(p, "inert", d, residue_degree=2),)
    t, m = omega_data(d)
    roots = [r for r in range(p) if (r * r - t * r - m) % p == 0]
    assert len(roots) == 2
    out = []
    for r0 in roots:
        out.append(PrimeIdealF(p, "split", d, _hensel_root(t, m, p, r0, ROOT_PRECISION)))
    return tuple(sorted(out, key=lambda P: P.root % p))


def primes_dividing(n: int, d: int) -> list[PrimeIdealF]:
    out = []
    for p in sorted(factorint(abs(n))):
        out.extend(primes_above(p, d))
    return out


def padic_val(q: Fraction | int, p: int) -> int:
    q = _frac(q)
    if q == 0:
        raise ValueError("valuation of zero")
    v = 0
    n, dd = q.numerator, q.denominator
    while n % p == 0:
        n //= p
        v += 1
    while dd % p == 0:
        dd //= p
        v -= 1
    return v


# ------------------------------------------------------ completions

class LocalField:
    """The completion F_P, modelled exactly on rational coordinates.

    split: F_P = Q_p via omega -> root; elements are rationals (c, 0).
    inert: basis {1, omega}.  ramified: basis {1, pi} with pi Eisenstein.
    """

    def __init__(self, P: PrimeIdealF):
        self.P = P
        self.p = P.p
        self.kind = P.kind
        d = P.d
        self.d = d
        p = P.p
        if P.kind == "inert":
            self.t, self.n = omega_data(d)
        elif P.kind == "ramified":
            if p == 2 and d % 4 == 3:
                self.shift = 1       # pi = 1 + sqrt d
                self.t, self.n = 2, d - 1
            else:
                self.shift = 0       # pi = sqrt d
                self.t, self.n = 0, d
        else:
            self.t, self.n = 0, 0
        self.e2 = padic_val(2, p) * P.e if p == 2 else 0

    # -- conversion
    def coords(self, x: FieldElem) -> tuple[Fraction, Fraction]:
        if self.kind == "split":
            c0, c1 = x.omega_coords()
            return (c0 + c1 * self.P.root, Fraction(0))
        if self.kind == "inert":
            return x.omega_coords()
        if self.shift:
            return (x.x - x.y, x.y)
        return (x.x, x.y)

    def pi_omega_coords(self) -> tuple[int, int]:
        """A global element with P-valuation 1, in omega coordinates."""
        d = self.d
        if self.kind == "ramified":
            pi = FieldElem(self.shift, 1, d)
        elif self.kind == "inert":
            pi = FieldElem.from_int(self.p, d)
        else:
            w = FieldElem.omega(d)
            pi = w - (self.P.root % self.p)
            if self.valuation(pi) != 1:
                pi = pi + self.p
        c0, c1 = pi.omega_coords()
        return int(c0), int(c1)

    # -- valuation
    def val_coords(self, c: Sequence[Fraction]) -> int:
        c0, c1 = c
        if self.kind == "split":
            v = padic_val(c0, self.p)
            if v > ROOT_PRECISION // 2:
                raise FieldError("valuation beyond working precision")
            return v
        inf = 10**9
        v0 = padic_val(c0, self.p) if c0 else inf
        v1 = padic_val(c1, self.p) if c1 else inf
        if self.kind == "inert":
            return min(v0, v1)
        return min(2 * v0, 2 * v1 + 1)

    def valuation(self, x: FieldElem) -> int:
        if not x:
            raise ValueError("valuation of zero")
        return self.val_coords(self.coords(x))

    # -- arithmetic on coordinate pairs
    def mul(self, a, b):
        if self.kind == "split":
            return (a[0] * b[0], Fraction(0))
        c0 = a[0] * b[0] + self.n * a[1] * b[1]
        c1 = a[0] * b[1] + a[1] * b[0] + self.t * a[1] * b[1]
        return (c0, c1)

    def div_pi(self, a):
        if self.kind != "ramified":
            return (a[0] / self.p, a[1] / self.p)
        # 1/pi = (pi - t)/n
        c0, c1 = a
        return (c1 - c0 * self.t / self.n, c0 / self.n)

    def unit_part(self, a) -> tuple[int, tuple]:
        v = self.val_coords(a)
        u = a
        for _ in range(v):
            u = self.div_pi(u)
        for _ in range(-v):
            u = self.mul(u, self.pi_coords())
        return v, u

    def pi_coords(self):
        if self.kind == "ramified":
            return (Fraction(0), Fraction(1))
        return (Fraction(self.p), Fraction(0))

    # -- reduction modulo P^N
    def moduli(self, N: int) -> tuple[int, int]:
        p = self.p
        if self.kind == "split":
            return p ** N, 1
        if self.kind == "inert":
            return p ** N, p ** N
        return p ** ((N + 1) // 2), p ** (N // 2)

    def reduce(self, a, N: int) -> tuple[int, int]:
        m0, m1 = self.moduli(N)
        out = []
        for c, m in zip(a, (m0, m1)):
            if m == 1:
                out.append(0)
                continue
            if c.denominator % self.p == 0:
                raise FieldError("element not integral at P")
            out.append(c.numerator * pow(c.denominator, -1, m) % m)
        return tuple(out)

    def reps(self, N: int) -> list[tuple[int, int]]:
        m0, m1 = self.moduli(N)
        return [(a, b) for a in range(m0) for b in range(m1)]

    def mul_mod(self, a, b, N: int):
        m0, m1 = self.moduli(N)
        if self.kind == "split":
            return (a[0] * b[0] % m0, 0)
        c0 = a[0] * b[0] + self.n * a[1] * b[1]
        c1 = a[0] * b[1] + a[1] * b[0] + self.t * a[1] * b[1]
        if self.kind == "ramified":
            # c0 + c1*pi reduced modulo P^N
            return self.reduce((Fraction(c0), Fraction(c1)), N)
        return (c0 % m0, c1 % m1)

    def is_unit_rep(self, a) -> bool:
        if self.kind == "inert":
            return a[0] % self.p != 0 or a[1] % self.p != 0
        return a[0] % self.p != 0

    # -- squares
    @lru_cache(maxsize=None)
    def unit_squares(self, N: int) -> frozenset:
        return frozenset(self.mul_mod(r, r, N) for r in self.reps(N) if self.is_unit_rep(r))

    def square_level(self) -> int:
        """N such that a unit congruent to a square mod P^N is a square."""
        return 2 * self.e2 + 1 if self.p == 2 else 1

    def is_square(self, x: FieldElem) -> bool:
        v, u = self.unit_part(self.coords(x))
        if v % 2:
            return False
        N = self.square_level()
        return self.reduce(u, N) in self.unit_squares(N)

    def square_class(self, a) -> tuple[int, tuple]:
        """Canonical label of the class of a (coordinate pair) in F_P^x / F_P^x2."""
        v, u = self.unit_part(a)
        N = self.square_level()
        r = self.reduce(u, N)
        label = min(self.mul_mod(r, s, N) for s in self.unit_squares(N))
        return v % 2, label

    def class_mul(self, c1, c2):
        N = self.square_level()
        r = self.mul_mod(c1[1], c2[1], N)
        return (c1[0] + c2[0]) % 2, min(self.mul_mod(r, s, N) for s in self.unit_squares(N))

    def square_class_count(self) -> int:
        N = self.square_level()
        units = [r for r in self.reps(N) if self.is_unit_rep(r)]
        return 2 * len(units) // len(self.unit_squares(N))

    # -- residue field
    def residue_power(self, a, k: int) -> tuple[int, int]:
        """(a mod P)^k for a P-unit a, computed in the residue field."""
        r = self.reduce(a, 1)
        out = (1, 0)
        base = r
        while k:
            if k & 1:
                out = self.mul_mod(out, base, 1)
            base = self.mul_mod(base, base, 1)
            k >>= 1
        return out

    def quadratic_character(self, x: FieldElem) -> int:
        """Local splitting type of F_P(sqrt x)/F_P: +1 split, -1 unramified, 0 ramified."""
        v, u = self.unit_part(self.coords(x))
        if v % 2:
            return 0
        if self.p != 2:
            q = self.P.norm
            r = self.residue_power(u, (q - 1) // 2)
            return 1 if r == (1, 0) else -1
        N = self.square_level()
        if self.reduce(u, N) in self.unit_squares(N):
            return 1
        if self.reduce(u, N - 1) in self.unit_squares(N - 1):
            return -1
        return 0


@lru_cache(maxsize=None)
def local_field(P: PrimeIdealF) -> LocalField:
    return LocalField(P)


def local_artin(P: PrimeIdealF, x: FieldElem) -> int:
    """Artin symbol of F(sqrt x)/F at P."""
    return local_field(P).quadratic_character(x)


# ------------------------------------------------------------ ideals

@dataclass(frozen=True)
class IdealF:
    """A fractional O_F-ideal in factored form."""

    d: int
    factors: tuple = field(default=())

    @classmethod
    def from_dict(cls, d: int, fac: dict) -> "IdealF":
        items = tuple(sorted(((P, e) for P, e in fac.items() if e), key=lambda pe: pe[0].sort_key()))
        return cls(d, items)

    @classmethod
    def unit(cls, d: int) -> "IdealF":
        return cls(d, ())

    @classmethod
    def from_generators(cls, gens: Iterable[FieldElem], d: int) -> "IdealF":
        gens = [g for g in gens if g]
        if not gens:
            raise FieldError("zero ideal")
        t, m = omega_data(d)
        vecs = []
        for g in gens:
            c0, c1 = g.omega_coords()
            vecs.append([c0, c1])
            vecs.append([c1 * m, c0 + c1 * t])
        L = Lattice.from_vectors(vecs)
        nrm = L.det()
        ps = set(factorint(nrm.numerator)) | set(factorint(nrm.denominator))
        for g in gens:
            nm = g.norm()
            ps |= set(factorint(abs(nm.numerator))) | set(factorint(nm.denominator))
        fac = {}
        for p in sorted(q for q in ps if q > 1):
            for P in primes_above(p, d):
                fac[P] = min(P.valuation(g) for g in gens)
        out = cls.from_dict(d, fac)
        assert out.norm() == nrm, "ideal factorisation does not match the lattice norm"
        return out

    @classmethod
    def principal(cls, x: FieldElem) -> "IdealF":
        return cls.from_generators([x], x.d)

    def as_dict(self) -> dict:
        return dict(self.factors)

    def norm(self) -> Fraction:
        out = Fraction(1)
        for P, e in self.factors:
            out *= Fraction(P.norm) ** e
        return out

    def __mul__(self, other: "IdealF") -> "IdealF":
        fac = self.as_dict()
        for P, e in other.factors:
            fac[P] = fac.get(P, 0) + e
        return IdealF.from_dict(self.d, fac)

    def __pow__(self, k: int) -> "IdealF":
        return IdealF.from_dict(self.d, {P: e * k for P, e in self.factors})

    def inverse(self) -> "IdealF":
        return self ** -1

    def divides(self, other: "IdealF") -> bool:
        fo = other.as_dict()
        fs = self.as_dict()
        return all(fo.get(P, 0) >= e for P, e in fs.items()) and all(
            e >= 0 or fs.get(P, 0) <= e for P, e in fo.items())

    def valuation(self, P: PrimeIdealF) -> int:
        return self.as_dict().get(P, 0)

    def primes(self) -> list[PrimeIdealF]:
        return [P for P, _ in self.factors]

    def is_integral(self) -> bool:
        return all(e > 0 for _, e in self.factors)

    def divisors(self) -> list["IdealF"]:
        out = [{}]
        for P, e in self.factors:
            assert e > 0
            out = [dict(f, **{}) | {P: k} for f in out for k in range(e + 1)]
        return [IdealF.from_dict(self.d, f) for f in out]

    def lattice(self) -> Lattice:
        """Z-lattice in omega coordinates (integral ideals only)."""
        L = Lattice([[1, 0], [0, 1]])
        for P, e in self.factors:
            for _ in range(e):
                L = _ideal_mul_lattice(L, P.lattice(), self.d)
        return L

    def __str__(self):
        if not self.factors:
            return "(1)"
        return "*".join(f"{P}" + (f"^{e}" if e != 1 else "") for P, e in self.factors)


def _ideal_mul_lattice(A: Lattice, B: Lattice, d: int) -> Lattice:
    t, m = omega_data(d)
    vecs = []
    for a in A.basis():
        for b in B.basis():
            c0 = a[0] * b[0] + m * a[1] * b[1]
            c1 = a[0] * b[1] + a[1] * b[0] + t * a[1] * b[1]
            vecs.append([c0, c1])
    return Lattice.from_vectors(vecs)


# --------------------------------------------------- residue dispatch

def half_coords(x: FieldElem) -> tuple[int, int]:
    """(A, B) with x = (A + B sqrt d)/2; requires x integral."""
    return int(2 * x.x), int(2 * x.y)


def mod_three_halves(q: Fraction) -> int:
    """Class of q in (1/2)Z modulo (3/2)Z, returned as c in {0,1,2} with 2q = 2c (mod 3)."""
    twice = int(2 * q)
    assert 2 * q == twice
    return (twice * 2) % 3  # 2c = twice (mod 3)  =>  c = 2*twice (mod 3)


RESIDUE_TAGS = ("family_B", "family_D", "a_parity", "a_mod4", "b_mod4", "eps_mod_q", "eps_mod_3")


def residue_conditions(fu: FundUnitData, modulus: str = "family_B") -> str:
    """The congruence class of the fundamental unit that selects a case row.

    modulus:
      family_B  - row label for the (-1,-eps) maximal-order tables
      family_D  - row label for the (-eps,-3) maximal-order tables
      a_parity, a_mod4, b_mod4 - coordinate congruences of eps = a + b sqrt d
      eps_mod_q - eps modulo the prime above 3 when 3 | d
      eps_mod_3 - eps modulo 3O_F when d = 1 mod 3
    """
    d = fu.d
    if d < 6:
        raise FieldError("residue dispatch covers d >= 6 only")
    eps = fu.eps
    a, b = eps.x, eps.y
    integral_coords = a.denominator == 1 and b.denominator == 1
    if modulus == "a_parity":
        if not integral_coords:
            return "a half-integral"
        return "a even" if a % 2 == 0 else "a odd"
    if modulus == "a_mod4":
        if not integral_coords:
            return "a half-integral"
        return f"a≡{int(a) % 4} mod 4"
    if modulus == "b_mod4":
        if not integral_coords:
            return f"b≡{int(2 * b) % 4} mod 4 (half)"
        return f"b≡{int(b) % 4} mod 4"
    if modulus == "eps_mod_q":
        if d % 3:
            raise FieldError("eps_mod_q needs 3 | d")
        c = mod_three_halves(a)
        return {1: "eps≡1 mod q", 2: "eps≡-1 mod q"}.get(c, "eps≡0 mod q")
    if modulus == "eps_mod_3":
        if d % 3 != 1:
            raise FieldError("eps_mod_3 needs d ≡ 1 mod 3")
        if fu.norm_sign != 1:
            return "eps≢±1 mod 3"
        A, B = half_coords(eps)
        assert B % 3 == 0
        return "eps≡1 mod 3" if A % 3 == 2 else "eps≡-1 mod 3"
    if modulus == "family_B":
        if fu.norm_sign != 1:
            return "norm -1"
        if d % 8 == 1:
            return f"d≡1 mod 8, a≡{int(a) % 4} mod 4"
        if d % 8 == 5:
            return "d≡5 mod 8"
        if d % 4 == 3 and int(a) % 2 == 0:
            return "d≡3 mod 4, a even"
        return "otherwise"
    if modulus == "family_D":
        if fu.norm_sign != 1:
            return "norm -1"
        if d % 3 == 0:
            return "3|d, " + residue_conditions(fu, "eps_mod_q")
        if d % 3 == 1:
            return "d≡1 mod 3, " + residue_conditions(fu, "eps_mod_3")
        return "d≡2 mod 3"
    raise FieldError(f"unsupported modulus tag {modulus!r}")
