"""Class numbers of quadratic fields by binary quadratic forms, and
zeta_F(-1) for real quadratic F by a finite divisor sum."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from sympy import divisor_sigma, factorint

from .quadfield import FieldError, check_d, field_disc, fundamental_unit


@dataclass(frozen=True)
class FormClassData:
    disc: int
    reduced_forms: tuple[tuple[int, int, int], ...]
    h: int


def is_fundamental(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return all(e == 1 for p, e in factorint(abs(D)).items())
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and all(e == 1 for p, e in factorint(abs(m)).items())
    return False


def disc_of(m: int) -> int:
    """Discriminant of Q(sqrt m) for square-free m != 1."""
    if m in (0, 1) or any(e > 1 for e in factorint(abs(m)).values()):
        raise FieldError(f"{m} is not a square-free integer != 0, 1")
    return m if m % 4 == 1 else 4 * m


def reduced_forms_imaginary(D: int) -> list[tuple[int, int, int]]:
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, abs(b)), c) != 1:
                continue
            out.append((a, b, c))
        a += 1
    return out


@lru_cache(maxsize=None)
def form_class_data(D: int) -> FormClassData:
    if D >= 0 or D % 4 not in (0, 1):
        raise FieldError(f"{D} is not a negative discriminant")
    forms = tuple(reduced_forms_imaginary(D))
    return FormClassData(D, forms, len(forms))


def class_number_imaginary(D: int) -> int:
    if D >= 0 or not is_fundamental(D):
        raise FieldError(f"{D} is not a negative fundamental discriminant")
    return form_class_data(D).h


def h_imag(m: int) -> int:
    """h(Q(sqrt -m)) for square-free m > 0."""
    return class_number_imaginary(disc_of(-m))


# ---------------------------------------------------------- real fields

def _rho(form, D, r):
    """One step of rho-reduction on an indefinite form."""
    a, b, c = form
    c_abs = abs(c)
    # b' = -b mod 2c, chosen in the reduced window
    if c_abs > r:
        lo = -c_abs + 1
    else:
        lo = r - 2 * c_abs + 1
    b2 = -b
    k = (lo - b2) // (2 * c_abs) + (1 if (lo - b2) % (2 * c_abs) else 0)
    b2 += 2 * c_abs * k
    return (c, b2, (b2 * b2 - D) // (4 * c))


def _is_reduced_indefinite(form, D, r) -> bool:
    a, b, c = form
    return 0 < b <= r and r - b < 2 * abs(a) <= r + b


def reduced_forms_real(D: int) -> list[tuple[int, int, int]]:
    r = isqrt(D)
    out = []
    for b in range(1, r + 1):
        if (b - D) % 2:
            continue
        n = (D - b * b) // 4
        if n <= 0:
            continue
        for a in range(1, n + 1):
            if n % a:
                continue
            c = n // a
            for s in (1, -1):
                f = (s * a, b, -s * c)
                if gcd(gcd(a, b), c) == 1 and _is_reduced_indefinite(f, D, r):
                    out.append(f)
    return out


@lru_cache(maxsize=None)
def narrow_class_number(d: int) -> int:
    D = field_disc(check_d(d))
    r = isqrt(D)
    todo = set(reduced_forms_real(D))
    cycles = 0
    while todo:
        start = todo.pop()
        f = _rho(start, D, r)
        steps = 0
        while f != start:
            if f not in todo and f != start:
                raise AssertionError(f"rho cycle left the reduced set at {f}")
            todo.discard(f)
            f = _rho(f, D, r)
            steps += 1
        cycles += 1
    return cycles


@lru_cache(maxsize=None)
def class_number_real(d: int) -> int:
    hp = narrow_class_number(d)
    if fundamental_unit(d).norm_sign == 1:
        assert hp % 2 == 0
        return hp // 2
    return hp


def class_number(m: int) -> int:
    """h(Q(sqrt m)) for square-free m != 0, 1."""
    return class_number_real(m) if m > 0 else h_imag(-m)


# ---------------------------------------------------------- zeta_F(-1)

@lru_cache(maxsize=None)
def zeta_minus_one(d: int) -> Fraction:
    D = field_disc(check_d(d))
    total = 0
    r = isqrt(D)
    for b in range(-r, r + 1):
        if (D - b * b) % 4 or D == b * b:
            continue
        total += int(divisor_sigma((D - b * b) // 4, 1))
    return Fraction(total, 60)
