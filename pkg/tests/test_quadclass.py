from fractions import Fraction
from math import gcd

import pytest

from quatrefine.quadclass import (
    class_number, class_number_imaginary, class_number_real, h_imag, zeta_minus_one,
)
from quatrefine.quadfield import field_disc, kronecker


def _reduced_form_count(D: int) -> int:
    n = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0) or gcd(gcd(a, b), c) != 1:
                continue
            n += 1
        a += 1
    return n


def _chi(D: int, n: int) -> int:
    out = 1
    m = n
    for p in range(2, n + 1):
        while m % p == 0:
            out *= kronecker(D, p)
            m //= p
    return out


def _zeta_via_bernoulli(d: int) -> Fraction:
    D = field_disc(d)
    B2 = Fraction(0)
    for a in range(1, D + 1):
        x = Fraction(a, D)
        B2 += _chi(D, a) * (x * x - x + Fraction(1, 6))
    return D * B2 / 24


@pytest.mark.parametrize("D,h", [(-4, 1), (-3, 1), (-23, 3), (-84, 4), (-56, 4), (-104, 6)])
def test_imaginary_examples(D, h):
    assert class_number_imaginary(D) == h


@pytest.mark.parametrize("D", [-7, -8, -11, -15, -20, -24, -39, -47, -71, -95, -119, -195, -260])
def test_imaginary_against_forms(D):
    assert class_number_imaginary(D) == _reduced_form_count(D)


def test_h_imag_uses_field_discriminant():
    assert h_imag(21) == 4
    assert h_imag(7) == 1
    assert h_imag(14) == 4


@pytest.mark.parametrize("d,h", [(7, 1), (10, 2), (79, 3), (82, 4), (229, 3), (323, 4), (799, 8)])
def test_real_examples(d, h):
    assert class_number_real(d) == h


def test_class_number_dispatch():
    assert class_number(-21) == 4
    assert class_number(323) == 4


def test_zeta_small():
    assert zeta_minus_one(5) == Fraction(1, 30)
    assert zeta_minus_one(2) == Fraction(1, 12)


@pytest.mark.parametrize("d", [3, 6, 7, 13, 17, 21, 33, 41, 66, 97])
def test_zeta_against_generalized_bernoulli(d):
    assert zeta_minus_one(d) == _zeta_via_bernoulli(d)
