from fractions import Fraction

import pytest

from quatrefine.quadfield import (
    F, FieldError, IdealF, artin_symbol, check_d, fundamental_unit, is_square_in_F,
    kronecker, primes_above, residue_conditions, squarefree,
)


def _cf_unit(d: int) -> tuple[int, int]:
    """Smallest x + y sqrt(d) (or its half) of norm +-1 by brute force."""
    for y in range(1, 10**4):
        for sgn in (1, -1):
            for den in ((2, 1) if d % 4 == 1 else (1,)):
                n2 = d * y * y + sgn * den * den
                x = int(round(n2 ** 0.5))
                if x > 0 and x * x == n2 and (den == 1 or (x - y) % 2 == 0):
                    return Fraction(x, den), Fraction(y, den)
    raise AssertionError


@pytest.mark.parametrize("d,x,y", [(323, 18, 1), (66, 65, 8), (30, 11, 2)])
def test_fundamental_unit_known(d, x, y):
    fu = fundamental_unit(d)
    assert fu.eps == F(x, y, d)
    assert fu.norm_sign == 1


def test_fundamental_unit_golden_ratio():
    fu = fundamental_unit(5)
    assert fu.eps == F(Fraction(1, 2), Fraction(1, 2), 5)
    assert fu.norm_sign == -1


@pytest.mark.parametrize("d", [2, 3, 6, 7, 10, 13, 14, 21, 29, 31, 33, 22, 46, 61])
def test_fundamental_unit_against_brute_force(d):
    fu = fundamental_unit(d)
    x, y = _cf_unit(d)
    assert (fu.eps.x, fu.eps.y) == (x, y)
    assert fu.eps.norm() == fu.norm_sign


def test_is_square_examples():
    eps = fundamental_unit(13).eps
    assert is_square_in_F(eps * eps) == eps
    assert is_square_in_F(F(16, 6, 7)) == F(3, 1, 7)
    root = is_square_in_F(F(Fraction(15, 2), Fraction(3, 2), 21))
    assert root == F(Fraction(3, 2), Fraction(1, 2), 21)
    assert is_square_in_F(F(2, 0, 7)) is None
    assert is_square_in_F(F(7, 0, 7)) == F(0, 1, 7)


def test_unit_square_flags():
    assert fundamental_unit(7).two_eps_square
    assert fundamental_unit(21).three_eps_square
    assert not fundamental_unit(17).two_eps_square


def test_artin_symbol():
    assert artin_symbol(2, 7) == 0
    assert artin_symbol(2, 17) == 1
    assert artin_symbol(3, 7) == 1
    assert artin_symbol(2, 5) == -1
    assert kronecker(-7, 2) == 1


def test_primes_above_shapes():
    assert [P.kind for P in primes_above(2, 17)] == ["split", "split"]
    assert [P.kind for P in primes_above(3, 7)] == ["split", "split"]
    assert [P.kind for P in primes_above(2, 7)] == ["ramified"]
    assert [P.kind for P in primes_above(2, 5)] == ["inert"]


def test_ideal_arithmetic():
    d = 7
    two = IdealF.principal(F(2, 0, d))
    (P2,) = primes_above(2, d)
    assert two == IdealF.from_dict(d, {P2: 2})
    assert two.norm() == 4
    assert len(two.divisors()) == 3
    assert IdealF.from_generators([F(2, 0, d), F(1, 1, d)], d) == IdealF.from_dict(d, {P2: 1})


def test_residue_rows():
    assert residue_conditions(fundamental_unit(7), "a_parity") == "a even"
    assert residue_conditions(fundamental_unit(33)) == "d≡1 mod 8, a≡3 mod 4"
    assert residue_conditions(fundamental_unit(7)) == "d≡3 mod 4, a even"
    with pytest.raises(FieldError):
        residue_conditions(fundamental_unit(5))


@pytest.mark.parametrize("bad", [1, 0, -3, 12, 18])
def test_check_d_rejects(bad):
    with pytest.raises(FieldError):
        check_d(bad)


def test_squarefree():
    assert squarefree(30) and not squarefree(50)
