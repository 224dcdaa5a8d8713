import pytest

from quatrefine.primecase import (
    choose_D3_representative, counts_prime, crosscheck_prime, d3_label, type_numbers_prime,
)
from quatrefine.quadfield import FieldError, kronecker
from quatrefine.ssab import census, exists_real_quadratic_endalgebra, has_nonabelian_type


def test_p7():
    t = type_numbers_prime(7)
    assert t == {"C1": 0, "C2": 0, "C3": 0, "C4": 0, "D3‡": 1, "D4": 1, "S4": 1}


def test_small_primes():
    assert type_numbers_prime(2) == {"S4": 1}
    assert type_numbers_prime(3) == {"S4": 1, "D12": 1}
    assert type_numbers_prime(5) == {"A5": 1}
    assert counts_prime(3).t_total == 2
    assert counts_prime(5).h_total == 1


@pytest.mark.parametrize("p", [13, 17, 29, 37, 41, 53])
def test_one_mod_four_symbols(p):
    t = type_numbers_prime(p)
    assert t["A4"] == (1 - kronecker(2, p)) // 2
    assert t["D3†"] == (1 - kronecker(p, 3)) // 2


def test_p13():
    t = type_numbers_prime(13)
    assert t["D3†"] == 0 and t["A4"] == 1


def test_d3_representatives():
    assert choose_D3_representative(7) == "D-sixth"
    assert choose_D3_representative(11) == "D3dag-max"
    assert choose_D3_representative(19) == "D-sixth-sqrt"
    assert d3_label(11) == "D3†" and d3_label(7) == "D3‡"
    with pytest.raises(FieldError):
        choose_D3_representative(13)


@pytest.mark.parametrize("p", [2, 7, 23])
def test_crosscheck(p):
    assert crosscheck_prime(p) == {}


def test_rejects_composite():
    with pytest.raises(FieldError):
        type_numbers_prime(15)


def test_census_examples():
    c = census(7)
    assert c.per_group == {"D3‡": 1, "D4": 1, "S4": 1} and c.h_pi == 3
    assert census(5).per_group == {"A5": 1}
    assert census(13).per_group["A4"] == 1


def test_endalgebra_criterion():
    assert exists_real_quadratic_endalgebra(7)
    assert exists_real_quadratic_endalgebra(5)
    assert not exists_real_quadratic_endalgebra(73)
    for p in (2, 3, 5, 7, 11, 13, 73, 97, 193):
        assert exists_real_quadratic_endalgebra(p) == has_nonabelian_type(p)
