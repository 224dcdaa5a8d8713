from fractions import Fraction

import pytest

from quatrefine.cmorders import enumerate_B
from quatrefine.quadclass import class_number_real
from quatrefine.quadfield import F, FieldError, fundamental_unit
from quatrefine.quatalg import AlgebraError, QuatAlgebra, standard_algebra
from quatrefine.recipe import (
    RefinedCounts, eichler_h, full_counts, h_noncyclic, mass, mass_and_h1, minimal_order_orbits,
    t_noncyclic, t_table,
)


def test_t_noncyclic_d7():
    fu = fundamental_unit(7)
    t, reps = t_noncyclic(fu, standard_algebra("A", fu))
    assert t["S4"] == t["D4"] == 1
    assert t["A4"] == t["D2†"] == 0
    assert t["D3‡"] == 1
    assert sorted(r.group_tag.label for r in reps) == ["D3‡", "D4", "S4"]


def test_d6_has_no_D2_ddagger():
    fu = fundamental_unit(6)
    assert t_table(fu, standard_algebra("B", fu))["D2‡"] == 0


def test_h_D2_ddagger_two_dyadic_ramified():
    fu = fundamental_unit(105)
    alg = standard_algebra("B", fu)
    t, reps = t_noncyclic(fu, alg)
    h = h_noncyclic(t, reps, fu, alg)
    assert h["D2‡"] == 2 * class_number_real(105)


def test_mass_and_eichler_d7():
    fu = fundamental_unit(7)
    H = standard_algebra("Hinf", fu)
    assert mass(fu, H) == Fraction(1, 3)
    M, h1 = mass_and_h1(fu, H, {"S4": 1, "D4": 1, "D3‡": 1})
    assert (M, h1) == (Fraction(1, 3), 0)
    assert eichler_h(fu, H, enumerate_B(7)) == 3


def test_full_counts_d7():
    rc = full_counts(7, "Hinf")
    nonzero = {g: v for g, v in rc.per_group.items() if v[1]}
    assert nonzero == {"S4": (1, 1), "D4": (1, 1), "D3‡": (1, 1)}
    assert all(rc.per_group[c] == (0, 0) for c in ("C1", "C2", "C3", "C4", "C6"))
    assert rc.h_total == 3 and rc.t_total == 3
    assert rc.residuals_ok()


def test_small_d_goes_through_table():
    assert full_counts(5).per_group == {"A5": (1, 1)}
    assert full_counts(3).h_total == 2
    with pytest.raises(FieldError):
        full_counts(5, "A")


def test_discriminant_prime_to_six_kills_noncyclic():
    alg = QuatAlgebra(F(-1, 0, 7), F(-19, 0, 7))
    rc = full_counts(7, alg)
    assert rc.omega == 2
    assert rc.mass == Fraction(1, 3) * 18 * 18
    assert all(h == 0 for g, (_, h) in rc.per_group.items() if not g.startswith("C"))
    assert rc.residuals_ok()


def test_cyclic_types_unknown_when_ramified():
    rc = full_counts(7, "C")
    assert rc.per_group["C4"] == (None, 4)
    assert rc.per_group["D3†"] == (1, 2)


@pytest.mark.parametrize("d", [6, 11, 13, 17, 21])
def test_residuals_vanish(d):
    for tag in ("A", "C"):
        assert full_counts(d, tag).residuals_ok()


def test_json_round_trip():
    rc = full_counts(11, "A")
    back = RefinedCounts.from_json(rc.to_json())
    assert back == rc
    assert back.to_json() == rc.to_json()


def test_minimal_order_orbit_data():
    data = minimal_order_orbits(7, "D3‡")
    assert (data.aleph, data.beth) == (4, 2)
    assert [r.group_tag.label for r in data.reps] == ["D3‡"]


def test_indefinite_algebra_rejected():
    with pytest.raises(AlgebraError):
        full_counts(7, QuatAlgebra(F(1, 0, 7), F(-1, 0, 7)))
