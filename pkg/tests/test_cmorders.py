import json
from fractions import Fraction

import pytest

from quatrefine.cmorders import (
    B_n, closed_form_h, cm_fields, cm_table_json, enumerate_B, r_s_pair,
)
from quatrefine.quadfield import FieldElem, FieldError, fundamental_unit, squarefree


def test_d7_orders():
    Bs = enumerate_B(7)
    assert len(Bs) == 5
    by = {(B.field_tag, B.conductor.norm()): B for B in Bs}
    assert set(by) == {("F(√−1)", 1), ("F(√−1)", 2), ("F(√−1)", 4), ("F(√−3)", 1), ("F(√−ε)", 1)}
    assert by[("F(√−1)", 4)].h_B == 1
    assert by[("F(√−3)", 1)].h_B == 2
    assert by[("F(√−1)", 2)].w == 4
    assert by[("F(√−ε)", 1)].is_maximal


@pytest.mark.parametrize("d", [6, 10, 14, 22, 30])
def test_two_mod_four_has_two_gaussian_orders(d):
    gauss = [B for B in enumerate_B(d) if B.field_tag == "F(√−1)"]
    assert sorted(B.conductor.norm() for B in gauss) == [1, 2]


@pytest.mark.parametrize("d", [10, 13, 29, 41])
def test_negative_norm_has_no_eps_field(d):
    assert fundamental_unit(d).norm_sign == -1
    assert all(K.tag != "F(√−ε)" for K in cm_fields(fundamental_unit(d)))


@pytest.mark.parametrize("d", [7, 11, 19, 23])
def test_B12_is_generated_by_alpha(d):
    B = next(B for B in enumerate_B(d) if B.field_tag == "F(√−1)" and B.conductor.norm() == 2)
    K = B.field
    alpha = K.vec(FieldElem(Fraction(1, 2), Fraction(1, 2), d), FieldElem(Fraction(1, 2), Fraction(1, 2), d))
    assert B.lattice == K.of_span([K.one(), K.u(), alpha, K.mul(K.u(), alpha)])


def test_rs_pairs():
    assert 5 in r_s_pair(30)
    assert 7 in r_s_pair(42)
    assert 33 in r_s_pair(66)
    with pytest.raises(FieldError):
        r_s_pair(5)


def test_B_n_partition():
    d = 7
    assert sum(len(B_n(d, n)) for n in (2, 3, 4, 6)) == len(enumerate_B(d))
    assert [B.field_tag for B in B_n(d, 3)] == ["F(√−3)"]


def test_maximal_order_class_number_is_h_K():
    for B in enumerate_B(21):
        if B.is_maximal:
            assert B.h_B == B.h_K


def test_closed_forms_agree():
    checked = 0
    for d in range(6, 120):
        if not squarefree(d):
            continue
        fu = fundamental_unit(d)
        for B in enumerate_B(d):
            cf = closed_form_h(B, fu)
            if cf is not None:
                assert cf == B.h_B, (d, B.label())
                checked += 1
    assert checked > 150


def test_cm_table_json():
    data = json.loads(cm_table_json(7))
    assert data["d"] == 7 and len(data["orders"]) == 5
    assert {r["w"] for r in data["orders"]} == {2, 3, 4}


def test_small_d_rejected():
    with pytest.raises(FieldError):
        enumerate_B(5)
