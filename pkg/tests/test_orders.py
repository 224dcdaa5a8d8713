import json
from fractions import Fraction

import pytest

from quatrefine.cmorders import enumerate_B
from quatrefine.orders import (
    CASES, OrderError, QuatLattice, admissible_cases, discriminant, dual_lattice,
    explicit_maximal_order, from_json, gorenstein_check, make_order, maximal_overorders,
    minimal_G_order, normalizer_membership, optimal_embedding_count, orbits, reduced_units,
    to_json, unit_group,
)
from quatrefine.primecase import choose_D3_representative
from quatrefine.quadfield import F, FieldElem, IdealF, fundamental_unit
from quatrefine.quatalg import standard_algebra

H = Fraction(1, 2)


def _ideal(n, d):
    return IdealF.principal(FieldElem.from_int(n, d))


def test_make_order_discriminants():
    A = standard_algebra("A", 7)
    one, i, j, k = A.basis()
    assert make_order([one, i, j, k]).disc == _ideal(4, 7)
    D = standard_algebra("D", 7)
    one, i, j, k = D.basis()
    assert make_order([one, i, (one + j) * H, i * (one + j) * H]).disc == _ideal(3, 7)


def test_make_order_rejects():
    A = standard_algebra("A", 7)
    one, i, j, k = A.basis()
    with pytest.raises(OrderError) as e:
        make_order([one, i, j, k * H])
    assert e.value.kind == "not-a-ring"
    with pytest.raises(OrderError) as e:
        make_order([one, i, j])
    assert e.value.kind == "not-full-rank"
    with pytest.raises(OrderError) as e:
        make_order([one, i * H, j, k])
    assert e.value.kind in ("not-a-ring", "not-integral")


def test_dual_of_standard_order():
    A = standard_algebra("A", 7)
    one, i, j, k = A.basis()
    O = make_order([one, i, j, k])
    dual = dual_lattice(O.lattice)
    assert dual == QuatLattice.from_elements(A, [one * H, i * H, j * H, k * H])
    assert dual_lattice(dual) == O.lattice


@pytest.mark.parametrize("d", [7, 14, 21])
def test_dual_of_order_three(d):
    D = standard_algebra("D", d)
    one, i, j, k = D.basis()
    a, b = D.a, D.b
    O = make_order([one, i, (one + j) * H, i * (one + j) * H])
    expected = [(one * b - j) / (2 * b), (i * b + k) / (2 * a * b), j / b, k / (a * b)]
    assert dual_lattice(O.lattice) == QuatLattice.from_elements(D, expected)


def test_minimal_orders_d7():
    assert discriminant(minimal_G_order("A4", 7)) == _ideal(2, 7)
    assert discriminant(minimal_G_order("S4", 7)) == _ideal(1, 7)
    assert discriminant(minimal_G_order("D4", 7)) == _ideal(2, 7)
    assert minimal_G_order("D2†", 7).disc == _ideal(4, 7)
    assert minimal_G_order("D3‡", 7).disc == _ideal(3, 7)


def test_minimal_order_conditions():
    with pytest.raises(OrderError) as e:
        minimal_G_order("D4", 17)
    assert e.value.kind == "condition-not-met"
    with pytest.raises(OrderError) as e:
        minimal_G_order("D2‡", 10)
    assert e.value.kind == "condition-not-met"
    with pytest.raises(OrderError) as e:
        minimal_G_order("S4", 7, standard_algebra("C", 7))
    assert e.value.kind == "wrong-algebra"


def test_unit_groups():
    ug = reduced_units(minimal_G_order("S4", 7))
    assert ug.tag.label == "S4" and len(ug.reps) == 24
    tag, reps = unit_group(explicit_maximal_order("D4-max", 7))
    assert tag.label == "D4" and len(reps) == 8
    assert reduced_units(minimal_G_order("D6", 33)).tag.label == "D6"
    assert reduced_units(minimal_G_order("D2‡", 7)).tag.label == "D2‡"
    assert reduced_units(minimal_G_order("D2†", 7)).tag.label == "D2†"


def test_explicit_order_d7_matches_basis():
    O = explicit_maximal_order("D4-max", 7)
    A = O.alg
    one, i, j, k = A.basis()
    s = F(0, 1, 7)
    want = QuatLattice.from_elements(A, [one, i, (one * s + j) * H, (i * s + k) * H])
    assert O.lattice == want


def test_d3_dagger_order_has_thirds():
    O = explicit_maximal_order("D3dag-max", 11)
    one, i, j, k = O.alg.basis()
    assert O.contains((j * F(0, 1, 11) + k) / 3)


def test_explicit_order_errors():
    with pytest.raises(OrderError) as e:
        explicit_maximal_order("nope", 7)
    assert e.value.kind == "unknown-case"
    with pytest.raises(OrderError) as e:
        explicit_maximal_order("B-xi", 7)
    assert e.value.kind == "case-mismatch"


def test_admissible_cases_build():
    for cid in admissible_cases(7):
        assert explicit_maximal_order(cid, 7).is_maximal()


@pytest.mark.parametrize("d,aleph", [(7, 2), (33, 4)])
def test_maximal_overorders_of_D2_ddagger(d, aleph):
    assert len(maximal_overorders(minimal_G_order("D2‡", d))) == aleph


def test_maximal_order_is_its_own_overorder():
    O = explicit_maximal_order("S4-max", 7)
    assert maximal_overorders(O) == [O]


def test_normalizers():
    A = standard_algebra("A", 7)
    one, i, j, k = A.basis()
    O = make_order([one, i, j, k])
    assert normalizer_membership(one + i, O)
    assert normalizer_membership(i, O)
    assert not normalizer_membership(one + i * 2, O)
    D = standard_algebra("D", 7)
    one, i, j, k = D.basis()
    O3 = make_order([one, i, (one + j) * H, i * (one + j) * H])
    assert normalizer_membership(j, O3)


def test_orbits_partition():
    O = minimal_G_order("D2‡", 33)
    maxes = maximal_overorders(O)
    one, i, j, k = O.alg.basis()
    orbs = orbits(maxes, [one + i])
    assert sorted(len(o) for o in orbs) == [2, 2]


# columns: O_F[sqrt-1], O_F[sqrt-eps], O_{F(sqrt-3)}, B_{1,2}, O_{F(sqrt-1)}
def _columns(d):
    Bs = enumerate_B(d)
    pick = lambda tag, nf: next(B for B in Bs if B.field_tag == tag and B.conductor.norm() == nf)
    return [pick("F(√−1)", 4), pick("F(√−ε)", 1), pick("F(√−3)", 1), pick("F(√−1)", 2),
            pick("F(√−1)", 1)]


@pytest.mark.parametrize("p", [7, 11, 19])
def test_optimal_embedding_table(p):
    l3 = 1 if p % 3 == 1 else -1
    rows = {
        "S4-max": [0, 1, 1, 1, 0],
        "D4-max": [1, 1, 0, 0, 1],
        choose_D3_representative(p): [1 - l3, 1 + l3, 1, 0, 0],
    }
    cols = _columns(p)
    for cid, want in rows.items():
        O = explicit_maximal_order(cid, p)
        assert [optimal_embedding_count(B, O) for B in cols] == want, cid


def test_json_round_trip():
    O = explicit_maximal_order("D4-max", 7)
    back = from_json(to_json(O))
    assert back == O and back.disc == O.disc
    assert json.loads(to_json(O))["algebra"]["d"] == 7


def test_gorenstein():
    assert gorenstein_check(explicit_maximal_order("S4-max", 7))
    A = standard_algebra("A", 7)
    one, i, j, k = A.basis()
    assert not gorenstein_check(make_order([one, i * 2, j * 2, k * 2]))


def test_catalogue_names():
    assert len(CASES) == 23
    assert all(c.algebra in "ABCD" for c in CASES.values())
