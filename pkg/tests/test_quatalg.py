from fractions import Fraction

import pytest

from quatrefine.quadfield import (
    F, fundamental_unit, kronecker, primes_above, residue_conditions,
    squarefree,
)
from quatrefine.quatalg import (
    AlgebraError, QuatAlgebra, hilbert_symbol, hilbert_symbol_at, is_isomorphic, nr, parse_algebra,
    ramification, standard_algebra, tr,
)


def _split_off(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _hilbert_Qp(a: int, b: int, p: int) -> int:
    """Hilbert symbol over Q_p for nonzero integers."""
    al, u = _split_off(a, p)
    be, w = _split_off(b, p)
    if p != 2:
        s = (-1) ** (al * be * ((p - 1) // 2))
        return s * kronecker(u, p) ** be * kronecker(w, p) ** al
    eps = lambda x: ((x - 1) // 2) % 2
    om = lambda x: ((x * x - 1) // 8) % 2
    return (-1) ** ((eps(u) * eps(w) + al * om(w) + be * om(u)) % 2)


def _alg(a, b, d):
    return QuatAlgebra(F(a, 0, d), F(b, 0, d))


def test_norm_trace_basics():
    alg = standard_algebra("A", 7)
    one = alg.one()
    assert nr(one) == 1 and tr(one) == 2
    xi = alg.xi()
    assert xi * xi == xi - one
    assert nr(xi) == 1 and tr(xi) == 1
    C = standard_algebra("C", 7)
    x = (C.one() + C.basis()[2]) * Fraction(1, 2)
    assert nr(x) == 1 and tr(x) == 1


def test_multiplication_rules():
    alg = standard_algebra("D", 7)
    one, i, j, k = alg.basis()
    assert i * i == alg.a and j * j == alg.b
    assert i * j == k and j * i == -k
    assert k * k == -alg.a * alg.b
    x = one + 2 * i - j + k * F(1, 1, 7)
    assert x * x.conj() == nr(x)
    assert x * x.inverse() == one


def test_hilbert_examples():
    A7 = standard_algebra("A", 7)
    for p in (2, 3, 5, 7, 11):
        for P in primes_above(p, 7):
            assert hilbert_symbol_at(A7, P) == 1
    A17 = standard_algebra("A", 17)
    assert [hilbert_symbol_at(A17, P) for P in primes_above(2, 17)] == [-1, -1]


def test_hilbert_at_three_for_eps_one_mod_three():
    d = next(d for d in range(7, 400, 3)
             if squarefree(d) and fundamental_unit(d).norm_sign == 1
             and residue_conditions(fundamental_unit(d), "eps_mod_3") == "eps≡1 mod 3")
    D = standard_algebra("D", d)
    assert all(hilbert_symbol_at(D, P) == -1 for P in primes_above(3, d))


@pytest.mark.parametrize("d", [6, 7, 10, 13, 17, 21, 33])
@pytest.mark.parametrize("a,b", [(-1, -1), (-1, -3), (-2, -5), (3, -7), (-6, 10)])
def test_hilbert_against_rational_oracle(d, a, b):
    for p in (2, 3, 5, 7):
        for P in primes_above(p, d):
            got = hilbert_symbol(F(a, 0, d), F(b, 0, d), P)
            local_degree = 1 if P.kind == "split" else 2
            want = _hilbert_Qp(a, b, p) if local_degree == 1 else 1
            assert got == want, (d, a, b, P)


def test_ramification_examples():
    d = next(d for d in range(17, 400, 8)
             if squarefree(d) and fundamental_unit(d).norm_sign == 1 and fundamental_unit(d).eps.x % 4 == 1
             and fundamental_unit(d).eps.x.denominator == 1)
    r = ramification(standard_algebra("B", d))
    assert r.omega == 2 and all(P.p == 2 for P in r.finite_ramified)
    # 3 splits in Q(sqrt 7) and (-1,-3) is ramified over Q_3
    r7 = ramification(standard_algebra("C", 7))
    assert r7.omega == 2 and {P.p for P in r7.finite_ramified} == {3}
    assert ramification(standard_algebra("C", 5)).omega == 0
    assert ramification(_alg(1, 5, 7)).omega == 0


def test_isomorphism_examples():
    assert is_isomorphic(standard_algebra("A", 6), standard_algebra("B", 6))
    assert is_isomorphic(standard_algebra("A", 6), standard_algebra("C", 6))
    assert is_isomorphic(standard_algebra("A", 7), standard_algebra("D", 7))
    assert not is_isomorphic(standard_algebra("A", 17), _alg(1, 1, 17))


@pytest.mark.parametrize("d", [73, 97, 193])
def test_unramified_algebra_always_exists(d):
    H = standard_algebra("Hinf", d)
    assert H.is_totally_definite()
    assert ramification(H).omega == 0


def test_tags_needing_positive_unit():
    with pytest.raises(AlgebraError):
        standard_algebra("B", 5)
    with pytest.raises(AlgebraError):
        standard_algebra("Z", 7)


def test_parse_algebra():
    alg = parse_algebra("-1,-8:-3", 7)
    assert alg.b == -fundamental_unit(7).eps
    with pytest.raises(AlgebraError):
        parse_algebra("1,2,3", 7)
    with pytest.raises(AlgebraError):
        parse_algebra("0,1", 7)
