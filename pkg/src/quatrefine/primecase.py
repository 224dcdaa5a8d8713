"""Type numbers of the definite algebra H unramified at all finite places
over F = Q(sqrt p), p prime, in closed form."""
from __future__ import annotations

from fractions import Fraction

from sympy import isprime

from .orders import GROUP_TAGS
from .quadclass import class_number_real, h_imag, zeta_minus_one
from .quadfield import FieldError, kronecker
from .recipe import (
    ConsistencyError, GROUP_ORDER, RefinedCounts, algebra_record, eichler_h, full_counts,
)
from .quatalg import standard_algebra

SMALL_PRIMES = {
    2: {"S4": 1},
    3: {"S4": 1, "D12": 1},
    5: {"A5": 1},
}


def legendre(a: int, p: int) -> int:
    return kronecker(a, p)


def _int(q: Fraction, what: str, p: int) -> int:
    if q.denominator != 1 or q < 0:
        raise ConsistencyError(f"p={p}: {what} = {q} is not a nonnegative integer")
    return int(q)


def type_numbers_prime(p: int) -> dict[str, int]:
    if not isprime(p):
        raise FieldError(f"{p} is not prime")
    if p in SMALL_PRIMES:
        return dict(SMALL_PRIMES[p])
    z = zeta_minus_one(p)
    two = legendre(2, p)
    hp = h_imag(p)
    h3p = h_imag(3 * p)
    if p % 4 == 1:
        three = legendre(p, 3)
        t = {
            "C1": z / 2 - Fraction(hp, 8) - Fraction(h3p, 12) - Fraction(three, 4) - Fraction(two, 4)
                  + Fraction(1, 2),
            "C2": Fraction(hp, 4) + Fraction(three, 2) + Fraction(two, 4) - Fraction(3, 4),
            "C3": Fraction(h3p, 4) + Fraction(three, 4) + Fraction(two, 2) - Fraction(3, 4),
            "D3†": Fraction(1 - three, 2),
            "A4": Fraction(1 - two, 2),
        }
    else:
        h2p = h_imag(2 * p)
        t = {
            "C1": z / 2 + (-7 + 3 * two) * Fraction(hp, 8) - Fraction(h2p, 4) - Fraction(h3p, 12)
                  + Fraction(3, 2),
            "C2": (2 - two) * Fraction(hp, 2) + Fraction(h2p, 2) - Fraction(5, 2),
            "C3": Fraction(h3p, 4) - 1,
            "C4": (3 - two) * Fraction(hp, 2) - 1,
            d3_label(p): Fraction(1),
            "D4": Fraction(1),
            "S4": Fraction(1),
        }
    return {g: _int(v, f"t({g})", p) for g, v in t.items()}


def d3_label(p: int) -> str:
    """The kind of D3 occurring for p = 3 mod 4."""
    return "D3†" if p % 12 == 11 else "D3‡"


def choose_D3_representative(p: int) -> str:
    """Catalogue id of the maximal order with reduced unit group D3, p = 3 mod 4, p > 5."""
    if not isprime(p) or p % 4 != 3 or p <= 5:
        raise FieldError("a D3 representative is tabulated for primes p = 3 mod 4, p > 5")
    if p % 12 == 11:
        return "D3dag-max"
    return "D-sixth" if p % 24 == 7 else "D-sixth-sqrt"


def counts_prime(p: int) -> RefinedCounts:
    t = type_numbers_prime(p)
    hF = class_number_real(p)
    z = zeta_minus_one(p)
    mass = hF * z / 2
    ordered = [g for g in GROUP_ORDER if g in t]
    per_group = {g: (t[g], hF * t[g]) for g in ordered}
    h_total = sum(h for _, h in per_group.values())
    mass_residual = sum((Fraction(h, GROUP_TAGS[g].order) for g, (_, h) in per_group.items()),
                        Fraction(0)) - mass
    if p >= 7:
        from .cmorders import enumerate_B
        alg = standard_algebra("Hinf", p)
        eich = Fraction(h_total - eichler_h(_fu(p), alg, enumerate_B(p)))
        alg_rec = algebra_record(alg)
    else:
        eich = None
        alg_rec = algebra_record(standard_algebra("Hinf", p))
    checks = {"mass_residual": mass_residual, "eichler_residual": eich}
    return RefinedCounts(p, alg_rec, per_group, mass, h_total, sum(t.values()), 0, checks)


def _fu(p: int):
    from .quadfield import fundamental_unit
    return fundamental_unit(p)


def crosscheck_prime(p: int) -> dict[str, tuple]:
    """Groups where the closed forms and the general recipe disagree (empty when they agree)."""
    closed = counts_prime(p)
    if p < 7:
        general = closed
    else:
        general = full_counts(p, "Hinf")
    diff = {}
    for g in set(closed.per_group) | set(general.per_group):
        a = closed.per_group.get(g, (0, 0))
        b = general.per_group.get(g, (0, 0))
        if a != b:
            diff[g] = (a, b)
    return diff
