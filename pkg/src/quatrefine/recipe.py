"""Refined class numbers h(H, G) and type numbers t(H, G) for a totally
definite quaternion algebra H over F = Q(sqrt d), d >= 6 square-free.

Noncyclic groups: t(G) from the congruence tables, with representatives
and normalizer indices recovered from the maximal overorders of the
minimal G-orders (a disagreement with the tables is a hard failure).
Cyclic groups C_n (n > 1): from the optimal-embedding trace formula.
C_1: from the mass formula.  Eichler's class number formula is checked
independently.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .cmorders import CMOrderDescriptor, enumerate_B
from .orders import (
    CYCLIC, GROUP_TAGS, NONCYCLIC, GroupTag, OrderError, QuatOrder, maximal_overorders,
    minimal_G_order, minimal_normalizer, optimal_embedding_count, orbits, reduced_units,
)
from .quadclass import class_number_real, zeta_minus_one
from .quadfield import (
    FieldError, FundUnitData, artin_symbol, check_d, fundamental_unit, residue_conditions,
)
from .quatalg import AlgebraError, QuatAlgebra, is_isomorphic, ramification, standard_algebra


class ConsistencyError(AssertionError):
    """An internal identity failed; never rounded away."""


# ------------------------------------------------------------- tables

# (aleph, beth) for the minimal D2-ddagger order, keyed by the family_B label
BETH_D2 = {
    "d≡1 mod 8, a≡1 mod 4": (1, 1),
    "d≡1 mod 8, a≡3 mod 4": (4, 2),
    "d≡5 mod 8": (2, 1),
    "d≡3 mod 4, a even": (2, 2),
    "otherwise": (4, 3),
}

# (aleph, beth) for the minimal D3-ddagger order, keyed by (family_D label, sign)
BETH_D3 = {
    ("3|d", 1): (1, 1),
    ("3|d", -1): (3, 2),
    ("d≡1 mod 3", 1): (1, 1),
    ("d≡1 mod 3", -1): (4, 2),
    ("d≡2 mod 3", 0): (2, 1),
}


def aleph_beth_D2(fu: FundUnitData) -> tuple[int, int]:
    return BETH_D2[residue_conditions(fu, "family_B")]


def aleph_beth_D3(fu: FundUnitData) -> tuple[int, int]:
    d = fu.d
    if d % 3 == 0:
        sign = 1 if residue_conditions(fu, "eps_mod_q") == "eps≡1 mod q" else -1
        return BETH_D3[("3|d", sign)]
    if d % 3 == 1:
        sign = 1 if residue_conditions(fu, "eps_mod_3") == "eps≡1 mod 3" else -1
        return BETH_D3[("d≡1 mod 3", sign)]
    return BETH_D3[("d≡2 mod 3", 0)]


def _iso_flags(fu: FundUnitData, alg: QuatAlgebra) -> dict[str, bool]:
    out = {}
    for tag in ("A", "B", "C", "D"):
        if tag in ("B", "D") and fu.norm_sign != 1:
            out[tag] = False
            continue
        out[tag] = is_isomorphic(alg, standard_algebra(tag, fu))
    return out


def t_table(fu: FundUnitData, alg: QuatAlgebra) -> dict[str, int]:
    """Type numbers of the noncyclic groups read off the congruence tables."""
    d = fu.d
    iso = _iso_flags(fu, alg)
    two, three = fu.two_eps_square, fu.three_eps_square
    split2 = artin_symbol(2, d)
    t = {G.label: 0 for G in NONCYCLIC}
    if iso["A"]:
        t["S4"] = t["D4"] = int(two)
        t["A4"] = int(not two)
        t["D2†"] = int(split2 == 0 and not two)
    if iso["C"]:
        t["D6"] = int(three)
        t["D3†"] = int(not three)
    if iso["B"] and d != 6:
        t["D2‡"] = aleph_beth_D2(fu)[1] - t["D4"] - t["S4"] - t["D6"]
    if iso["D"]:
        t["D3‡"] = aleph_beth_D3(fu)[1] - t["S4"] - t["D6"]
    if any(v < 0 for v in t.values()):
        raise ConsistencyError(f"negative type number from the tables at d={d}: {t}")
    return t


# ---------------------------------------------------- representatives

@dataclass
class TpNaturalRep:
    group_tag: GroupTag
    order: QuatOrder
    normalizer_index: int
    case_id: str


@dataclass
class OrbitData:
    aleph: int
    beth: int
    reps: list[TpNaturalRep]


@lru_cache(maxsize=None)
def minimal_order_orbits(d: int, label: str) -> OrbitData:
    """Maximal overorders of the minimal G-order, grouped into normalizer orbits."""
    fu = fundamental_unit(d)
    G = GROUP_TAGS[label]
    O = minimal_G_order(G, fu)
    gens, nbar = minimal_normalizer(G, O.alg)
    maxes = maximal_overorders(O)
    orbs = orbits(maxes, gens)
    reps = []
    for k, orb in enumerate(orbs):
        R = orb[0]
        tag = reduced_units(R, fu).tag
        if tag != G:
            continue
        if nbar % len(orb):
            raise ConsistencyError(f"orbit of size {len(orb)} in a normalizer quotient of order {nbar}")
        R.name = f"{label}-overorder-{k}"
        reps.append(TpNaturalRep(G, R, nbar // len(orb), R.name))
    return OrbitData(len(maxes), len(orbs), reps)


def t_noncyclic(fu: FundUnitData, alg: QuatAlgebra) -> tuple[dict[str, int], list[TpNaturalRep]]:
    d = fu.d
    if d < 6:
        raise FieldError("the general recipe covers d >= 6")
    t = t_table(fu, alg)
    reps: list[TpNaturalRep] = []
    for label, n in t.items():
        if n == 0:
            continue
        data = minimal_order_orbits(d, label)
        if len(data.reps) != n:
            raise ConsistencyError(
                f"d={d}: table gives t({label})={n}, overorder orbits give {len(data.reps)}")
        reps.extend(data.reps)
    return t, reps


def h_noncyclic(t: dict[str, int], reps: list[TpNaturalRep], fu: FundUnitData,
                alg: QuatAlgebra) -> dict[str, int]:
    omega = ramification(alg).omega
    hF = class_number_real(fu.d)
    out = {label: 0 for label in t}
    for r in reps:
        val = Fraction(2 ** omega * hF, r.normalizer_index)
        if val.denominator != 1:
            raise ConsistencyError(f"non-integral h contribution for {r.group_tag}")
        out[r.group_tag.label] += int(val)
    return out


# ----------------------------------------------------- cyclic groups

def local_factor(B: CMOrderDescriptor, alg: QuatAlgebra) -> int:
    out = 1
    for P in ramification(alg).finite_ramified:
        out *= 1 - B.eichler_symbol(P)
    return out


def h_cyclic_by_order(fu: FundUnitData, alg: QuatAlgebra, Bs, reps: list[TpNaturalRep]
                      ) -> dict[str, list[tuple[CMOrderDescriptor, int]]]:
    omega = ramification(alg).omega
    hF = class_number_real(fu.d)
    out: dict[str, list] = {}
    for B in Bs:
        corr = Fraction(0)
        for r in reps:
            m = optimal_embedding_count(B, r.order, fu)
            corr += Fraction(m, r.normalizer_index)
        twice = B.h_B * local_factor(B, alg) - 2 ** omega * hF * corr
        if twice < 0 or twice.denominator != 1 or twice % 2:
            raise ConsistencyError(
                f"d={fu.d}: h(C_{B.w}, {B.label()}) = {twice}/2 is not a nonnegative integer")
        out.setdefault(f"C{B.w}", []).append((B, int(twice) // 2))
    return out


def h_cyclic(fu: FundUnitData, alg: QuatAlgebra, Bs, reps: list[TpNaturalRep]) -> dict[str, int]:
    per = h_cyclic_by_order(fu, alg, Bs, reps)
    out = {G.label: 0 for G in CYCLIC if G.order > 1}
    for label, rows in per.items():
        out[label] = sum(h for _, h in rows)
    return out


# ------------------------------------------------- mass and Eichler

def mass(fu: FundUnitData, alg: QuatAlgebra) -> Fraction:
    val = Fraction(class_number_real(fu.d)) * zeta_minus_one(fu.d) / 2
    for P in ramification(alg).finite_ramified:
        val *= P.norm - 1
    return val


def mass_and_h1(fu: FundUnitData, alg: QuatAlgebra, h_partial: dict[str, int]) -> tuple[Fraction, int]:
    M = mass(fu, alg)
    rest = sum((Fraction(h, GROUP_TAGS[g].order) for g, h in h_partial.items() if g != "C1"), Fraction(0))
    h1 = M - rest
    if h1 < 0 or h1.denominator != 1:
        raise ConsistencyError(f"d={fu.d}: h(C1) = {h1} is not a nonnegative integer")
    return M, int(h1)


def eichler_h(fu: FundUnitData, alg: QuatAlgebra, Bs) -> int:
    val = mass(fu, alg)
    for B in Bs:
        val += B.h_B * (1 - Fraction(1, B.w)) * local_factor(B, alg) / 2
    if val.denominator != 1:
        raise ConsistencyError(f"d={fu.d}: Eichler's formula gives {val}")
    return int(val)


# ----------------------------------------------------------- output

GROUP_ORDER = ("C1", "C2", "C3", "C4", "C6", "D2†", "D2‡", "D3†", "D3‡", "D4", "D6", "A4", "S4",
               "D12", "A5")


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def _parse_frac(s: str) -> Fraction:
    return Fraction(s)


@dataclass
class RefinedCounts:
    d: int
    algebra: dict
    per_group: dict[str, tuple[int | None, int]]
    mass: Fraction
    h_total: int
    t_total: int | None
    omega: int
    checks: dict[str, Fraction | None] = field(default_factory=dict)
    reps: list[TpNaturalRep] = field(default_factory=list, repr=False, compare=False)

    def t(self, label: str) -> int | None:
        return self.per_group.get(label, (0, 0))[0]

    def h(self, label: str) -> int:
        return self.per_group.get(label, (0, 0))[1]

    def residuals_ok(self) -> bool:
        return all(v is None or v == 0 for v in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "algebra": self.algebra,
            "counts": {g: {"t": t, "h": h} for g, (t, h) in self.per_group.items()},
            "mass": _frac_str(self.mass),
            "h_total": self.h_total,
            "t_total": self.t_total,
            "omega": self.omega,
            "checks": {k: None if v is None else _frac_str(v) for k, v in self.checks.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "RefinedCounts":
        return cls(
            d=data["d"],
            algebra=data["algebra"],
            per_group={g: (v["t"], v["h"]) for g, v in data["counts"].items()},
            mass=_parse_frac(data["mass"]),
            h_total=data["h_total"],
            t_total=data["t_total"],
            omega=data["omega"],
            checks={k: None if v is None else _parse_frac(v) for k, v in data["checks"].items()},
        )

    @classmethod
    def from_json(cls, s: str) -> "RefinedCounts":
        return cls.from_dict(json.loads(s))


def resolve_algebra(d: int, alg: QuatAlgebra | str) -> QuatAlgebra:
    if isinstance(alg, str):
        alg = standard_algebra(alg, d)
    if alg.d != d:
        raise AlgebraError("algebra is defined over a different field")
    if not alg.is_totally_definite():
        raise AlgebraError(f"{alg.label()} is not totally definite")
    return alg


def algebra_record(alg: QuatAlgebra) -> dict:
    return {
        "a": str(alg.a), "b": str(alg.b), "tag": alg.tag,
        "ramified": sorted((str(P) for P in ramification(alg).finite_ramified)),
    }


def full_counts(d: int, alg: QuatAlgebra | str = "Hinf") -> RefinedCounts:
    check_d(d)
    if d < 6:
        if alg == "Hinf" or (not isinstance(alg, str) and ramification(alg).omega == 0
                             and alg.is_totally_definite()):
            from .primecase import counts_prime
            return counts_prime(d)
        raise FieldError("for d in {2, 3, 5} only the algebra unramified at all finite places is covered")
    fu = fundamental_unit(d)
    alg = resolve_algebra(d, alg)
    ram = ramification(alg)
    hF = class_number_real(d)
    t, reps = t_noncyclic(fu, alg)
    h_nc = h_noncyclic(t, reps, fu, alg)
    Bs = enumerate_B(d)
    h_c = h_cyclic(fu, alg, Bs, reps)
    h_all = dict(h_c)
    h_all.update(h_nc)
    M, h1 = mass_and_h1(fu, alg, h_all)
    h_all["C1"] = h1
    hH = eichler_h(fu, alg, Bs)
    h_total = sum(h_all.values())

    # Independent closure of the two identities: C1 from Eichler's formula
    h1_eichler = hH - (h_total - h1)
    mass_residual = sum((Fraction(h, GROUP_TAGS[g].order) for g, h in h_all.items() if g != "C1"),
                        Fraction(h1_eichler)) - M
    eichler_residual = Fraction(h_total - hH)

    exact_t = ram.omega == 0 and hF % 2 == 1
    per_group: dict[str, tuple[int | None, int]] = {}
    for g in GROUP_ORDER:
        if g not in h_all:
            continue
        if g in t:
            tg = t[g]
        elif exact_t:
            q = Fraction(h_all[g], hF)
            if q.denominator != 1:
                raise ConsistencyError(f"d={d}: h({g}) not divisible by h(F)")
            tg = int(q)
        else:
            tg = None
        per_group[g] = (tg, h_all[g])
    if exact_t:
        for g in t:
            if h_nc[g] != hF * t[g]:
                raise ConsistencyError(f"d={d}: h({g}) = {h_nc[g]} but h(F) t({g}) = {hF * t[g]}")
    t_vals = [v[0] for v in per_group.values()]
    t_total = None if any(v is None for v in t_vals) else sum(t_vals)
    checks: dict[str, Fraction | None] = {
        "mass_residual": mass_residual,
        "eichler_residual": eichler_residual,
        "d4_s4_residual": Fraction(t["D4"] - t["S4"]),
    }
    return RefinedCounts(d, algebra_record(alg), per_group, M, h_total, t_total, ram.omega, checks, reps)
