"""Superspecial abelian surfaces over F_p in the isogeny class of the Weil
number sqrt(p), counted by reduced automorphism group."""
from __future__ import annotations

from dataclasses import dataclass

from sympy import isprime

from .primecase import counts_prime
from .quadfield import FieldError

NON_ABELIAN = frozenset({"D3", "D3†", "D3‡", "D4", "D5", "D6", "D12", "A4", "S4", "A5"})


@dataclass(frozen=True)
class Census:
    p: int
    per_group: dict[str, int]
    h_pi: int
    t_pi: int

    def to_dict(self) -> dict:
        return {"p": self.p, "counts": dict(self.per_group), "h_pi": self.h_pi, "t_pi": self.t_pi}


def census(p: int) -> Census:
    if not isprime(p):
        raise FieldError(f"{p} is not prime")
    rc = counts_prime(p)
    counts = {g: h for g, (t, h) in rc.per_group.items() if h}
    return Census(p, counts, rc.h_total, rc.t_total)


def exists_real_quadratic_endalgebra(p: int) -> bool:
    """Whether some X over a finite field has End^0 equal to Q(sqrt p); p != 1 mod 24."""
    if not isprime(p):
        raise FieldError(f"{p} is not prime")
    return p % 24 != 1


def has_nonabelian_type(p: int) -> bool:
    rc = counts_prime(p)
    return any(t for g, (t, _) in rc.per_group.items() if g in NON_ABELIAN)
