"""Superspecial abelian surfaces in the isogeny class of sqrt(p): how many
have each reduced automorphism group, and whether a real quadratic
endomorphism algebra occurs."""
from sympy import primerange

from quatrefine.ssab import census, exists_real_quadratic_endalgebra

for p in primerange(2, 120):
    c = census(p)
    flag = "yes" if exists_real_quadratic_endalgebra(p) else "no "
    print(f"p={p:3d}  total={c.h_pi:3d}  End^0=Q(sqrt p) possible: {flag}  {c.per_group}")
