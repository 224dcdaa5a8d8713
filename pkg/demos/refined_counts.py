"""Refined class numbers h(G) for each standard presentation over one field.

Usage: python3 demos/refined_counts.py [d]
"""
import sys

from quatrefine.quadfield import fundamental_unit
from quatrefine.quatalg import ramification, standard_algebra
from quatrefine.recipe import full_counts

d = int(sys.argv[1]) if len(sys.argv) > 1 else 15
fu = fundamental_unit(d)
print(f"F = Q(sqrt {d}), eps = {fu.eps}, Nm eps = {fu.norm_sign}")
for tag in ("A", "B", "C", "D"):
    if tag in "BD" and fu.norm_sign != 1:
        continue
    alg = standard_algebra(tag, fu)
    ram = sorted(str(P) for P in ramification(alg).finite_ramified) or ["none"]
    rc = full_counts(d, alg)
    nz = {g: h for g, (_, h) in rc.per_group.items() if h}
    print(f"{tag} {alg.label():>24}  ramified at {' '.join(ram):12} mass={rc.mass}  h={rc.h_total}  {nz}")
    print(f"   residuals: {rc.checks}")
