"""Rebuild a few catalogued maximal orders and look at their unit groups
and at the maximal orders above a minimal order."""
from quatrefine.orders import (
    admissible_cases, explicit_maximal_order, maximal_overorders, minimal_G_order,
    minimal_normalizer, orbits, reduced_units,
)

d = 7
for cid in admissible_cases(d):
    O = explicit_maximal_order(cid, d)
    ug = reduced_units(O)
    print(f"{cid:14} in {O.alg.label():22} disc={O.disc}  units/O_F^x = {ug.tag.label} ({len(ug.reps)})")

# Maximal orders over the minimal D2-ddagger order, grouped by its normalizer.
small = minimal_G_order("D2‡", 33)
maxes = maximal_overorders(small)
gens, _ = minimal_normalizer("D2‡", small.alg)
orbs = orbits(maxes, gens)
print(f"d=33: {len(maxes)} maximal overorders in {len(orbs)} normalizer orbits")
for orb in orbs:
    print("  orbit of size", len(orb), "unit group", reduced_units(orb[0]).tag.label)
