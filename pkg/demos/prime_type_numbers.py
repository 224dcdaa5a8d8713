"""Type numbers over Q(sqrt p) from the closed forms, compared with the
general recipe that enumerates maximal orders and CM embeddings."""
from sympy import primerange

from quatrefine.primecase import counts_prime, crosscheck_prime

for p in primerange(2, 60):
    rc = counts_prime(p)
    groups = ", ".join(f"{g}:{t}" for g, (t, _) in rc.per_group.items() if t)
    agree = "same" if crosscheck_prime(p) == {} else "DIFFERENT"
    print(f"p={p:3d}  t(H)={rc.t_total:3d}  h(H)={rc.h_total:3d}  [{groups}]  recipe: {agree}")
