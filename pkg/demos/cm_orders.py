"""CM orders B with nontrivial unit index and their class numbers."""
from quatrefine.cmorders import closed_form_h, enumerate_B
from quatrefine.quadfield import fundamental_unit

for d in (6, 7, 21, 30, 33):
    fu = fundamental_unit(d)
    print(f"d={d}")
    for B in enumerate_B(d):
        cf = closed_form_h(B, fu)
        print(f"  {B.label():22} w={B.w}  Q={B.hasse_Q}  h(B)={B.h_B}  table={cf}")
