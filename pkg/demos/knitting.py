"""
Knitting Hom functions on ZDelta
================================

Compute dim Hom(x, -) in the mesh category of ZD_4 and check it against
an independent computation with actual morphisms.
"""

from arquiver import build_tree
from arquiver.automorphism import ZVertex, suspension
from arquiver.mesh import hom_knit, hom_oracle, support_window

d4 = build_tree("D", 4)
x = ZVertex(0, 2)

# the knitted function, slice by slice
d = hom_knit(d4, x)
print(d.to_tsv())

# every value inside the window agrees with the cokernel computation
mismatches = [y for y in support_window(d4, x) if d(y) != hom_oracle(d4, x, y)]
print("mismatches:", mismatches)

# the support stops right before Sx
print("Sx =", suspension(d4)(x), "dim Hom(x, Sx) =", d(suspension(d4)(x)))

# a picture: render with `dot -Tpng`
with open("hom_d4.dot", "w") as fh:
    fh.write(d.to_dot(d4))
