"""
Preprojective algebras and their deformations
=============================================

Dimensions, Nakayama permutations and centers of P(Delta) over small
prime fields, then a deformation at the exceptional vertex.
"""

from arquiver.ppa import build_algebra, invariant_report, parse_polynomial

for fam, ranks in [("A", range(1, 6)), ("D", range(4, 7)), ("E", (6, 7, 8)), ("L", range(1, 4))]:
    for n in ranks:
        r = invariant_report(fam, n, p=2)
        print(f"{fam}{n}: dim={r['dim']:5d} nu={r['nakayama']} center={r['center_dim']}")

# over GF(2) the deformation xy + yx of D_4 is already zero in R(D_4)
r = invariant_report("D", 4, parse_polynomial("1*x*y + 1*y*x"), 2)
print(r["f"], "->", r["f_reduced"])

# x*y is not; the invariants still match the undeformed algebra
r = invariant_report("D", 4, parse_polynomial("x*y"), 2)
print(r["relations"])
print("differs from P(D4) in:", r["differs_from_undeformed"])

# the basis of P(A_3)
print(build_algebra("A", 3).basis_tsv())
