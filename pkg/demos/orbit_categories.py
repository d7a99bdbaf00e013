"""
Orbit quivers, standardness and Calabi-Yau dimension
====================================================

Walk through the weakly admissible generators of a few trees, build the
orbit quivers ZDelta/<g> and classify each one.
"""

from arquiver import build_tree
from arquiver.automorphism import enumerate_weakly_admissible, rho
from arquiver.classify import classify_summary, maximal_cy_generator
from arquiver.mesh import l_function
from arquiver.zquiver import identify_type, orbit_quotient

for name in ["A3", "D4", "E6"]:
    tree = build_tree(name[0], int(name[1:]))
    print(f"--- {name}")
    for g in enumerate_weakly_admissible(tree, 3):
        s = classify_summary(tree, g)
        print(f"{g.label:14s} vertices={s['vertex_count']:3d} table={s['table_case']!s:10s} "
              f"hom={s['by_hom_condition']!s:5s} cy={s['cy_dimension']}")

# the cluster category of A_2 is 2-CY with five indecomposables
a2 = build_tree("A", 2)
g = maximal_cy_generator(a2, 2)
print(len(orbit_quotient(a2, g).vertices), "vertices;", "l =", sorted(l_function(a2, g).values()))

# the quiver with one vertex and a loop comes from A_2 and rho
q = orbit_quotient(a2, rho(a2))
print(q.to_dot())
print(identify_type(q))
