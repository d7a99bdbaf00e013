import numpy as np
import pytest
from hypothesis import given, strategies as st

from arquiver import build_tree
from arquiver.automorphism import (ZVertex, enumerate_weakly_admissible, identity,
                                   phi, rho, serre_nu, suspension, tau_power)
from arquiver.classify import maximal_cy_generator
from arquiver.dynkin import ade_trees, coxeter_number
from arquiver.errors import (IdentityInput, InvalidVertex, NotWeaklyAdmissible,
                             WindowTooLarge)
from arquiver.mesh import (cartan_identity, hom_knit, hom_oracle, l_function,
                           mesh_additivity_defects, orbit_hom, support_window,
                           total_hom)

A2, A3, D4 = build_tree("A", 2), build_tree("A", 3), build_tree("D", 4)

# knitted by hand, slice by slice
HAND = {
    ("A2", 1): {(0, 1): 1, (0, 2): 1},
    ("A2", 2): {(0, 2): 1, (1, 1): 1},
    ("A3", 2): {(0, 2): 1, (0, 3): 1, (1, 1): 1, (1, 2): 1},
    ("D4", 1): {(0, 1): 1, (0, 2): 1, (1, 2): 1, (1, 3): 1, (1, 4): 1, (2, 1): 1},
}


@pytest.mark.parametrize("key", sorted(HAND))
def test_hand_knitted_values(key):
    name, q = key
    tree = build_tree(name[0], int(name[1:]))
    assert hom_knit(tree, (0, q)).values == {ZVertex(*k): v for k, v in HAND[key].items()}


@pytest.mark.parametrize("key", sorted(HAND))
def test_hand_values_against_path_oracle(key):
    name, q = key
    tree = build_tree(name[0], int(name[1:]))
    x = ZVertex(0, q)
    for y in support_window(tree, x)[: 4 * tree.rank]:
        assert hom_oracle(tree, x, y, method="paths") == HAND[key].get(tuple(y), 0)


def test_oracle_examples():
    assert hom_oracle(A2, (0, 1), (0, 2)) == 1
    assert hom_oracle(A2, (0, 1), (1, 1)) == 0
    assert hom_oracle(A3, (3, 2), (3, 2)) == 1
    assert hom_oracle(A3, (3, 2), (1, 2)) == 0


@pytest.mark.parametrize("tree", [build_tree(*t) for t in
                                  [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("D", 4)]], ids=str)
def test_knit_matches_quotient_oracle(tree):
    for q in tree.vertices:
        x = ZVertex(0, q)
        d = hom_knit(tree, x)
        for y in support_window(tree, x):
            assert d(y) == hom_oracle(tree, x, y), (x, y)


@pytest.mark.parametrize("tree", [build_tree("A", n) for n in (1, 2, 3)], ids=str)
def test_knit_matches_path_oracle(tree):
    for q in tree.vertices:
        x = ZVertex(0, q)
        d = hom_knit(tree, x)
        for y in support_window(tree, x):
            assert d(y) == hom_oracle(tree, x, y, method="paths"), (x, y)


def test_path_oracle_budget():
    with pytest.raises(WindowTooLarge):
        hom_oracle(D4, (0, 2), (4, 2), method="paths", budget=10)


def test_unknown_oracle_method():
    with pytest.raises(ValueError):
        hom_oracle(A2, (0, 1), (0, 2), method="magic")


def test_invalid_vertex():
    with pytest.raises(InvalidVertex):
        hom_knit(A2, (0, 3))


@pytest.mark.parametrize("tree", ade_trees(8), ids=str)
def test_knit_structure(tree):
    h = coxeter_number(tree)
    s = suspension(tree)
    nu = serre_nu(tree)
    for q in tree.vertices:
        x = ZVertex(0, q)
        d = hom_knit(tree, x)
        assert d(x) == 1
        assert d(s(x)) == 0
        assert all(x.p <= v.p <= x.p + h for v in d.values)
        # Serre duality: Hom(x, y) = Hom(y, nu x)
        for y in d.values:
            assert d(y) == hom_knit(tree, y)(nu(x))


@given(st.sampled_from(ade_trees(6)), st.integers(-50, 50), st.data())
def test_knit_is_translation_invariant(tree, p, data):
    q = data.draw(st.sampled_from(tree.vertices))
    a = hom_knit(tree, (p, q))
    b = hom_knit(tree, (0, q))
    assert a.shifted(-p).values == b.values


def test_tsv_and_dot():
    d = hom_knit(A2, (0, 1))
    assert d.to_tsv() == "p\tq\tdim\n0\t1\t1\n0\t2\t1\n"
    assert d.to_dot(A2).startswith("digraph")


def test_orbit_hom_examples():
    g = maximal_cy_generator(A2, 2)
    for x in [(0, 1), (0, 2), (3, 1)]:
        assert orbit_hom(A2, g, x, x) == 1
    assert orbit_hom(A3, tau_power(A3, 1), (0, 1), (0, 1)) == 1


def test_orbit_hom_rejects_bad_groups():
    with pytest.raises(IdentityInput):
        orbit_hom(A2, identity(A2), (0, 1), (0, 1))
    d5 = build_tree("D", 5)
    with pytest.raises(NotWeaklyAdmissible):
        orbit_hom(d5, phi(d5), (0, 1), (0, 1))


def test_total_hom_loop():
    verts, mat = total_hom(A2, rho(A2))
    assert len(verts) == 1 and mat.tolist() == [[2]]


def test_cluster_category_a2():
    g = maximal_cy_generator(A2, 2)
    ell = l_function(A2, g)
    assert set(ell.values()) == {2}
    verts, mat = total_hom(A2, g)
    assert np.trace(mat) == 5
    assert mat.sum() == 10


CASES = [(t, g) for t in ade_trees(5) for g in enumerate_weakly_admissible(t, 3)]


@pytest.mark.parametrize("tree,g", CASES, ids=lambda v: str(v) if not hasattr(v, "label") else v.label)
def test_additivity_and_cartan_identity(tree, g):
    ell = l_function(tree, g)
    assert mesh_additivity_defects(tree, g, ell) == []
    assert set(cartan_identity(tree, g, ell).values()) == {2}
