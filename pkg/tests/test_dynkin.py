import json

import numpy as np
import pytest

from arquiver import build_tree, coxeter_number, positive_root_count
from arquiver.automorphism import compose, suspension
from arquiver.dynkin import ade_trees, cartan_matrix
from arquiver.errors import RankOutOfRange, UnsupportedFamily
from oracles import positive_roots


def test_a3_is_a_path():
    t = build_tree("A", 3)
    assert t.vertices == (1, 2, 3)
    assert t.arrows == ((1, 2), (2, 3))


def test_d4_arrows_point_into_branch_vertex():
    assert build_tree("D", 4).arrows == ((1, 2), (3, 2), (4, 2))


@pytest.mark.parametrize("fam,n", [("E", 9), ("E", 5), ("D", 3), ("A", 0), ("A", 65), ("L", 0)])
def test_rank_out_of_range(fam, n):
    with pytest.raises(RankOutOfRange):
        build_tree(fam, n)


def test_unknown_family():
    with pytest.raises(UnsupportedFamily):
        build_tree("B", 3)


def test_build_tree_is_pure():
    assert build_tree("E", 7) == build_tree("E", 7)
    assert build_tree("E", 7).to_json() == build_tree("E", 7).to_json()


@pytest.mark.parametrize("tree", ade_trees(8), ids=str)
def test_root_count_matches_reflection_closure(tree):
    assert positive_root_count(tree) == len(positive_roots(tree.family, tree.rank))


@pytest.mark.parametrize("tree", ade_trees(8), ids=str)
def test_coxeter_number_from_suspension_square(tree):
    # S^2 is a pure translation; its shift is -h
    s2 = compose(suspension(tree), suspension(tree))
    assert s2.perm == tree.vertices
    assert set(s2.shift) == {coxeter_number(tree)}


@pytest.mark.parametrize("name,h,roots", [("A3", 4, 6), ("D4", 6, 12), ("E6", 12, 36),
                                          ("E7", 18, 63), ("E8", 30, 120)])
def test_known_values(name, h, roots):
    t = build_tree(name[0], int(name[1:]))
    assert coxeter_number(t) == h
    assert positive_root_count(t) == roots


@pytest.mark.parametrize("tree", ade_trees(8), ids=str)
def test_cartan_matrix_positive_definite(tree):
    c = cartan_matrix(tree)
    assert np.array_equal(c, c.T)
    assert np.all(np.linalg.eigvalsh(c) > 0)


def test_roots_relate_to_coxeter_number():
    for t in ade_trees(8):
        assert 2 * positive_root_count(t) == t.rank * coxeter_number(t)


def test_json_and_dot():
    t = build_tree("D", 5)
    d = json.loads(t.to_json())
    assert d["family"] == "D" and d["rank"] == 5
    dot = t.to_dot()
    assert dot.startswith("digraph") and dot.count("->") == 4


def test_loop_tree():
    t = build_tree("L", 2)
    assert t.family == "L" and len(t.vertices) == 2
