import json

import pytest

from arquiver import build_tree
from arquiver.automorphism import (ZVertex, conjugacy_equal, enumerate_weakly_admissible,
                                   identity, parse_generator, phi, rho, tau_power)
from arquiver.classify import maximal_cy_generator
from arquiver.dynkin import ade_trees
from arquiver.errors import (IdentityInput, NotDynkinType, NotWeaklyAdmissible,
                             ParseError, TreeMismatch)
from arquiver.zquiver import (OrbitQuiver, identify_type, neighbors, orbit_count,
                              orbit_quotient, subadditive_function,
                              validate_translation_quiver)

A1, A2, A3, D4 = (build_tree(*t) for t in [("A", 1), ("A", 2), ("A", 3), ("D", 4)])


def test_neighbors():
    assert neighbors(A2, (0, 1)) == ([(0, 2)], [(-1, 2)])
    assert neighbors(A1, (7, 1)) == ([], [])
    succ, _ = neighbors(D4, (0, 2))
    assert succ == [(1, 1), (1, 3), (1, 4)]


def test_loop_quotient():
    q = orbit_quotient(A2, rho(A2))
    assert len(q.vertices) == 1
    assert q.has_loops
    assert validate_translation_quiver(q) == []


def test_cluster_category_a2_has_five_vertices():
    assert len(orbit_quotient(A2, maximal_cy_generator(A2, 2)).vertices) == 5


def test_identity_rejected():
    with pytest.raises(IdentityInput):
        orbit_quotient(A3, identity(A3))


def test_not_weakly_admissible():
    d5 = build_tree("D", 5)
    with pytest.raises(NotWeaklyAdmissible):
        orbit_quotient(d5, phi(d5))


def test_tree_mismatch():
    with pytest.raises(TreeMismatch):
        orbit_quotient(A2, tau_power(A3, 1))


@pytest.mark.parametrize("tree", ade_trees(5), ids=str)
@pytest.mark.parametrize("r", [1, 2, 3])
def test_tau_power_vertex_count(tree, r):
    g = tau_power(tree, r)
    q = orbit_quotient(tree, g)
    assert len(q.vertices) == orbit_count(g) == r * tree.rank
    assert validate_translation_quiver(q) == []


def test_validation_reports():
    # x -> y without tau y -> x
    bad = validate_translation_quiver(["x", "y"], [("x", "y")], [("x", "x"), ("y", "y")])
    assert "translation law at y" in bad
    assert validate_translation_quiver(["v"], [("v", "v")], [("v", "v")]) == []
    assert validate_translation_quiver(["v"], [], [("v", "w")]) == [
        "tau is not a bijection of the vertex set"]


def test_subadditive_function_on_loop():
    q = OrbitQuiver.from_raw(["v"], [("v", "v")], [("v", "v")])
    assert subadditive_function(q) == {"v": 2}


def test_loop_identifies_as_a2_rho():
    q = OrbitQuiver.from_raw(["v"], [("v", "v")], [("v", "v")])
    tree, g = identify_type(q)
    assert tree == A2 and conjugacy_equal(g, rho(A2))


def test_three_cycle_with_wrong_rotation_is_not_dynkin():
    q = OrbitQuiver.from_raw([0, 1, 2], [(0, 1), (1, 2), (2, 0)],
                             [(0, 2), (1, 0), (2, 1)])
    assert "translation law at 0" in validate_translation_quiver(q)
    with pytest.raises(NotDynkinType):
        identify_type(q)


def test_three_cycle_with_mesh_rotation_is_a2_rho3():
    # ZA_2 is a zigzag line and rho moves it one step
    q = OrbitQuiver.from_raw([0, 1, 2], [(0, 1), (1, 2), (2, 0)],
                             [(0, 1), (1, 2), (2, 0)])
    assert validate_translation_quiver(q) == []
    tree, g = identify_type(q)
    assert tree == A2 and conjugacy_equal(g, parse_generator(A2, "rho^3"))


def test_disconnected_is_not_dynkin():
    q = OrbitQuiver.from_raw([0, 1], [], [(0, 0), (1, 1)])
    with pytest.raises(NotDynkinType):
        identify_type(q)


def test_round_trip_d4_tau2():
    g = tau_power(D4, 2)
    tree, h = identify_type(orbit_quotient(D4, g))
    assert tree == D4 and conjugacy_equal(g, h)


def test_round_trip_through_json():
    g = parse_generator(A3, "phi*tau^2")
    q = orbit_quotient(A3, g)
    q2 = OrbitQuiver.from_json(q.to_json())
    tree, h = identify_type(q2)
    assert tree == A3 and conjugacy_equal(g, h)


@pytest.mark.parametrize("text", ["", "{", '{"vertices": []}', "[1, 2]"])
def test_bad_json(text):
    with pytest.raises(ParseError):
        OrbitQuiver.from_json(text)


def test_dot_output():
    dot = orbit_quotient(A2, rho(A2)).to_dot()
    assert dot.startswith("digraph")
    assert "v0 -> v0;" in dot


def test_quotient_json_is_deterministic():
    g = enumerate_weakly_admissible(D4, 2)[-1]
    assert orbit_quotient(D4, g).to_json() == orbit_quotient(D4, g).to_json()
    assert json.loads(orbit_quotient(D4, g).to_json())["vertices"]
