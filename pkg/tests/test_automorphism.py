import pytest
from hypothesis import given, strategies as st

from arquiver import build_tree, coxeter_number
from arquiver.automorphism import (
    ZVertex, check_vertex, compose, conjugacy_equal, enumerate_weakly_admissible, equals,
    identity, inverse, is_admissible, is_weakly_admissible, orientation_preserving_tree_automorphisms,
    parse_generator, parse_vertex, phi, power, predecessors, rho, serre_nu,
    successors, suspension, tau_power, translation)
from arquiver.dynkin import ade_trees
from arquiver.errors import (IdentityInput, InvalidVertex, ParseError, TreeMismatch,
                             UndefinedSymbolForFamily)

TREES = ade_trees(6)


@st.composite
def tree_and_elements(draw, k=3):
    """A tree and ``k`` random elements of the group generated by tau, S and
    the tree automorphisms."""
    tree = draw(st.sampled_from(TREES))
    gens = [translation(tree), suspension(tree)] + orientation_preserving_tree_automorphisms(tree)
    out = []
    for _ in range(k):
        g = identity(tree)
        for _ in range(draw(st.integers(0, 4))):
            g = compose(g, power(draw(st.sampled_from(gens)), draw(st.integers(-3, 3))))
        out.append(g)
    return tree, out


@given(tree_and_elements())
def test_composition_is_associative(data):
    _, (a, b, c) = data
    assert equals(compose(compose(a, b), c), compose(a, compose(b, c)))


@given(tree_and_elements(1), st.integers(-5, 5), st.integers(-5, 5))
def test_power_is_additive(data, j, k):
    _, (g,) = data
    assert equals(compose(power(g, j), power(g, k)), power(g, j + k))


@given(tree_and_elements(1))
def test_inverse(data):
    tree, (g,) = data
    assert compose(g, inverse(g)).is_identity
    assert compose(inverse(g), g).is_identity


@given(tree_and_elements(1), st.integers(-20, 20), st.data())
def test_tau_is_central(data, p, d):
    tree, (g,) = data
    v = ZVertex(p, d.draw(st.sampled_from(tree.vertices)))
    t = translation(tree)
    assert g(t(v)) == t(g(v))


@given(tree_and_elements(1), st.integers(-20, 20), st.data())
def test_automorphisms_preserve_arrows(data, p, d):
    tree, (g,) = data
    v = ZVertex(p, d.draw(st.sampled_from(tree.vertices)))
    assert sorted(g(w) for w in successors(tree, v)) == successors(tree, g(v))
    assert sorted(g(w) for w in predecessors(tree, v)) == predecessors(tree, g(v))


@pytest.mark.parametrize("tree", ade_trees(8), ids=str)
def test_suspension_identities(tree):
    s, t = suspension(tree), translation(tree)
    assert equals(compose(s, s), tau_power(tree, -coxeter_number(tree)))
    assert equals(serre_nu(tree), compose(t, s))
    assert equals(compose(t, s), compose(s, t))


def test_examples():
    a3 = build_tree("A", 3)
    assert translation(a3)(ZVertex(0, 1)) == (-1, 1)
    assert suspension(build_tree("A", 2))(ZVertex(0, 1)) == (1, 2)
    e7 = build_tree("E", 7)
    assert all(suspension(e7)(ZVertex(0, q)) == (9, q) for q in e7.vertices)
    assert suspension(build_tree("D", 5))(ZVertex(0, 5)) == (4, 4)
    a2 = build_tree("A", 2)
    assert equals(power(rho(a2), 2), tau_power(a2, -1))


def test_enumeration_examples():
    labels = lambda t, r: [g.label for g in enumerate_weakly_admissible(build_tree(*t), r)]
    assert labels(("A", 3), 2) == ["tau^1", "phi*tau^1", "tau^2", "phi*tau^2"]
    assert labels(("E", 8), 1) == ["tau^1"]
    assert labels(("A", 2), 3) == ["rho^1", "rho^2", "rho^3"]
    assert len(labels(("D", 4), 1)) == 6


def test_phi_on_a3_is_tau2_s():
    a3 = build_tree("A", 3)
    assert equals(phi(a3), compose(tau_power(a3, 2), suspension(a3)))


@pytest.mark.parametrize("tree", ade_trees(6), ids=str)
def test_enumerated_generators_are_weakly_admissible(tree):
    gens = enumerate_weakly_admissible(tree, 3)
    assert gens and all(is_weakly_admissible(g) for g in gens)


def test_admissible_stronger_than_weakly_admissible():
    for tree in ade_trees(6):
        for g in enumerate_weakly_admissible(tree, 3):
            if is_admissible(g):
                assert is_weakly_admissible(g)
    # rho on A2 folds a tau-orbit onto itself: weakly admissible only
    g = rho(build_tree("A", 2))
    assert is_weakly_admissible(g) and not is_admissible(g)


def test_identity_rejected():
    with pytest.raises(IdentityInput):
        is_weakly_admissible(identity(build_tree("A", 3)))


def test_conjugacy():
    d4 = build_tree("D", 4)
    a, b = [g for g in enumerate_weakly_admissible(d4, 1) if g.perm_order == 2][:2]
    assert conjugacy_equal(a, b)
    assert not conjugacy_equal(tau_power(d4, 1), a)
    # <g> = <g^-1>
    assert conjugacy_equal(tau_power(d4, 2), tau_power(d4, -2))


def test_parse_generator():
    a3 = build_tree("A", 3)
    assert equals(parse_generator(a3, "phi*tau^2"), compose(phi(a3), tau_power(a3, 2)))
    assert equals(parse_generator(a3, "tau ^ -2"), tau_power(a3, -2))
    assert parse_generator(a3, "id").is_identity
    d4 = build_tree("D", 4)
    assert parse_generator(d4, "phi(123)^3").is_identity
    for bad in ["", "tau^", "sigma", "tau^2**S", "tau(12)"]:
        with pytest.raises(ParseError):
            parse_generator(a3, bad)
    with pytest.raises(UndefinedSymbolForFamily):
        parse_generator(d4, "rho")


def test_parse_vertex():
    assert parse_vertex(" 3, -2") == ZVertex(3, -2)
    for bad in ["3", "a,b", "1,2,3"]:
        with pytest.raises(ParseError):
            parse_vertex(bad)


def test_vertex_checks():
    with pytest.raises(InvalidVertex):
        check_vertex(build_tree("A", 2), (0, 5))


def test_tree_mismatch():
    with pytest.raises(TreeMismatch):
        compose(translation(build_tree("A", 2)), translation(build_tree("A", 3)))
