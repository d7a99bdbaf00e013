import pytest

from arquiver import build_tree
from arquiver.automorphism import (compose, enumerate_weakly_admissible, equals,
                                   is_weakly_admissible, parse_generator, phi,
                                   suspension, tau_power)
from arquiver.classify import (classify_summary, cy_dimension, group_exponent,
                               maximal_cy_generator, recognize_generator,
                               standard_by_hom_condition, standard_by_table,
                               standardness, table_case, vertex_count_criterion)
from arquiver.dynkin import ade_trees
from arquiver.errors import DOutOfRange, NotWeaklyAdmissible, TreeMismatch


def tg(name, gen):
    t = build_tree(name[0], int(name[1:]))
    return t, parse_generator(t, gen)


def test_table_examples():
    assert standard_by_table(*tg("A4", "rho^3"))
    assert standard_by_table(*tg("E8", "tau^14"))
    assert standard_by_table(*tg("A5", "tau^2"))
    assert table_case(*tg("A5", "tau^1")) == "cylindric"
    assert not standard_by_table(*tg("E8", "tau^13"))
    assert not standard_by_table(*tg("D5", "phi*tau^2"))


def test_hom_condition_examples():
    assert standard_by_hom_condition(*tg("E7", "tau^8"))[0]
    ok, details = standard_by_hom_condition(*tg("E7", "tau^7"))
    assert not ok and any(not a["ok"] for a in details)
    assert standard_by_hom_condition(*tg("A3", "tau"))[0]


def test_vertex_count_examples():
    assert vertex_count_criterion(*tg("A3", "tau^4"))
    assert not vertex_count_criterion(*tg("A3", "tau"))
    assert not vertex_count_criterion(*tg("A1", "tau"))


# truth value of the Hom condition one step below each threshold
BELOW_THRESHOLD = {("A4", "rho^2"): False, ("D5", "tau^2"): False, ("D4", "tau^1"): False,
                   ("E6", "tau^4"): False, ("E7", "tau^7"): False, ("E8", "tau^13"): False}


@pytest.mark.parametrize("key", sorted(BELOW_THRESHOLD))
def test_below_threshold_snapshot(key):
    assert standard_by_hom_condition(*tg(*key))[0] is BELOW_THRESHOLD[key]


def test_threshold_cases_satisfy_hom_condition():
    for tree in ade_trees(8):
        for g in enumerate_weakly_admissible(tree, 3 if tree.rank > 5 else 6):
            if table_case(tree, g) == "threshold" and (tree.name, g.label) != ("A2", "rho^1"):
                assert standard_by_hom_condition(tree, g)[0], g


def test_a2_rho_fails_hom_condition():
    # rho maps (0,1) onto its successor (0,2), so Hom(x, rho^-1 y) = Hom(x, x) = k
    t, g = tg("A2", "rho")
    assert table_case(t, g) == "threshold"
    assert not standard_by_hom_condition(t, g)[0]


def test_cylindric_case_can_fail_hom_condition():
    t, g = tg("A5", "tau^1")
    v = standardness(t, g)
    assert v.by_table and v.table_case == "cylindric"
    assert not v.by_hom_condition


def test_recognize_conjugates_and_inverses():
    t = build_tree("D", 4)
    g = parse_generator(t, "phi(132)*tau^-2")
    rec = recognize_generator(t, g)
    assert rec["r"] == 2 and rec["kind"] == "phi*tau"
    t, g = tg("A3", "tau^4*S")
    assert recognize_generator(t, g)["kind"] == "phi*tau"
    with pytest.raises(TreeMismatch):
        recognize_generator(build_tree("A", 2), g)
    d5 = build_tree("D", 5)
    with pytest.raises(NotWeaklyAdmissible):
        recognize_generator(d5, phi(d5))


@pytest.mark.parametrize("tree", ade_trees(8), ids=str)
def test_cy_dimension(tree):
    assert cy_dimension(tree, tau_power(tree, 1)) == 1
    for d in (2, 3, 4):
        g = maximal_cy_generator(tree, d)
        assert is_weakly_admissible(g)
        assert cy_dimension(tree, g) == d


def test_cy_examples():
    a3 = build_tree("A", 3)
    assert cy_dimension(a3, maximal_cy_generator(a3, 2)) == 2
    assert cy_dimension(a3, tau_power(a3, 3), d_max=1) is None
    d4 = build_tree("D", 4)
    assert equals(maximal_cy_generator(d4, 3), tau_power(d4, -7))
    a5 = build_tree("A", 5)
    assert equals(maximal_cy_generator(a5, 2), compose(tau_power(a5, -1), suspension(a5)))
    with pytest.raises(DOutOfRange):
        maximal_cy_generator(a3, 1)


def test_group_exponent():
    t = build_tree("E", 6)
    g = parse_generator(t, "phi*tau^2")
    for k in range(-4, 5):
        assert group_exponent(parse_generator(t, f"phi^{k}*tau^{2 * k}"), g) == k
    assert group_exponent(tau_power(t, 1), g) is None


def test_summary_keys():
    t, g = tg("E8", "tau^14")
    res = classify_summary(t, g)
    assert res["by_table"] and res["by_hom_condition"]
    assert (res["vertex_count"], res["root_count"]) == (112, 120)
    assert not res["by_vertex_count"]
    assert res["recognized_as"] == "tau^14"
