from math import gcd

import pytest

from lamkit.portraits import (
    build_portrait,
    catalan,
    central_strip,
    default_image,
    enumerate_sibling_collections,
)
from lamkit.trees import (
    PlaneBicoloredTree,
    burnside_count,
    canonical_code,
    census_crosscheck,
    count_formula,
    dual_tree,
    enumerate_trees,
    euler_phi,
    tree_from_code,
    tree_to_portrait,
)


def test_euler_phi_against_gcd_count():
    for n in range(1, 200):
        assert euler_phi(n) == sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def test_count_formula_small_values():
    assert [count_formula(d) for d in (2, 3, 4)] == [2, 3, 6]


@pytest.mark.parametrize("d", range(1, 8))
def test_count_formula_against_two_enumerations(d):
    colls = enumerate_sibling_collections(d, default_image(d))
    orbits = {canonical_code(c.match) for c in colls}
    assert count_formula(d) == len(orbits) == burnside_count(colls) == len(enumerate_trees(d))


def test_count_formula_further_values():
    # frozen after agreeing with both enumerations up to d = 8
    assert [count_formula(d) for d in range(5, 9)] == [10, 28, 63, 190]
    assert census_crosscheck(8).ok


@pytest.mark.parametrize("d", range(1, 7))
def test_dual_tree_is_a_bicolored_tree(d):
    for c in enumerate_sibling_collections(d, default_image(d)):
        p = build_portrait(c)
        t = dual_tree(p)
        assert t.is_tree() and t.is_bicolored()
        assert t.n_edges == d and len(t.colors) == d + 1
        for v, r in enumerate(p.regions):
            assert t.degree(v) == r.degree
        assert t.code() == canonical_code(c.match)


@pytest.mark.parametrize("d", range(1, 6))
def test_tree_portrait_round_trip(d):
    image = default_image(d)
    for c in enumerate_sibling_collections(d, image):
        t = dual_tree(build_portrait(c))
        back = tree_to_portrait(t, image)
        assert canonical_code(back.collection.match) == canonical_code(c.match)


@pytest.mark.parametrize("d", range(1, 6))
def test_tree_from_code(d):
    for code in enumerate_trees(d):
        assert tree_from_code(code).code() == code


def test_code_is_rotation_invariant():
    d = 5
    for c in enumerate_sibling_collections(d, default_image(d)):
        for k in range(d):
            assert canonical_code(c.rotated(k)) == canonical_code(c.match)


def test_rcr_path():
    t = PlaneBicoloredTree(("R", "C", "R"), ((1,), (0, 2), (1,)))
    assert t.is_tree() and t.is_bicolored()
    assert t.edges() == [(0, 1), (1, 2)]
    p = tree_to_portrait(t, default_image(2))
    assert sorted(r.kind + str(r.degree) for r in p.regions) == ["C2", "R1", "R1"]
    assert central_strip(p).degree == 2


def test_tree_dict_shape():
    t = PlaneBicoloredTree(("R", "C", "R"), ((1,), (0, 2), (1,)))
    assert t.to_dict() == {"parent": [-1, 0, 1], "colors": ["R", "C", "R"], "cyclic_order": [[1], [0, 2], [1]]}


@pytest.mark.parametrize("d", range(2, 7))
def test_census(d):
    rep = census_crosscheck(d)
    assert rep.ok
    assert rep.total == catalan(d)
    assert rep.with_strip == rep.formula - 1


def test_census_text():
    assert str(census_crosscheck(3)) == "total 5, classes 3, with-strip 2"
