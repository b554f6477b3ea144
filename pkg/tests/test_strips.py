from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from lamkit.chords import Chord, crosses, endpoint_distance, is_critical, tau
from lamkit.portraits import build_portrait, central_strip, collection_containing, enumerate_sibling_collections
from lamkit.strips import (
    COMPLETE,
    FAIL,
    INAPPLICABLE,
    PASS,
    TRUNCATED,
    closest_critical_sweep,
    csl_sweep,
    leaf_growth,
    leaf_orbit,
    sample_images,
    verify_csl,
    verify_unicritical,
)


def test_leaf_orbit_detects_cycle():
    tr = leaf_orbit(3, Chord(F(1, 26), F(24, 26)))
    assert tr.complete and tr.cycle_start == 0
    assert tr.lengths == [F(3, 26), F(9, 26), F(1, 26)]


def test_leaf_orbit_truncates():
    tr = leaf_orbit(2, Chord(F(1, 1001), F(3, 1001)), max_iters=5)
    assert not tr.complete and len(tr.chords) == 6


@pytest.mark.parametrize("d, x, i", [(2, F(1, 5), 1), (3, F(1, 10), 1), (2, F(1, 100), 6)])
def test_leaf_growth_examples(d, x, i):
    assert leaf_growth(d, x) == i


@pytest.mark.parametrize("x", [F(1, 3), F(0), F(1, 2)])
def test_leaf_growth_rejects(x):
    with pytest.raises(ValueError):
        leaf_growth(2, x)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_leaf_growth_terminates_for_small_denominators(d):
    bound = F(1, d + 1)
    for q in range(2, 1001):
        for a in range(1, (q - 1) // (d + 1) + 1):
            x = F(a, q)
            if x < bound:
                i = leaf_growth(d, x)
                for _ in range(i):
                    assert x < bound
                    x = tau(d, x)
                assert x >= bound


def long_leaf_collection():
    leaf = Chord(F(1, 3) - F(1, 60), F(2, 3) + F(1, 60))
    (coll,) = collection_containing(2, leaf)
    return coll


def test_csl_on_a_long_quadratic_leaf():
    rep = verify_csl(2, long_leaf_collection(), 50)
    assert rep.verdict == PASS and rep.completeness == COMPLETE
    assert rep.eta_bound_holds
    for lc in rep.leaves:
        assert lc.part1 and lc.part2 and lc.length_identity


def test_csl_short_leaf_is_outside_the_hypothesis():
    leaf = Chord(F(1, 3) + F(1, 60), F(2, 3) - F(1, 60))
    (coll,) = collection_containing(2, leaf)
    rep = verify_csl(2, coll, 50)
    assert rep.verdict == INAPPLICABLE
    # without the hypothesis the first image does come back
    assert not all(lc.part1 for lc in rep.leaves)


def test_csl_third_boundary_case_is_inapplicable():
    # |leaf| = 1/3 exactly: the image has length 1/3 and the long arc is 1/3
    leaf = Chord(F(1, 6), F(1, 2))
    for coll in collection_containing(2, leaf):
        assert verify_csl(2, coll).verdict == INAPPLICABLE


def test_csl_without_strip():
    colls = enumerate_sibling_collections(2, Chord(F(1, 3), F(2, 3)))
    reps = [verify_csl(2, c) for c in colls]
    assert sum(r.strip is None for r in reps) == 1
    assert all(r.verdict == INAPPLICABLE for r in reps if r.strip is None)


def test_csl_report_serialises():
    d = verify_csl(2, long_leaf_collection()).to_dict()
    assert d["verdict"] == PASS and d["eta"] == "2/15"
    assert {"leaf", "part1", "part2", "witnesses", "reentries"} <= set(d["leaves"][0])


@pytest.mark.parametrize("d", [2, 3])
def test_witnesses_are_genuine(d):
    seen = 0
    for image in sample_images(d, 120, 2, 7):
        for coll in enumerate_sibling_collections(d, image):
            rep = verify_csl(d, coll)
            if rep.strip is None or rep.verdict == INAPPLICABLE:
                continue
            strip = rep.strip
            for lc in rep.leaves:
                for w in lc.witnesses:
                    seen += 1
                    chords = [lc.leaf] + leaf_orbit(d, coll.image).chords
                    lk = chords[w.k]
                    assert w.k < w.j
                    assert is_critical(d, w.critical) and not crosses(lk, w.critical)
                    assert endpoint_distance(lk, w.critical) == w.achieved <= w.bound
                    assert w.bound == strip.eta / d ** (w.j - w.k)
                    assert not any(r.contains_point(w.critical.a) and r.contains_point(w.critical.b)
                                   for r in strip.components)
    assert seen > 0


def test_unicritical_quadratic():
    rep = verify_unicritical(2, long_leaf_collection(), 100)
    assert rep.verdict == PASS
    leaf = Chord(F(1, 3) + F(1, 60), F(2, 3) - F(1, 60))
    (coll,) = collection_containing(2, leaf)
    assert verify_unicritical(2, coll, 100).verdict == PASS


def test_unicritical_needs_full_degree():
    d = 3
    for coll in enumerate_sibling_collections(d, Chord(F(1, 50), F(4, 50))):
        strip = central_strip(build_portrait(coll))
        rep = verify_unicritical(d, coll)
        if strip is None or strip.degree != d:
            assert rep.verdict == INAPPLICABLE
        else:
            assert rep.verdict in (PASS, INAPPLICABLE)
            assert rep.verdict != FAIL


def test_cubic_period_three_leaf_collections_are_outside_hypotheses():
    for coll in collection_containing(3, Chord(F(1, 26), F(24, 26))):
        assert verify_csl(3, coll).verdict == INAPPLICABLE
        assert verify_unicritical(3, coll).verdict == INAPPLICABLE


def test_closest_critical_examples():
    r = closest_critical_sweep(F(3, 26))
    assert (r.status, r.index, r.value) == ("REACHED", 1, F(9, 26))
    assert closest_critical_sweep(F(1, 4)).status == "EXCLUDED"
    assert closest_critical_sweep(F(1, 2)).status == "EXCLUDED"
    r = closest_critical_sweep(F(5, 11))
    assert r.status == "REACHED"
    assert r.lengths[:4] == [F(5, 11), F(4, 11), F(1, 11), F(3, 11)]
    assert r.index == 1 and r.value == F(4, 11)


@given(st.integers(2, 400), st.integers(1, 200))
def test_closest_critical_reaches_window(q, a):
    x = F(a % (q // 2 + 1), q)
    r = closest_critical_sweep(x)
    # lengths that never hit a fixed length always get within 1/12
    assert r.status in ("REACHED", "EXCLUDED")
    if r.status == "REACHED":
        assert F(1, 4) < r.value < F(5, 12)


def test_sample_images_respect_hypothesis():
    for d in (2, 3, 4):
        imgs = sample_images(d, 60, 3, 0)
        assert imgs == sample_images(d, 60, 3, 0)
        assert all(0 < im.length < F(1, d + 1) for im in imgs)


def test_small_sweep():
    s = csl_sweep(2, denominator_max=40, per_denominator=2)
    assert s.ok and s.images > 0 and s.truncated == 0
    assert s.witnesses_valid == s.same_component
