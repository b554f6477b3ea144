from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from lamkit.angles import arc_length, sigma
from lamkit.chords import Chord, crosses, is_critical
from lamkit.portraits import (
    InvalidImageError,
    build_portrait,
    catalan,
    central_strip,
    collection_containing,
    default_image,
    enumerate_sibling_collections,
    max_disjoint_critical_chords,
    noncrossing_matchings,
    preimage_endpoints,
)


def all_matchings(points):
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for i, p in enumerate(rest):
        for m in all_matchings(rest[:i] + rest[i + 1:]):
            yield [(first, p)] + m


def linked(p, q):
    (a, b), (c, e) = sorted(p), sorted(q)
    return (a < c < b) != (a < e < b)


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
def test_noncrossing_matchings_against_brute_force(n):
    brute = set()
    for m in all_matchings(list(range(n))):
        if not any(linked(p, q) for p, q in combinations(m, 2)):
            partner = [0] * n
            for i, j in m:
                partner[i], partner[j] = j, i
            brute.add(tuple(partner))
    fast = list(noncrossing_matchings(n))
    assert len(fast) == len(set(fast))
    assert set(fast) == brute
    assert len(brute) == catalan(n // 2)


def test_catalan_values():
    assert [catalan(n) for n in range(1, 8)] == [1, 2, 5, 14, 42, 132, 429]


@given(st.integers(2, 7), st.integers(3, 97), st.integers(0, 96), st.integers(1, 96))
def test_preimage_endpoints(d, q, a, s):
    s = s % q or 1
    image = Chord(F(a % q, q), F(a % q + s, q))
    if image.length == F(1, 2):
        with pytest.raises(InvalidImageError):
            preimage_endpoints(d, image)
        return
    pts = preimage_endpoints(d, image)
    assert len(set(pts)) == 2 * d
    assert {sigma(d, t) for t in pts} == {image.a, image.b}
    eta = image.length / d
    for i in range(2 * d):
        gap = arc_length(pts[i], pts[(i + 1) % (2 * d)])
        assert gap == (eta if i % 2 == 0 else F(1, d) - eta)


def test_invalid_images():
    with pytest.raises(InvalidImageError):
        enumerate_sibling_collections(2, Chord(F(0), F(1, 2)))
    with pytest.raises(InvalidImageError):
        enumerate_sibling_collections(2, Chord(F(1, 5), F(1, 5)))


def test_two_collections_over_a_third():
    colls = enumerate_sibling_collections(2, Chord(F(1, 3), F(2, 3)))
    assert len(colls) == 2
    assert {frozenset(c.leaves) for c in colls} == {
        frozenset({Chord(F(1, 6), F(1, 3)), Chord(F(2, 3), F(5, 6))}),
        frozenset({Chord(F(1, 6), F(5, 6)), Chord(F(1, 3), F(2, 3))}),
    }


@pytest.mark.parametrize("d", range(1, 6))
def test_collections_are_sibling_laminations(d):
    image = default_image(d)
    for c in enumerate_sibling_collections(d, image):
        assert len(c.leaves) == d
        for leaf in c.leaves:
            assert leaf.image(d) == image
        for l1, l2 in combinations(c.leaves, 2):
            assert not crosses(l1, l2)
            assert not set(l1.endpoints) & set(l2.endpoints)


@pytest.mark.parametrize("d", range(2, 6))
def test_regions_are_pure_and_colored_by_arc_length(d):
    for c in enumerate_sibling_collections(d, default_image(d)):
        p = build_portrait(c)
        assert len(p.regions) == d + 1
        for r in p.regions:
            short = [arc_length(a, b) < F(1, 2 * d) for a, b in r.arc_angles]
            assert all(short) or not any(short)
            assert r.kind == ("C" if short[0] else "R")
        assert sorted(m for r in p.regions for m, _ in r.arcs) == list(range(2 * d))


def test_collection_containing_leaf():
    leaf = Chord(F(1, 3) + F(1, 60), F(2, 3) - F(1, 60))
    colls = collection_containing(2, leaf)
    assert len(colls) == 1
    assert leaf in colls[0].leaves


def test_rotation_relabels_collection():
    d = 4
    colls = enumerate_sibling_collections(d, default_image(d))
    matches = {c.match for c in colls}
    for c in colls:
        for k in range(d):
            assert c.rotated(k) in matches
        assert c.rotated(d) == c.match


def brute_disjoint_critical(d, region, per_arc=5):
    """Largest family of pairwise disjoint critical chords with endpoints on a
    grid of the region's arcs (exhaustive, small cases only)."""
    pts = []
    for a, b in region.arc_angles:
        w = arc_length(a, b)
        pts += [(a + w * F(i, per_arc + 1)) % 1 for i in range(1, per_arc + 1)]
    crit = [Chord(s, t) for s, t in combinations(pts, 2) if is_critical(d, Chord(s, t))]
    best = 0
    for size in range(1, region.degree + 1):
        for fam in combinations(crit, size):
            ends = [t for ch in fam for t in ch.endpoints]
            if len(set(ends)) == len(ends) and not any(crosses(x, y) for x, y in combinations(fam, 2)):
                best = size
                break
    return best


@pytest.mark.parametrize("d", [2, 3])
def test_max_disjoint_critical_chords(d):
    for c in enumerate_sibling_collections(d, default_image(d)):
        for r in build_portrait(c).regions:
            n, fam = max_disjoint_critical_chords(d, r)
            assert n == r.degree - 1 == len(fam)
            for cc in fam:
                assert is_critical(d, cc.chord)
                assert r.contains_point(cc.chord.a) and r.contains_point(cc.chord.b)
            for x, y in combinations(fam, 2):
                assert not crosses(x.chord, y.chord)
            if r.kind == "C":
                assert brute_disjoint_critical(d, r) == n


def test_central_strip_of_the_long_leaf_portrait():
    leaf = Chord(F(1, 3) - F(1, 60), F(2, 3) + F(1, 60))
    (coll,) = collection_containing(2, leaf)
    strip = central_strip(build_portrait(coll))
    assert strip is not None and strip.degree == 2
    assert set(strip.boundary_leaves) == set(coll.leaves)
    assert strip.eta == coll.image.length / 2
    assert strip.long_arc > F(1, 3)
