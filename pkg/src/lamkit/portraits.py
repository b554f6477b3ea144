"""Full sibling collections over an image leaf and their portraits.

A collection over the image ``xy`` is stored combinatorially: the ``2d``
preimage endpoints ``x_1 < y_1 < ... < x_d < y_d`` (counterclockwise from
``x_1 = x/d``) plus a non-crossing perfect matching on their indices.  Even
indices are x-preimages, odd indices y-preimages; arc ``m`` runs from point
``m`` to point ``m + 1`` and is short exactly when ``m`` is even.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator

from .angles import Angle, arc_length, format_angle, format_fraction, in_closed_arc
from .chords import HALF, Chord, CriticalChord, is_critical, leaf_length

__all__ = [
    "BoundaryLeafError",
    "CentralStrip",
    "InvalidImageError",
    "Region",
    "SiblingCollection",
    "SiblingPortrait",
    "build_portrait",
    "catalan",
    "central_strip",
    "collection_containing",
    "default_image",
    "enumerate_sibling_collections",
    "max_disjoint_critical_chords",
    "noncrossing_matchings",
    "orient_image",
    "preimage_endpoints",
]


class InvalidImageError(ValueError):
    """Image leaf is degenerate or a diameter."""


class BoundaryLeafError(ValueError):
    """Some sibling leaf has length an exact multiple of 1/(2d)."""


def catalan(n: int) -> int:
    from math import comb

    return comb(2 * n, n) // (n + 1)


def default_image(d: int) -> Chord:
    """Generic image leaf used throughout the test-suite."""
    return Chord(Fraction(1, 8 * d), Fraction(3, 8 * d))


def orient_image(image: Chord) -> tuple[Angle, Angle]:
    """``(x, y)`` with the counterclockwise arc ``(x, y)`` the short one."""
    if image.degenerate:
        raise InvalidImageError(f"image leaf {image} is degenerate")
    if image.length == HALF:
        raise InvalidImageError(f"image leaf {image} is a diameter")
    if arc_length(image.a, image.b) < HALF:
        return image.a, image.b
    return image.b, image.a


def preimage_endpoints(d: int, image: Chord) -> list[Angle]:
    """Alternating x/y preimages of the image endpoints, ccw from ``x/d``."""
    x, y = orient_image(image)
    eta = image.length / d
    pts = []
    for i in range(d):
        xi = (x + i) / d
        pts.append(xi)
        pts.append((xi + eta) % 1)
    return pts


def noncrossing_matchings(n: int) -> Iterator[tuple[int, ...]]:
    """All non-crossing perfect matchings of ``0..n-1`` on a circle.

    Yields partner arrays.  Point 0 is matched with each odd ``j`` and the
    two separated runs are matched recursively.
    """

    def rec(lo: int, hi: int) -> Iterator[list[tuple[int, int]]]:
        if lo > hi:
            yield []
            return
        for j in range(lo + 1, hi + 1, 2):
            for inner in rec(lo + 1, j - 1):
                for outer in rec(j + 1, hi):
                    yield [(lo, j)] + inner + outer

    for pairs in rec(0, n - 1):
        match = [0] * n
        for i, j in pairs:
            match[i] = j
            match[j] = i
        yield tuple(match)


@dataclass(frozen=True)
class SiblingCollection:
    d: int
    image: Chord
    points: tuple[Angle, ...]
    match: tuple[int, ...]

    @cached_property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i, j in enumerate(self.match) if i < j)

    @cached_property
    def leaves(self) -> tuple[Chord, ...]:
        return tuple(Chord(self.points[i], self.points[j]) for i, j in self.pairs)

    @property
    def eta(self) -> Fraction:
        """Short arc length."""
        return self.image.length / self.d

    @property
    def long_arc(self) -> Fraction:
        return (1 - self.image.length) / self.d

    def leaf_at(self, point: int) -> Chord:
        return Chord(self.points[point], self.points[self.match[point]])

    def rotated(self, k: int) -> tuple[int, ...]:
        """Matching after relabelling x_i -> x_{i+k}, y_i -> y_{i+k}."""
        n = len(self.match)
        s = 2 * k
        return tuple((self.match[(i + s) % n] - s) % n for i in range(n))


def enumerate_sibling_collections(d: int, image: Chord) -> list[SiblingCollection]:
    pts = tuple(preimage_endpoints(d, image))
    return [SiblingCollection(d, image, pts, m) for m in noncrossing_matchings(2 * d)]


def collection_containing(d: int, leaf: Chord) -> list[SiblingCollection]:
    """All full sibling collections over ``sigma_d(leaf)`` that contain ``leaf``."""
    image = leaf.image(d)
    return [c for c in enumerate_sibling_collections(d, image) if leaf in c.leaves]


@dataclass(frozen=True)
class Region:
    kind: str  # "C" or "R"
    arcs: tuple[tuple[int, int], ...]  # (start point, end point) in boundary-walk order
    boundary_leaves: tuple[Chord, ...]
    arc_angles: tuple[tuple[Angle, Angle], ...] = field(repr=False)

    @property
    def degree(self) -> int:
        return len(self.arcs)

    def contains_point(self, t: Angle) -> bool:
        """Membership in the closed arcs of the region."""
        return any(in_closed_arc(t, a, b) for a, b in self.arc_angles)

    def arc_index(self, t: Angle) -> int | None:
        for i, (a, b) in enumerate(self.arc_angles):
            if in_closed_arc(t, a, b):
                return i
        return None


@dataclass(frozen=True)
class SiblingPortrait:
    collection: SiblingCollection
    regions: tuple[Region, ...]
    arc_region: tuple[int, ...]  # region index of every arc m

    @property
    def d(self) -> int:
        return self.collection.d

    def adjacent_pairs(self) -> list[tuple[int, int]]:
        """Region indices on the two sides of each leaf, one pair per leaf."""
        n = 2 * self.d
        out = []
        for p, q in self.collection.pairs:
            out.append((self.arc_region[(p - 1) % n], self.arc_region[p]))
        return out


def build_portrait(coll: SiblingCollection) -> SiblingPortrait:
    """Regions complementary to the sibling leaves.

    Walks each region boundary counterclockwise: arc ``m`` ends at point
    ``m + 1``, whose leaf leads to point ``match[m + 1]`` where the next arc
    of the same region starts.
    """
    d = coll.d
    unit = Fraction(1, 2 * d)
    for leaf in coll.leaves:
        if leaf_length(leaf) % unit == 0:
            raise BoundaryLeafError(f"leaf {leaf} has length a multiple of 1/(2d)")
    n = 2 * d
    pts = coll.points
    arc_region = [-1] * n
    regions = []
    for start in range(n):
        if arc_region[start] >= 0:
            continue
        arcs, leaves = [], []
        m = start
        while arc_region[m] < 0:
            arc_region[m] = len(regions)
            arcs.append((m, (m + 1) % n))
            nxt = coll.match[(m + 1) % n]
            leaves.append(Chord(pts[(m + 1) % n], pts[nxt]))
            m = nxt
        kind = "C" if start % 2 == 0 else "R"
        regions.append(Region(kind, tuple(arcs), tuple(leaves),
                              tuple((pts[a], pts[b]) for a, b in arcs)))
    return SiblingPortrait(coll, tuple(regions), tuple(arc_region))


@dataclass(frozen=True)
class CentralStrip:
    components: tuple[Region, ...]
    degree: int
    eta: Fraction
    long_arc: Fraction

    @property
    def arcs(self) -> list[tuple[Angle, Angle]]:
        return [arc for comp in self.components for arc in comp.arc_angles]

    @property
    def boundary_leaves(self) -> list[Chord]:
        out = []
        for comp in self.components:
            for leaf in comp.boundary_leaves:
                if leaf not in out:
                    out.append(leaf)
        return out

    def component_of(self, t: Angle) -> int | None:
        """Index (into :attr:`arcs`) of the closed short arc holding ``t``."""
        for i, (a, b) in enumerate(self.arcs):
            if in_closed_arc(t, a, b):
                return i
        return None


def central_strip(p: SiblingPortrait) -> CentralStrip | None:
    comps = tuple(r for r in p.regions if r.kind == "C" and r.degree >= 2)
    if not comps:
        return None
    c = p.collection
    return CentralStrip(comps, min(r.degree for r in comps), c.eta, c.long_arc)


def max_disjoint_critical_chords(d: int, r: Region) -> tuple[int, list[CriticalChord]]:
    """``deg(r) - 1`` together with a witness family of that size.

    The witness fans out from the first arc: the chord to the j-th arc
    starts further back on the first arc the further ccw its target lies,
    which keeps the fan pairwise disjoint.
    """
    k = r.degree
    if k == 1:
        return 0, []
    (a0, b0) = r.arc_angles[0]
    width = arc_length(a0, b0)
    out = []
    for j in range(1, k):
        aj, _ = r.arc_angles[j]
        eps = width * Fraction(k - j, k)
        start = a0 + eps
        end = aj + eps
        ch = Chord(start, end)
        assert is_critical(d, ch), (ch, d)
        disp = int(arc_length(ch.a, ch.b) * d)
        out.append(CriticalChord(ch, disp))
    return k - 1, out


def portrait_to_dict(p: SiblingPortrait) -> dict:
    from .trees import dual_tree

    coll = p.collection
    tree = dual_tree(p)
    return {
        "d": coll.d,
        "image": str(coll.image),
        "points": [format_angle(t) for t in coll.points],
        "leaves": [str(l) for l in coll.leaves],
        "eta": format_fraction(coll.eta),
        "regions": [
            {
                "kind": r.kind,
                "degree": r.degree,
                "arcs": [[format_angle(a), format_angle(b)] for a, b in r.arc_angles],
                "boundary_leaves": [str(l) for l in r.boundary_leaves],
            }
            for r in p.regions
        ],
        "tree": tree.to_dict(),
    }
