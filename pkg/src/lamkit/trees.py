"""Plane bicolored trees, their rotation classes, and the correspondence
with sibling portraits.

A plane tree is walked along its contour (the tree kept on the left).  The
``2d`` traversals of edge sides correspond to the ``2d`` preimage endpoints
of a sibling collection, and the corner after traversal ``m`` is the region
holding arc ``m``.  Starting the walk at a traversal that enters a C vertex
makes even corners C and odd corners R, matching the short/long arcs.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import comb
from typing import Iterator

from .chords import Chord
from .portraits import (
    SiblingCollection,
    SiblingPortrait,
    build_portrait,
    catalan,
    central_strip,
    default_image,
    enumerate_sibling_collections,
    preimage_endpoints,
)

__all__ = [
    "CensusReport",
    "PlaneBicoloredTree",
    "burnside_count",
    "canonical_code",
    "census_crosscheck",
    "count_formula",
    "dual_tree",
    "enumerate_trees",
    "euler_phi",
    "tree_to_portrait",
]

Code = tuple[int, ...]


def euler_phi(n: int) -> int:
    """Totient by trial factorization."""
    if n < 1:
        raise ValueError("n must be positive")
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def count_formula_numerator(d: int) -> int:
    """``d * N(d)``: the Catalan term plus the divisor sum."""
    total = catalan(d)
    for n in range(1, d):
        if d % n == 0:
            total += euler_phi(d // n) * comb(2 * n, n)
    return total


def count_formula(d: int) -> int:
    """Number of plane bicolored trees with ``d`` edges up to rotation."""
    if d < 1:
        raise ValueError("d must be >= 1")
    q, r = divmod(count_formula_numerator(d), d)
    if r:
        raise ArithmeticError(f"count formula not integral at d={d}")
    return q


def canonical_code(match: tuple[int, ...]) -> Code:
    """Least rotation (by even shifts) of the partner-offset word of a matching."""
    n = len(match)
    offsets = [(match[i] - i) % n for i in range(n)]
    return min(tuple(offsets[s:] + offsets[:s]) for s in range(0, n, 2))


@dataclass(frozen=True)
class PlaneBicoloredTree:
    """Vertex colors plus, per vertex, its neighbours in ccw cyclic order."""

    colors: tuple[str, ...]
    rotation: tuple[tuple[int, ...], ...]

    @property
    def n_edges(self) -> int:
        return sum(len(r) for r in self.rotation) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.rotation) for v in nbrs if u < v]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def is_tree(self) -> bool:
        n = len(self.colors)
        if self.n_edges != n - 1:
            return False
        seen = {0}
        todo = [0]
        while todo:
            u = todo.pop()
            for v in self.rotation[u]:
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        return len(seen) == n

    def is_bicolored(self) -> bool:
        return all(self.colors[u] != self.colors[v] for u, v in self.edges())

    def contour(self) -> list[tuple[int, int]]:
        """Darts ``(tail, head)`` of the contour walk, starting into a C vertex."""
        start = next(
            (u, v) for v, c in enumerate(self.colors) if c == "C" for u in self.rotation[v]
        )
        walk = [start]
        while True:
            u, v = walk[-1]
            nbrs = self.rotation[v]
            w = nbrs[(nbrs.index(u) + 1) % len(nbrs)]
            if (v, w) == start:
                return walk
            walk.append((v, w))

    def matching(self) -> tuple[int, ...]:
        walk = self.contour()
        pos = {dart: i for i, dart in enumerate(walk)}
        return tuple(pos[(v, u)] for u, v in walk)

    def code(self) -> Code:
        return canonical_code(self.matching())

    def parents(self, root: int = 0) -> list[int]:
        parent = [-1] * len(self.colors)
        seen = {root}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in self.rotation[u]:
                if v not in seen:
                    seen.add(v)
                    parent[v] = u
                    queue.append(v)
        return parent

    def to_dict(self) -> dict:
        return {
            "parent": self.parents(),
            "colors": list(self.colors),
            "cyclic_order": [list(r) for r in self.rotation],
        }


def dual_tree(p: SiblingPortrait) -> PlaneBicoloredTree:
    """Regions as vertices, sibling leaves as edges, plane order from the disk."""
    n = 2 * p.d
    rotation = []
    for r in p.regions:
        # the leaf after arc m separates this region from the region of arc m+1
        rotation.append(tuple(p.arc_region[(m + 1) % n] for m, _ in r.arcs))
    return PlaneBicoloredTree(tuple(r.kind for r in p.regions), tuple(rotation))


def tree_to_portrait(t: PlaneBicoloredTree, image: Chord) -> SiblingPortrait:
    d = t.n_edges
    coll = SiblingCollection(d, image, tuple(preimage_endpoints(d, image)), t.matching())
    return build_portrait(coll)


def _plane_trees(n: int) -> Iterator[tuple]:
    """Rooted plane trees with ``n`` edges as nested tuples of children."""
    if n == 0:
        yield ()
        return
    for k in range(n):
        for first in _plane_trees(k):
            for rest in _plane_trees(n - 1 - k):
                yield (first,) + rest


def _from_nested(children: tuple, root_color: str) -> PlaneBicoloredTree:
    colors: list[str] = []
    rotation: list[list[int]] = []
    other = {"C": "R", "R": "C"}

    def add(node: tuple, color: str, parent: int | None) -> int:
        v = len(colors)
        colors.append(color)
        rotation.append([] if parent is None else [parent])
        for child in node:
            rotation[v].append(add(child, other[color], v))
        return v

    add(children, root_color, None)
    return PlaneBicoloredTree(tuple(colors), tuple(tuple(r) for r in rotation))


def enumerate_trees(d: int) -> list[Code]:
    """Canonical codes of all plane bicolored trees with ``d`` edges up to rotation.

    Generated from rooted plane trees (both root colors), independently of
    the sibling-collection enumeration.
    """
    codes = set()
    for nested in _plane_trees(d):
        for color in ("C", "R"):
            codes.add(_from_nested(nested, color).code())
    return sorted(codes)


def tree_from_code(code: Code) -> PlaneBicoloredTree:
    """Rebuild a tree from a canonical code via its portrait."""
    d = len(code) // 2
    match = tuple((i + off) % len(code) for i, off in enumerate(code))
    image = default_image(d)
    coll = SiblingCollection(d, image, tuple(preimage_endpoints(d, image)), match)
    return dual_tree(build_portrait(coll))


def burnside_count(collections: list[SiblingCollection]) -> int:
    """Orbits of the rotation group ``Z_d`` by Burnside's lemma."""
    if not collections:
        return 0
    d = collections[0].d
    fixed = sum(1 for k in range(d) for c in collections if c.rotated(k) == c.match)
    q, r = divmod(fixed, d)
    assert r == 0
    return q


@dataclass
class CensusReport:
    d: int
    total: int
    catalan: int
    classes: int
    burnside: int
    with_strip: int
    formula: int
    trees: int

    @property
    def ok(self) -> bool:
        return (
            self.total == self.catalan
            and self.classes == self.formula == self.burnside == self.trees
            and self.with_strip == self.formula - 1
        )

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "total": self.total,
            "catalan": self.catalan,
            "classes": self.classes,
            "burnside": self.burnside,
            "with_strip": self.with_strip,
            "N": self.formula,
            "trees": self.trees,
            "ok": self.ok,
        }

    def __str__(self) -> str:
        return f"total {self.total}, classes {self.classes}, with-strip {self.with_strip}"


def census_crosscheck(d: int, image: Chord | None = None) -> CensusReport:
    image = image or default_image(d)
    colls = enumerate_sibling_collections(d, image)
    classes: dict[Code, bool] = {}
    for c in colls:
        code = canonical_code(c.match)
        if code not in classes:
            classes[code] = central_strip(build_portrait(c)) is not None
    return CensusReport(
        d=d,
        total=len(colls),
        catalan=catalan(d),
        classes=len(classes),
        burnside=burnside_count(colls),
        with_strip=sum(classes.values()),
        formula=count_formula(d),
        trees=len(enumerate_trees(d)),
    )
