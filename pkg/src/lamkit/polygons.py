"""Identity-return polygons under ``sigma_d``.

Polygons are inscribed: their vertices are circle points, so two closed
hulls are disjoint exactly when no vertex is shared and one polygon sits in
a single complementary arc ("pocket") of the other.  The exhaustive search
works on integers ``N`` standing for ``N / (d**p - 1)``, the points fixed
by ``sigma_d^p``.
"""
from __future__ import annotations

import os
from bisect import bisect_left
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .angles import (
    Angle,
    arc_length,
    format_angle,
    format_fraction,
    itinerary_of,
    periodic_point,
    sigma,
)
from .chords import Chord, crosses, distance_to_nearest_critical, leaf_length

__all__ = [
    "IRPVerdict",
    "OrbitAnalysis",
    "Polygon",
    "PolygonOrbit",
    "SearchResult",
    "analyze_orbit_sigma3",
    "brute_force_irp",
    "example_period2",
    "example_period3",
    "example_sigma4_quadrilateral",
    "hulls_disjoint",
    "hulls_disjoint_by_sides",
    "impostor_triangle",
    "is_identity_return",
    "orbit_of",
    "search_irp",
    "verify_no_period2",
]

NOT_PERIODIC = "not-periodic"
ROTATED_RETURN = "rotated-return"
ORBIT_OVERLAP = "orbit-overlap"
ORDER_REVERSED = "order-reversed"
NONE = "none"


@dataclass(frozen=True, order=True)
class Polygon:
    """Distinct circle points in ccw order, starting at the least angle."""

    vertices: tuple[Angle, ...]

    def __post_init__(self):
        vs = tuple(sorted(Fraction(v) % 1 for v in self.vertices))
        if len(vs) < 2:
            raise ValueError("a polygon needs at least two vertices")
        if len(set(vs)) != len(vs):
            raise ValueError("polygon vertices must be distinct")
        object.__setattr__(self, "vertices", vs)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def sides(self) -> list[Chord]:
        vs = self.vertices
        if len(vs) == 2:
            return [Chord(*vs)]
        return [Chord(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def image(self, d: int) -> "Polygon":
        return Polygon(tuple(sigma(d, v) for v in self.vertices))

    def __str__(self) -> str:
        return "{" + ", ".join(format_angle(v) for v in self.vertices) + "}"


def polygon(*vertices) -> Polygon:
    return Polygon(tuple(Fraction(v) for v in vertices))


def _pocket(sorted_pts: Sequence, x) -> int:
    return bisect_left(sorted_pts, x) % len(sorted_pts)


def hulls_disjoint(P: Sequence, Q: Sequence) -> bool:
    """Closed hulls of two inscribed polygons are disjoint (pocket test)."""
    A = sorted(P)
    aset = set(A)
    pockets = set()
    for x in Q:
        if x in aset:
            return False
        pockets.add(_pocket(A, x))
    return len(pockets) == 1


def _sides(vs: Sequence) -> list[Chord]:
    vs = sorted(vs)
    if len(vs) == 2:
        return [Chord(*vs)]
    return [Chord(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def hulls_disjoint_by_sides(P: Sequence, Q: Sequence) -> bool:
    """Independent test: no shared vertex, no crossing sides, and no vertex
    of one polygon strictly inside the other's hull.

    For inscribed polygons a circle point is never interior to a hull, so
    the last condition reduces to the shared-vertex test.
    """
    if set(P) & set(Q):
        return False
    return not any(crosses(s, t) for s in _sides(P) for t in _sides(Q))


def _cyclic_descents(seq: Sequence) -> int:
    n = len(seq)
    return sum(1 for i in range(n) if seq[(i + 1) % n] < seq[i])


def _ccw_ordered(seq: Sequence) -> bool:
    return len(seq) < 3 or _cyclic_descents(seq) == 1


@dataclass(frozen=True)
class IRPVerdict:
    is_identity_return: bool
    reason: str = NONE
    detail: str = ""

    def __bool__(self) -> bool:
        return self.is_identity_return

    def to_dict(self) -> dict:
        return {"is_identity_return": self.is_identity_return, "reason": self.reason, "detail": self.detail}


def _tracks(d: int, vs: Sequence[Angle], n: int) -> list[list[Angle]]:
    out = [list(vs)]
    for _ in range(n):
        out.append([sigma(d, v) for v in out[-1]])
    return out


def is_identity_return(d: int, P: Polygon, p: int, require_order: bool = True) -> IRPVerdict:
    """Identity return of least period ``p``: pairwise disjoint orbit hulls,
    every vertex fixed on first return, and (unless ``require_order`` is
    off) ccw vertex order kept at every step."""
    if p < 1:
        raise ValueError("period must be >= 1")
    k = len(P)
    V = list(P.vertices)
    tracks = _tracks(d, V, p)
    for i in range(1, p + 1):
        if len(set(tracks[i])) < k:
            return IRPVerdict(False, NOT_PERIODIC, f"vertices collide at iterate {i}")
    vset = set(V)
    first = next((q for q in range(1, p + 1) if set(tracks[q]) == vset), None)
    if first is None:
        return IRPVerdict(False, NOT_PERIODIC, f"sigma^{p} does not return the polygon")
    if tracks[first] != V:
        return IRPVerdict(False, ROTATED_RETURN, f"first return at iterate {first} permutes the vertices")
    if first != p:
        return IRPVerdict(False, NOT_PERIODIC, f"least period is {first}, not {p}")
    for a, b in combinations(range(p), 2):
        if not hulls_disjoint(tracks[a], tracks[b]):
            return IRPVerdict(False, ORBIT_OVERLAP, f"P_{a} and P_{b} meet")
    if require_order:
        for i in range(1, p + 1):
            if not _ccw_ordered(tracks[i]):
                return IRPVerdict(False, ORDER_REVERSED, f"step {i - 1} -> {i} breaks circular order")
    return IRPVerdict(True)


@dataclass
class PolygonOrbit:
    d: int
    p: int
    polygons: tuple[Polygon, ...]
    tracks: list[list[Angle]] = field(repr=False)  # tracks[i][j] = sigma^i(v_j)
    verdict: IRPVerdict | None = None

    @property
    def k(self) -> int:
        return len(self.polygons[0])

    @property
    def vertices(self) -> tuple[Angle, ...]:
        return self.polygons[0].vertices

    @property
    def order_preserved(self) -> list[bool]:
        """Whether step ``i -> i+1`` keeps the ccw order of the vertices."""
        return [_ccw_ordered(self.tracks[i + 1]) for i in range(self.p)]

    @property
    def disjointness(self) -> list[list[bool]]:
        polys = [P.vertices for P in self.polygons]
        return [[a != b and hulls_disjoint(pa, pb) for b, pb in enumerate(polys)] for a, pa in enumerate(polys)]

    def side_lengths(self) -> list[list[Fraction]]:
        k = self.k
        return [[leaf_length(Chord(t[j], t[(j + 1) % k])) for j in range(k)] for t in self.tracks[: self.p]]

    def to_dict(self) -> dict:
        d = self.d
        return {
            "d": d,
            "p": self.p,
            "k": self.k,
            "vertices": [format_angle(v) for v in self.vertices],
            "itineraries": [str(itinerary_of(d, v)) for v in self.vertices],
            "polygons": [[format_angle(v) for v in P.vertices] for P in self.polygons],
            "side_lengths": [[format_fraction(x) for x in row] for row in self.side_lengths()],
            "order_preserved": self.order_preserved,
            "disjoint": self.disjointness,
            "verdict": None if self.verdict is None else self.verdict.to_dict(),
        }


def orbit_of(d: int, P: Polygon, p: int) -> PolygonOrbit:
    tracks = _tracks(d, list(P.vertices), p)
    polys = tuple(Polygon(tuple(t)) for t in tracks[:p])
    return PolygonOrbit(d, p, polys, tracks, is_identity_return(d, P, p))


def canonical_orbit(d: int, P: Polygon, p: int) -> PolygonOrbit:
    """Orbit restarted at its lexicographically least polygon."""
    orb = orbit_of(d, P, p)
    return orbit_of(d, min(orb.polygons), p)


def example_period3(d: int) -> PolygonOrbit:
    """Period-3 d-gon with vertices 00i repeating (i = 1..d-1) and (d-1)(d-1)0 repeating."""
    if d < 3:
        raise ValueError("d must be >= 3")
    words = [(0, 0, i) for i in range(1, d)] + [(d - 1, d - 1, 0)]
    return orbit_of(d, Polygon(tuple(periodic_point(d, w) for w in words)), 3)


def example_period2(d: int) -> PolygonOrbit:
    """Period-2 (d-1)-gon with vertices 0i repeating, i = 1..d-1."""
    if d < 3:
        raise ValueError("d must be >= 3")
    return orbit_of(d, Polygon(tuple(periodic_point(d, (0, i)) for i in range(1, d))), 2)


SIGMA4_QUAD_WORDS = ((1, 3, 2), (0, 3, 2), (0, 2, 2), (2, 0, 0))


@dataclass
class QuadrilateralAnalysis:
    orbit: PolygonOrbit
    side: Chord
    distances: list[Fraction]
    threshold: Fraction = Fraction(1, 20)

    @property
    def min_distance(self) -> Fraction:
        return min(self.distances)

    @property
    def stays_away(self) -> bool:
        return self.min_distance >= self.threshold

    def to_dict(self) -> dict:
        return {
            "orbit": self.orbit.to_dict(),
            "side": str(self.side),
            "distances": [format_fraction(x) for x in self.distances],
            "min_distance": format_fraction(self.min_distance),
            "threshold": format_fraction(self.threshold),
            "stays_away": self.stays_away,
        }


def example_sigma4_quadrilateral() -> QuadrilateralAnalysis:
    """The period-3 quadrilateral for sigma_4 and the orbit of its side 022-200,
    measured against every critical chord."""
    d = 4
    vs = [periodic_point(d, w) for w in SIGMA4_QUAD_WORDS]
    orbit = orbit_of(d, Polygon(tuple(vs)), 3)
    side = Chord(vs[2], vs[3])
    dists, ch = [], side
    for _ in range(orbit.p):
        dists.append(distance_to_nearest_critical(d, ch))
        ch = ch.image(d)
    return QuadrilateralAnalysis(orbit, side, dists)


def impostor_triangle() -> Polygon:
    """Period-2 sigma_3 triangle whose orbit is disjoint but reverses order."""
    return polygon(Fraction(1, 8), Fraction(1, 4), Fraction(7, 8))


# ---------------------------------------------------------------- search


def _divisors(n: int) -> list[int]:
    return [q for q in range(1, n + 1) if n % q == 0]


def _exact_period_points(d: int, p: int) -> list[int]:
    M = d**p - 1
    proper = [q for q in _divisors(p) if q < p]
    return [N for N in range(M) if all((d**q - 1) * N % M for q in proper)]


@dataclass
class SearchResult:
    d: int
    k: int
    p: int
    orbits: list[PolygonOrbit]
    complete: bool
    nodes: int

    @property
    def status(self) -> str:
        return "COMPLETE" if self.complete else "INCOMPLETE"

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "p": self.p,
            "status": self.status,
            "nodes": self.nodes,
            "count": len(self.orbits),
            "orbits": [o.to_dict() for o in self.orbits],
        }


class _Budget(Exception):
    pass


def _dfs_from(args) -> tuple[list[tuple[int, ...]], int, bool]:
    """All admissible vertex sets whose least vertex is ``first``."""
    d, k, p, first, cands, max_nodes = args
    M = d**p - 1
    pows = [pow(d, i, M) for i in range(p)]
    found: list[tuple[int, ...]] = []
    nodes = 0
    tracks = [[first * pows[i] % M] for i in range(p)]
    chosen = [first]

    def admissible() -> bool:
        for i in range(1, p):
            if len(chosen) >= 3 and _cyclic_descents(tracks[i]) != 1:
                return False
        srt = [sorted(t) for t in tracks]
        sets = [set(t) for t in tracks]
        for a in range(p):
            A, aset = srt[a], sets[a]
            for b in range(a + 1, p):
                pocket = None
                for x in tracks[b]:
                    if x in aset:
                        return False
                    q = bisect_left(A, x) % len(A)
                    if pocket is None:
                        pocket = q
                    elif q != pocket:
                        return False
        return True

    def rec(start: int) -> None:
        nonlocal nodes
        if len(chosen) == k:
            found.append(tuple(chosen))
            return
        for idx in range(start, len(cands)):
            v = cands[idx]
            nodes += 1
            if nodes > max_nodes:
                raise _Budget
            chosen.append(v)
            for i in range(p):
                tracks[i].append(v * pows[i] % M)
            if admissible():
                rec(idx + 1)
            chosen.pop()
            for i in range(p):
                tracks[i].pop()

    try:
        if k == 1:
            found.append((first,))
        elif p == 1 or admissible():
            rec(0)
    except _Budget:
        return found, nodes, False
    return found, nodes, True


def search_irp(d: int, k: int, p: int, max_nodes: int = 20_000_000, max_points: int = 200_000,
               threads: int | None = None) -> SearchResult:
    """Every identity-return ``k``-gon orbit of least period ``p``, each
    listed once, starting from its least polygon.

    Vertices must have exact period ``p`` (a vertex of smaller period would
    be shared by two polygons of the orbit).  The first vertex is the least
    point of the whole orbit, which makes the listing duplicate-free.
    Branches are cut as soon as a partial polygon breaks circular order
    under some iterate or two partial orbit polygons meet; both conditions
    pass to subsets, so no solution is lost.
    """
    if k < 2 or p < 1:
        raise ValueError("need k >= 2 and p >= 1")
    M = d**p - 1
    if M > max_points:
        return SearchResult(d, k, p, [], False, 0)
    pts = _exact_period_points(d, p)
    pows = [pow(d, i, M) for i in range(p)]
    firsts = [v for v in pts if all(v * pows[i] % M > v for i in range(1, p))]
    jobs = []
    for v in firsts:
        cands = [w for w in pts if w > v and all(w * pows[i] % M > v for i in range(p))]
        jobs.append((d, k, p, v, cands, max_nodes))
    if threads is None:
        threads = int(os.environ.get("LAMKIT_THREADS", "1") or 1)
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_dfs_from, jobs))
    else:
        results = []
        budget = max_nodes
        for job in jobs:
            res = _dfs_from(job[:-1] + (budget,))
            results.append(res)
            budget -= res[1]
            if not res[2] or budget <= 0:
                break
    complete = len(results) == len(jobs) and all(r[2] for r in results)
    nodes = sum(r[1] for r in results)
    if nodes > max_nodes:
        complete = False
    orbits = []
    for found, _, _ in results:
        for ns in found:
            P = Polygon(tuple(Fraction(n, M) for n in ns))
            orbits.append(orbit_of(d, P, p))
    orbits.sort(key=lambda o: o.polygons[0])
    return SearchResult(d, k, p, orbits, complete, nodes)


def brute_force_irp(d: int, k: int, p: int) -> list[Polygon]:
    """Canonical least polygons of all identity-return orbits, by testing
    every ``k``-subset of the points fixed by ``sigma_d^p``."""
    M = d**p - 1
    pts = [Fraction(n, M) for n in range(M)]
    reps = set()
    for combo in combinations(pts, k):
        P = Polygon(combo)
        if is_identity_return(d, P, p):
            reps.add(min(orbit_of(d, P, p).polygons))
    return sorted(reps)


def verify_no_period2(d: int, k: int) -> bool:
    """True iff no period-2 identity-return ``k``-gon exists (exhaustive)."""
    res = search_irp(d, k, 2)
    if not res.complete:
        raise RuntimeError("period-2 search did not complete")
    return not res.orbits


# -------------------------------------------------------------- analysis

ONE_TWELFTH = Fraction(1, 12)
WINDOW = (Fraction(1, 4), Fraction(5, 12))


def _near_critical_length(x: Fraction) -> bool:
    return WINDOW[0] < x < WINDOW[1]


def _family_feasible(lo: Angle, span: Fraction, width: Fraction, orbit_vertices: list[list[Angle]]) -> bool:
    """Is there a critical chord ``(t, t + width)`` with both endpoints in the
    closed arc ``[lo, lo + span]`` that crosses no polygon of the orbit?"""
    room = span - width
    ts = {Fraction(0), room}
    for poly in orbit_vertices:
        for v in poly:
            for off in (arc_length(lo, v), arc_length(lo, v) - width):
                if 0 <= off <= room:
                    ts.add(off)
    ts = sorted(ts)
    ts += [(a + b) / 2 for a, b in zip(ts, ts[1:])]
    for off in ts:
        t = lo + off
        ok = True
        for poly in orbit_vertices:
            sides = {0 < arc_length(t, v) < width for v in poly if v != t % 1 and v != (t + width) % 1}
            if len(sides) > 1:
                ok = False
                break
        if ok:
            return True
    return False


@dataclass
class Approach:
    iterate: int
    sides: tuple[int, int]
    case: int  # 1: two different critical chords, 2: the same one
    longest: bool
    successor_ok: bool | None

    def to_dict(self) -> dict:
        return {
            "iterate": self.iterate,
            "sides": list(self.sides),
            "case": self.case,
            "longest": self.longest,
            "successor_ok": self.successor_ok,
        }


@dataclass
class OrbitAnalysis:
    orbit: PolygonOrbit
    no_fixed_length: bool
    reaches_critical: list[bool]
    equal_pairs: list[dict]
    approaches: list[Approach]
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def cases(self) -> set[int]:
        return {a.case for a in self.approaches}

    def to_dict(self) -> dict:
        return {
            "orbit": self.orbit.to_dict(),
            "no_fixed_length": self.no_fixed_length,
            "reaches_critical": self.reaches_critical,
            "equal_pairs": self.equal_pairs,
            "approaches": [a.to_dict() for a in self.approaches],
            "violations": self.violations,
        }


def _approach_families(orbit: PolygonOrbit, i: int) -> dict[int, set[tuple[int, int]]]:
    """Sides of ``P_i`` within 1/12 of an orbit-compatible critical chord,
    mapped to the chords (named by pocket side and width 1/3 or 2/3)."""
    k = orbit.k
    t = orbit.tracks[i]
    outer = [arc_length(t[j], t[(j + 1) % k]) for j in range(k)]
    polys = [list(P.vertices) for P in orbit.polygons]
    near: dict[int, set[tuple[int, int]]] = {}
    for y in range(k):
        for m in (1, 2):
            width = Fraction(m, 3)
            if outer[y] < width or not _family_feasible(t[y], outer[y], width, polys):
                continue
            for x in range(k):
                dist = outer[x] - width if x == y else (1 - outer[x]) - width
                if 0 <= dist < ONE_TWELFTH:
                    near.setdefault(x, set()).add((y, m))
    return near


def analyze_orbit_sigma3(orbit: PolygonOrbit) -> OrbitAnalysis:
    """Side-length and critical-approach facts along an identity-return
    orbit under ``sigma_3``."""
    if orbit.d != 3:
        raise ValueError("analysis is specific to sigma_3")
    if orbit.k < 3:
        raise ValueError("need a polygon with at least three sides")
    p, k = orbit.p, orbit.k
    lengths = orbit.side_lengths()
    violations = []

    fixed = {Fraction(1, 4), Fraction(1, 2)}
    no_fixed = not any(x in fixed for row in lengths for x in row)
    if not no_fixed:
        violations.append("a side has fixed length")

    reaches = [any(_near_critical_length(lengths[i][j]) for i in range(p)) for j in range(k)]
    for j, ok in enumerate(reaches):
        if not ok:
            violations.append(f"side {j} never comes within 1/12 of the critical length")

    fams = [_approach_families(orbit, i) for i in range(p)]

    equal_pairs = []
    for a, b in combinations(range(k), 2):
        if lengths[0][a] != lengths[0][b]:
            continue
        its = [i for i in range(p) if _near_critical_length(lengths[i][a]) and _near_critical_length(lengths[i][b])]
        straddle = [
            bool(fams[i].get(a)) and bool(fams[i].get(b)) and not (fams[i][a] & fams[i][b]) for i in its
        ]
        equal_pairs.append({"sides": [a, b], "iterates": its, "straddles_two_chords": straddle})
        if len(its) != 1:
            violations.append(f"equal sides {a},{b} are simultaneously near critical {len(its)} times")
        elif not straddle[0]:
            violations.append(f"equal sides {a},{b} do not straddle two critical chords")

    approaches = []
    for i in range(p):
        near = fams[i]
        if len(near) < 2:
            continue
        for a, b in combinations(sorted(near), 2):
            case = 2 if near[a] & near[b] else 1
            others = [j for j in range(k) if j not in (a, b)]
            longest = all(min(lengths[i][a], lengths[i][b]) > lengths[i][j] for j in others)
            nxt = lengths[(i + 1) % p]
            top = max(nxt)
            if case == 1:
                c = max(others, key=lambda j: lengths[i][j])
                successor = nxt[c] == top
            else:
                successor = nxt[a] == top or nxt[b] == top
            approaches.append(Approach(i, (a, b), case, longest, successor))
    if not approaches:
        violations.append("no iterate with two sides simultaneously near critical")
    for ap in approaches:
        if not ap.longest:
            violations.append(f"iterate {ap.iterate}: approaching sides {ap.sides} are not the longest")
        if not ap.successor_ok:
            violations.append(f"iterate {ap.iterate}: longest-side successor rule fails (case {ap.case})")
    return OrbitAnalysis(orbit, no_fixed, reaches, equal_pairs, approaches, violations)
