"""Leaf orbits and exact checks of the central-strip statements on them.

Rational leaves have eventually periodic orbits, so an orbit is followed
until its first repeated chord; a check that survives the whole cycle is
complete.  Otherwise the run stops at ``max_iters`` and says so.
"""
from __future__ import annotations

import random
from math import lcm
from dataclasses import dataclass, field
from fractions import Fraction

from .angles import arc_length, format_fraction
from .chords import (
    Chord,
    crosses,
    distance_to_nearest_critical,
    endpoint_distance,
    is_critical,
    leaf_length,
    nearest_critical_chord,
    tau,
    tau_fixed_points,
)
from .portraits import (
    CentralStrip,
    SiblingCollection,
    build_portrait,
    central_strip,
    enumerate_sibling_collections,
)

__all__ = [
    "CSLReport",
    "ClosestCriticalResult",
    "OrbitTrace",
    "Reentry",
    "UnicriticalReport",
    "closest_critical_sweep",
    "csl_sweep",
    "leaf_growth",
    "leaf_orbit",
    "verify_csl",
    "verify_unicritical",
]

DEFAULT_MAX_ITERS = 4096

PASS, FAIL, INAPPLICABLE = "PASS", "FAIL", "INAPPLICABLE"
COMPLETE, TRUNCATED = "COMPLETE", "TRUNCATED"


@dataclass
class OrbitTrace:
    d: int
    chords: list[Chord]
    cycle_start: int | None  # index the final chord returns to; None if cut off

    @property
    def complete(self) -> bool:
        return self.cycle_start is not None

    @property
    def lengths(self) -> list[Fraction]:
        return [leaf_length(c) for c in self.chords]

    @property
    def critical_distances(self) -> list[Fraction | None]:
        return [None if c.degenerate else distance_to_nearest_critical(self.d, c) for c in self.chords]


def leaf_orbit(d: int, ch: Chord, max_iters: int = DEFAULT_MAX_ITERS) -> OrbitTrace:
    """``ch, sigma_d(ch), ...`` up to (not including) the first repeat."""
    seen = {ch: 0}
    chords = [ch]
    while len(chords) <= max_iters:
        nxt = chords[-1].image(d)
        if nxt in seen:
            return OrbitTrace(d, chords, seen[nxt])
        seen[nxt] = len(chords)
        chords.append(nxt)
    return OrbitTrace(d, chords, None)


def leaf_growth(d: int, x: Fraction) -> int:
    """First ``i`` with ``tau_d^i(x) >= 1/(d+1)`` for a short starting length."""
    x = Fraction(x)
    bound = Fraction(1, d + 1)
    if not 0 < x < bound:
        raise ValueError(f"length {x} not in (0, 1/(d+1))")
    i = 0
    while x < bound:
        nxt = tau(d, x)
        if nxt <= x:
            raise AssertionError(f"length failed to grow at step {i}: {x} -> {nxt}")
        x, i = nxt, i + 1
    return i


@dataclass
class Witness:
    k: int
    j: int
    critical: Chord
    bound: Fraction
    achieved: Fraction
    outside_strip: bool

    @property
    def valid(self) -> bool:
        return self.outside_strip and self.achieved <= self.bound

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "j": self.j,
            "D": str(self.critical),
            "bound": format_fraction(self.bound),
            "achieved": format_fraction(self.achieved),
            "outside_strip": self.outside_strip,
            "valid": self.valid,
        }


@dataclass
class Reentry:
    j: int
    components: tuple[int, int]

    @property
    def same_component(self) -> bool:
        return self.components[0] == self.components[1]


def _inside(strip: CentralStrip, ch: Chord) -> tuple[int, int] | None:
    ca, cb = strip.component_of(ch.a), strip.component_of(ch.b)
    if ca is None or cb is None:
        return None
    return (ca, cb)


def _crosses_any(ch: Chord, leaves) -> bool:
    return any(crosses(ch, b) for b in leaves)


def _contained_in_strip(strip: CentralStrip, ch: Chord) -> bool:
    """A chord lies in the closed strip iff both ends are on one C-region."""
    return any(r.contains_point(ch.a) and r.contains_point(ch.b) for r in strip.components)


def _critical_candidates(d: int, lk: Chord, bound: Fraction, strip: CentralStrip):
    """Critical chords within ``bound`` of ``lk`` (endpoint metric), sampled at
    every offset where an endpoint meets a strip arc end, plus the extremes
    and midpoints of each family."""
    ends = sorted({t for a, b in strip.arcs for t in (a, b)})
    for x1, y1 in ((lk.a, lk.b), (lk.b, lk.a)):
        s = arc_length(x1, y1)
        for m in range(1, d):
            w = Fraction(m, d)
            gap = s - w
            if abs(gap) > bound:
                continue
            # nested inside (x1, y1): start in [x1, x1 + gap]; enclosing: [x1 + gap, x1]
            lo, span = (x1, gap) if gap >= 0 else (x1 + gap, -gap)
            offs = {Fraction(0), span, span / 2}
            for t in ends:
                for o in (arc_length(lo, t), arc_length(lo, t - w)):
                    if o <= span:
                        offs.add(o)
            offs = sorted(offs)
            offs += [(a + b) / 2 for a, b in zip(offs, offs[1:])]
            for o in offs:
                yield Chord(lo + o, lo + o + w)


def _part3_witness(d: int, strip: CentralStrip, chords: list[Chord], j: int) -> Witness | None:
    """Latest ``k < j`` with a critical chord not contained in the strip
    within ``eta / d**(j-k)`` of ``chords[k]``.

    Falls back to the closest critical chord at the latest qualifying ``k``
    (reported with ``outside_strip`` False) when every such chord lies in
    the strip.
    """
    fallback = None
    for k in range(j - 1, -1, -1):
        lk = chords[k]
        if lk.degenerate:
            continue
        bound = strip.eta / d ** (j - k)
        if distance_to_nearest_critical(d, lk) > bound:
            continue
        for D in _critical_candidates(d, lk, bound, strip):
            if crosses(lk, D):
                continue
            dist = endpoint_distance(lk, D)
            if dist <= bound and not _contained_in_strip(strip, D):
                assert is_critical(d, D)
                return Witness(k, j, D, bound, dist, True)
        if fallback is None:
            crit, _ = nearest_critical_chord(d, lk, "middle")
            fallback = Witness(k, j, crit.chord, bound, endpoint_distance(lk, crit.chord), False)
    return fallback


@dataclass
class LeafCheck:
    leaf: Chord
    reentries: list[Reentry]
    part1: bool
    part2: bool
    witnesses: list[Witness]
    missing_witness: list[int]
    crossing_iterates: list[int]
    length_identity: bool
    later_same_component: list[int] = field(default_factory=list)

    @property
    def first_reentry(self) -> Reentry | None:
        return self.reentries[0] if self.reentries else None

    @property
    def ok(self) -> bool:
        return self.part1 and self.part2 and not self.missing_witness and self.length_identity

    def to_dict(self) -> dict:
        return {
            "leaf": str(self.leaf),
            "part1": self.part1,
            "part2": self.part2,
            "reentries": [
                {"j": r.j, "components": list(r.components), "same_component": r.same_component}
                for r in self.reentries
            ],
            "witnesses": [w.to_dict() for w in self.witnesses],
            "missing_witness": self.missing_witness,
            "crossing_iterates": self.crossing_iterates,
            "length_identity": self.length_identity,
            "later_same_component": self.later_same_component,
        }


@dataclass
class CSLReport:
    d: int
    verdict: str
    completeness: str | None = None
    reason: str = ""
    strip: CentralStrip | None = None
    eta: Fraction | None = None
    eta_bound_holds: bool | None = None
    leaves: list[LeafCheck] = field(default_factory=list)
    iterations: int = 0

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "verdict": self.verdict,
            "completeness": self.completeness,
            "reason": self.reason,
            "eta": None if self.eta is None else format_fraction(self.eta),
            "eta_bound_holds": self.eta_bound_holds,
            "strip_degree": None if self.strip is None else self.strip.degree,
            "iterations": self.iterations,
            "leaves": [lc.to_dict() for lc in self.leaves],
        }


class _Frame:
    """Circle points as integers over a common denominator ``n``."""

    def __init__(self, points):
        n = 1
        for t in points:
            n = lcm(n, Fraction(t).denominator)
        self.n = n

    def __call__(self, t: Fraction) -> int:
        return t.numerator * (self.n // t.denominator)

    def component(self, arcs, t: int) -> int | None:
        n = self.n
        for i, (a, b) in enumerate(arcs):
            if (t - a) % n <= (b - a) % n:
                return i
        return None

    def crosses(self, c, e) -> bool:
        (p, q), (u, v) = c, e
        if p == q or u == v or p in e or q in e:
            return False
        n = self.n
        span = (q - p) % n
        return (0 < (u - p) % n < span) != (0 < (v - p) % n < span)


def _check_leaf(d: int, strip: CentralStrip, leaf: Chord, tail: OrbitTrace,
                frame: _Frame | None = None) -> LeafCheck:
    chords = [leaf] + tail.chords
    if frame is None:
        frame = _Frame([t for c in chords for t in c.endpoints]
                       + [t for arc in strip.arcs for t in arc])
    arcs = [(frame(a), frame(b)) for a, b in strip.arcs]
    boundary = [(frame(b.a), frame(b.b)) for b in strip.boundary_leaves]
    reentries, crossing = [], []
    for j in range(1, len(chords)):
        c = (frame(chords[j].a), frame(chords[j].b))
        ca, cb = frame.component(arcs, c[0]), frame.component(arcs, c[1])
        if ca is not None and cb is not None:
            reentries.append(Reentry(j, (ca, cb)))
        elif any(frame.crosses(c, e) for e in boundary):
            crossing.append(j)
    part1 = not any(r.j == 1 for r in reentries)
    part2 = not any(r.j == 2 and r.same_component for r in reentries)
    # the third statement speaks about the first reentry only; later
    # one-component reentries are listed but need no witness
    witnesses, missing, later = [], [], []
    for n, r in enumerate(reentries):
        if not r.same_component or r.j <= 1:
            continue
        if n > 0:
            later.append(r.j)
            continue
        w = _part3_witness(d, strip, chords, r.j)
        if w is None or not w.valid:
            missing.append(r.j)
        if w is not None:
            witnesses.append(w)
    length_identity = leaf_length(chords[1]) == d * strip.eta
    return LeafCheck(leaf, reentries, part1, part2, witnesses, missing, crossing, length_identity, later)


def verify_csl(d: int, coll: SiblingCollection, max_iters: int = DEFAULT_MAX_ITERS) -> CSLReport:
    """Check the three central-strip statements along the orbit of every
    boundary leaf of the strip of ``coll``.

    Reentry means the whole chord lies in the closed strip (both endpoints
    on its closed short arcs).  Iterates that merely cross a boundary leaf
    of the strip are recorded separately; such an orbit cannot live in a
    lamination together with the collection.
    """
    strip = central_strip(build_portrait(coll))
    if strip is None:
        return CSLReport(d, INAPPLICABLE, reason="empty central strip")
    report = CSLReport(d, INAPPLICABLE, strip=strip, eta=strip.eta)
    report.eta_bound_holds = strip.eta < Fraction(1, d * (d + 1))
    tail = leaf_orbit(d, coll.image, max_iters)
    report.iterations = len(tail.chords)
    report.completeness = COMPLETE if tail.complete else TRUNCATED
    frame = _Frame(list(coll.points) + [t for c in tail.chords for t in c.endpoints])
    report.leaves = [_check_leaf(d, strip, leaf, tail, frame) for leaf in strip.boundary_leaves]
    if strip.long_arc <= Fraction(1, d + 1):
        report.reason = "long arc length is not > 1/(d+1)"
        return report
    ok = report.eta_bound_holds and all(lc.ok for lc in report.leaves)
    report.verdict = PASS if ok else FAIL
    return report


def orbit_is_laminational(chords: list[Chord], fixed_leaves) -> bool:
    """No two orbit leaves cross, and none crosses a leaf of ``fixed_leaves``."""
    uniq = list(dict.fromkeys(c for c in chords if not c.degenerate))
    for i, c in enumerate(uniq):
        if _crosses_any(c, fixed_leaves):
            return False
        for other in uniq[i + 1:]:
            if crosses(c, other):
                return False
    return True


@dataclass
class UnicriticalReport:
    d: int
    verdict: str
    completeness: str | None = None
    reason: str = ""
    same_component_reentries: list[tuple[str, int]] = field(default_factory=list)
    iterations: int = 0

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "verdict": self.verdict,
            "completeness": self.completeness,
            "reason": self.reason,
            "same_component_reentries": [list(x) for x in self.same_component_reentries],
            "iterations": self.iterations,
        }


def verify_unicritical(d: int, coll: SiblingCollection, max_iters: int = DEFAULT_MAX_ITERS) -> UnicriticalReport:
    """No iterate of a boundary leaf of a degree-``d`` strip comes back
    with both endpoints in one short arc of the strip."""
    strip = central_strip(build_portrait(coll))
    if strip is None or strip.degree != d:
        return UnicriticalReport(d, INAPPLICABLE, reason="central strip degree is not d")
    tail = leaf_orbit(d, coll.image, max_iters)
    report = UnicriticalReport(d, INAPPLICABLE, iterations=len(tail.chords))
    report.completeness = COMPLETE if tail.complete else TRUNCATED
    if not orbit_is_laminational(tail.chords, coll.leaves):
        report.reason = "orbit crosses itself or the sibling leaves"
        return report
    for leaf in strip.boundary_leaves:
        chords = [leaf] + tail.chords
        for j in range(1, len(chords)):
            comps = _inside(strip, chords[j])
            if comps is not None and comps[0] == comps[1]:
                report.same_component_reentries.append((str(leaf), j))
    report.verdict = FAIL if report.same_component_reentries else PASS
    return report


@dataclass
class ClosestCriticalResult:
    status: str  # REACHED | EXCLUDED | NOT_REACHED | TRUNCATED
    index: int | None
    value: Fraction | None
    lengths: list[Fraction]


def closest_critical_sweep(x: Fraction, max_iters: int = DEFAULT_MAX_ITERS) -> ClosestCriticalResult:
    """First ``i`` with ``1/4 < tau_3^i(x) < 5/12`` (within 1/12 of the critical length)."""
    x = Fraction(x)
    lo, hi = Fraction(1, 4), Fraction(5, 12)
    fixed = set(tau_fixed_points(3))
    lengths, seen = [], set()
    while x not in seen and len(lengths) <= max_iters:
        seen.add(x)
        lengths.append(x)
        x = tau(3, x)
    if any(v in fixed for v in lengths):
        return ClosestCriticalResult("EXCLUDED", None, None, lengths)
    for i, v in enumerate(lengths):
        if lo < v < hi:
            return ClosestCriticalResult("REACHED", i, v, lengths)
    status = "NOT_REACHED" if x in seen else "TRUNCATED"
    return ClosestCriticalResult(status, None, None, lengths)


def sample_images(d: int, denominator_max: int, per_denominator: int, seed: int) -> list[Chord]:
    """Image leaves with denominators <= ``denominator_max`` and length < 1/(d+1).

    Short images are exactly those whose strips have long arc > 1/(d+1).
    """
    rng = random.Random(seed)
    bound = Fraction(1, d + 1)
    out = set()
    for q in range(2, denominator_max + 1):
        top = (q - 1) // (d + 1)  # numerators s with s/q < 1/(d+1)
        if top < 1:
            continue
        for _ in range(per_denominator):
            a = rng.randrange(q)
            s = rng.randint(1, top)
            ch = Chord(Fraction(a, q), Fraction(a + s, q))
            if 0 < ch.length < bound:
                out.add(ch)
    return sorted(out)


@dataclass
class SweepSummary:
    d: int
    images: int = 0
    strips: int = 0
    passed: int = 0
    truncated: int = 0
    reentries: int = 0
    same_component: int = 0  # first reentries landing in one component
    later_same_component: int = 0
    witnesses_valid: int = 0
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in (
            "d", "images", "strips", "passed", "truncated", "reentries",
            "same_component", "later_same_component", "witnesses_valid", "counterexamples")} | {"ok": self.ok}


def csl_sweep(d: int, denominator_max: int = 200, per_denominator: int = 4, seed: int = 0,
              max_iters: int = DEFAULT_MAX_ITERS) -> SweepSummary:
    summary = SweepSummary(d)
    for image in sample_images(d, denominator_max, per_denominator, seed):
        summary.images += 1
        for coll in enumerate_sibling_collections(d, image):
            rep = verify_csl(d, coll, max_iters)
            if rep.strip is None:
                continue
            summary.strips += 1
            if rep.completeness == TRUNCATED:
                summary.truncated += 1
            for lc in rep.leaves:
                summary.reentries += len(lc.reentries)
                first = lc.first_reentry
                summary.same_component += bool(first and first.same_component and first.j > 1)
                summary.later_same_component += len(lc.later_same_component)
                summary.witnesses_valid += sum(w.valid for w in lc.witnesses)
            if rep.verdict == PASS:
                summary.passed += 1
            else:
                summary.counterexamples.append({"image": str(image), **rep.to_dict()})
    return summary
