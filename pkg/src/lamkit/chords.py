"""Chords of the closed disk: lengths, the leaf-length map, crossings and
the endpoint metric."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .angles import Angle, arc_length, format_angle, in_arc, parse_fraction, sigma

HALF = Fraction(1, 2)

__all__ = [
    "Chord",
    "CriticalChord",
    "CrossingChordsError",
    "chord",
    "crosses",
    "distance_to_nearest_critical",
    "endpoint_distance",
    "is_critical",
    "leaf_length",
    "nearest_critical_chord",
    "parse_chord",
    "tau",
    "tau_fixed_points",
]


class CrossingChordsError(ValueError):
    """The endpoint metric is only defined between non-crossing chords."""


@dataclass(frozen=True, order=True)
class Chord:
    """Unordered pair of circle points, stored with ``a <= b``."""

    a: Angle
    b: Angle

    def __post_init__(self):
        a, b = Fraction(self.a) % 1, Fraction(self.b) % 1
        if b < a:
            a, b = b, a
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def degenerate(self) -> bool:
        return self.a == self.b

    @property
    def endpoints(self) -> tuple[Angle, Angle]:
        return (self.a, self.b)

    @property
    def length(self) -> Fraction:
        return leaf_length(self)

    def image(self, d: int) -> "Chord":
        return Chord(sigma(d, self.a), sigma(d, self.b))

    def __str__(self) -> str:
        return f"{format_angle(self.a)}-{format_angle(self.b)}"


def chord(a, b) -> Chord:
    return Chord(Fraction(a), Fraction(b))


def parse_chord(text: str) -> Chord:
    """Parse ``"a-b"`` (an en dash is accepted too)."""
    parts = text.replace("–", "-").split("-")
    if len(parts) != 2:
        raise ValueError(f"chord must look like 'a-b': {text!r}")
    return Chord(parse_fraction(parts[0]), parse_fraction(parts[1]))


@dataclass(frozen=True)
class CriticalChord:
    chord: Chord
    displacement: int  # b - a == displacement/d (mod 1), measured from chord.a

    @classmethod
    def at(cls, d: int, start: Angle, k: int) -> "CriticalChord":
        if not 1 <= k <= d - 1:
            raise ValueError("displacement must lie in 1..d-1")
        ch = Chord(start, Fraction(start) + Fraction(k, d))
        k_from_a = int(arc_length(ch.a, ch.b) * d)
        return cls(ch, k_from_a)


def leaf_length(ch: Chord) -> Fraction:
    s = arc_length(ch.a, ch.b)
    return min(s, 1 - s)


def tau(d: int, x: Fraction) -> Fraction:
    """Length of the image of a leaf of length ``x`` under ``sigma_d``."""
    x = Fraction(x)
    if not 0 <= x <= HALF:
        raise ValueError(f"leaf length {x} outside [0, 1/2]")
    y = (d * x) % 1
    return min(y, 1 - y)


def tau_fixed_points(d: int) -> list[Fraction]:
    pts = {Fraction(0)}
    for q in (d + 1, d - 1):
        j = 1
        while Fraction(j, q) <= HALF:
            pts.add(Fraction(j, q))
            j += 1
    return sorted(pts)


def crosses(c1: Chord, c2: Chord) -> bool:
    """True iff the chords are linked on the circle (shared endpoints never cross)."""
    if c1.degenerate or c2.degenerate:
        return False
    if {c1.a, c1.b} & {c2.a, c2.b}:
        return False
    return in_arc(c2.a, c1.a, c1.b) != in_arc(c2.b, c1.a, c1.b)


def _nested_orientation(outer: Chord, inner: Chord) -> tuple[Angle, Angle] | None:
    """Orientation ``(x1, y1)`` of ``outer`` whose closed ccw arc holds ``inner``."""
    for x1, y1 in ((outer.a, outer.b), (outer.b, outer.a)):
        span = arc_length(x1, y1)
        if all(arc_length(x1, t) <= span for t in inner.endpoints):
            return x1, y1
    return None


def endpoint_distance(c1: Chord, c2: Chord) -> Fraction:
    """Endpoint distance between two non-crossing, non-degenerate chords."""
    if c1 == c2:
        return Fraction(0)
    if c1.degenerate or c2.degenerate:
        raise ValueError("endpoint distance is not defined for degenerate chords")
    if crosses(c1, c2):
        raise CrossingChordsError(f"{c1} and {c2} cross")
    x1, y1 = _nested_orientation(c1, c2)
    p, q = c2.endpoints
    if arc_length(x1, q) < arc_length(x1, p):
        p, q = q, p
    # a shared endpoint equal to y1 must play the role of y2
    if p == y1:
        p, q = q, p
    return arc_length(x1, p) + arc_length(q, y1)


def is_critical(d: int, ch: Chord) -> bool:
    return ch.a != ch.b and sigma(d, ch.a) == sigma(d, ch.b)


def distance_to_nearest_critical(d: int, ch: Chord) -> Fraction:
    """Endpoint distance from ``ch`` to the closest non-crossing critical chord."""
    if ch.degenerate:
        raise ValueError("degenerate chord")
    s = arc_length(ch.a, ch.b)
    return min(abs(side - Fraction(k, d)) for k in range(1, d) for side in (s, 1 - s))


def nearest_critical_chord(d: int, ch: Chord, where: str = "start") -> tuple[CriticalChord, Fraction]:
    """A critical chord realizing :func:`distance_to_nearest_critical`.

    ``where`` picks the placement inside the family of equally distant
    chords: ``"start"`` shares the first endpoint of the nesting arc,
    ``"end"`` the last, ``"middle"`` splits the gap evenly.
    """
    best = None
    for x1, y1 in ((ch.a, ch.b), (ch.b, ch.a)):
        s = arc_length(x1, y1)
        for k in range(1, d):
            gap = s - Fraction(k, d)
            if gap >= 0:
                # critical chord nested inside the arc (x1, y1)
                offset = {"start": Fraction(0), "end": gap, "middle": gap / 2}[where]
                cand = (gap, x1 + offset, k)
            else:
                # the arc (x1, y1) is nested inside the critical chord
                offset = {"start": Fraction(0), "end": -gap, "middle": -gap / 2}[where]
                cand = (-gap, x1 - offset, k)
            if best is None or cand[0] < best[0]:
                best = cand
    gap, start, k = best
    return CriticalChord.at(d, start % 1, k), gap
