"""Exact arithmetic on the circle R/Z.

Angles are :class:`fractions.Fraction` values reduced into ``[0, 1)``; the
unit is one full turn.  Everything here is exact, so crossing and ordering
predicates built on top never suffer from rounding.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Angle = Fraction

__all__ = [
    "Angle",
    "Itinerary",
    "angle",
    "arc_length",
    "format_angle",
    "format_fraction",
    "in_arc",
    "itinerary",
    "itinerary_of",
    "parse_fraction",
    "periodic_point",
    "sigma",
    "sigma_iter",
]


def angle(num, den: int = 1) -> Angle:
    """Return the reduced representative of ``num/den`` modulo 1."""
    if den == 0:
        raise ZeroDivisionError("angle denominator must be nonzero")
    return Fraction(num, den) % 1


def sigma(d: int, a: Angle) -> Angle:
    """The angle-multiplication map ``t -> d*t mod 1``."""
    return (d * a) % 1


def sigma_iter(d: int, a: Angle, n: int) -> Angle:
    # d**n * a mod 1 in one step; exact, so identical to n applications
    return (d**n * a) % 1


def itinerary(d: int, a: Angle, length: int) -> list[int]:
    """First ``length`` symbols of the d-nary itinerary of ``a``.

    Symbol ``k`` marks the half-open sector ``[k/d, (k+1)/d)``.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    digits = []
    x = Fraction(a) % 1
    for _ in range(length):
        digits.append(int(x * d))
        x = sigma(d, x)
    return digits


def periodic_point(d: int, digits: Sequence[int]) -> Angle:
    """The point of ``sigma_d`` whose itinerary repeats ``digits`` forever.

    This is ``N / (d**p - 1)`` with ``N`` the digits read in base ``d``.
    """
    if not digits:
        raise ValueError("digit string must be nonempty")
    n = 0
    for t in digits:
        if not 0 <= t < d:
            raise ValueError(f"digit {t} out of range for base {d}")
        n = n * d + t
    return Fraction(n, d ** len(digits) - 1) % 1


def arc_length(start: Angle, end: Angle) -> Fraction:
    """Length of the counterclockwise arc from ``start`` to ``end``."""
    return (Fraction(end) - Fraction(start)) % 1


def in_arc(a: Angle, start: Angle, end: Angle) -> bool:
    """Membership of ``a`` in the open counterclockwise arc ``(start, end)``."""
    t = arc_length(start, a)
    return 0 < t < arc_length(start, end)


def in_closed_arc(a: Angle, start: Angle, end: Angle) -> bool:
    return arc_length(start, a) <= arc_length(start, end)


def format_fraction(x: Fraction) -> str:
    """``str(Fraction)``: ``"0"``, ``"1/2"``, ... (used for lengths)."""
    return str(Fraction(x))


def format_angle(a: Angle) -> str:
    a = Fraction(a)
    return f"{a.numerator}/{a.denominator}"


def parse_fraction(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty fraction")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed fraction {text!r}") from exc


def _primitive_root(word: tuple[int, ...]) -> tuple[int, ...]:
    n = len(word)
    for q in range(1, n + 1):
        if n % q == 0 and word[:q] * (n // q) == word:
            return word[:q]
    return word


@dataclass(frozen=True)
class Itinerary:
    """An eventually periodic symbol sequence ``preperiod (period)^inf``.

    Stored literally; :meth:`canonical` is the only place where a period
    is shortened or a preperiod absorbed.
    """

    base: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be >= 2")
        if not self.period:
            raise ValueError("period must be nonempty")
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        for t in self.preperiod + self.period:
            if not 0 <= t < self.base:
                raise ValueError(f"digit {t} out of range for base {self.base}")

    def canonical(self) -> "Itinerary":
        period = _primitive_root(self.period)
        pre = list(self.preperiod)
        # rotate trailing preperiod symbols into the cycle
        while pre and pre[-1] == period[-1]:
            pre.pop()
            period = (period[-1],) + period[:-1]
        return Itinerary(self.base, tuple(pre), period)

    def digits(self, length: int) -> list[int]:
        out = list(self.preperiod[:length])
        while len(out) < length:
            out.extend(self.period)
        return out[:length]

    def angle(self) -> Angle:
        x = periodic_point(self.base, self.period)
        for t in reversed(self.preperiod):
            x = (Fraction(t) + x) / self.base
        return x % 1

    def __str__(self) -> str:
        sep = "" if self.base <= 10 else ","
        pre = sep.join(map(str, self.preperiod))
        per = sep.join(map(str, self.period))
        if pre and sep:
            pre += sep
        return f"{pre}({per})"

    @classmethod
    def parse(cls, base: int, text: str) -> "Itinerary":
        text = text.strip()
        if not (text.endswith(")") and "(" in text):
            raise ValueError(f"itinerary must look like 'pre(period)': {text!r}")
        pre, per = text[:-1].split("(", 1)

        def symbols(s: str) -> tuple[int, ...]:
            s = s.strip(",")
            if not s:
                return ()
            if "," in s or base > 10:
                return tuple(int(t) for t in s.split(","))
            return tuple(int(t) for t in s)

        return cls(base, symbols(pre), symbols(per))


def itinerary_of(d: int, a: Angle) -> Itinerary:
    """Exact itinerary of a rational angle (always eventually periodic)."""
    seen: dict[Fraction, int] = {}
    digits: list[int] = []
    x = Fraction(a) % 1
    while x not in seen:
        seen[x] = len(digits)
        digits.append(int(x * d))
        x = sigma(d, x)
    j = seen[x]
    return Itinerary(d, tuple(digits[:j]), tuple(digits[j:]))


def orbit(d: int, a: Angle) -> tuple[list[Angle], int]:
    """Forward orbit up to the first repeat, and the index where the cycle starts."""
    seen: dict[Fraction, int] = {}
    points: list[Angle] = []
    x = Fraction(a) % 1
    while x not in seen:
        seen[x] = len(points)
        points.append(x)
        x = sigma(d, x)
    return points, seen[x]


def exact_period(d: int, a: Angle) -> int | None:
    """Least ``p >= 1`` with ``sigma_d^p(a) == a``, or None if ``a`` is not periodic."""
    points, start = orbit(d, a)
    if start != 0:
        return None
    return len(points)


def sorted_ccw(points: Iterable[Angle], start: Angle = Fraction(0)) -> list[Angle]:
    return sorted(points, key=lambda t: arc_length(start, t))
