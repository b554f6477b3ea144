"""Short leaves grow under the length map until they get long.

Follows a few leaves forward, showing their lengths and how close each
iterate comes to a critical chord, then runs the strip check on a sample.
"""
from fractions import Fraction as F

from lamkit.chords import Chord, tau, tau_fixed_points
from lamkit.strips import csl_sweep, leaf_growth, leaf_orbit

for d in (2, 3):
    print(f"d={d}: fixed lengths {[str(x) for x in tau_fixed_points(d)]}")
    for x in (F(1, 100), F(1, 37), F(2, 9)):
        print(f"  length {x} reaches >= 1/(d+1) after {leaf_growth(d, x)} steps, next {tau(d, x)}")

trace = leaf_orbit(2, Chord(F(1, 7), F(2, 7)))
print("orbit of 1/7-2/7 under doubling:", ", ".join(str(c) for c in trace.chords))
print("lengths:", ", ".join(str(x) for x in trace.lengths))

s = csl_sweep(2, denominator_max=60)
print(f"sweep d=2 up to denominator 60: {s.strips} strips, {s.passed} pass, "
      f"{s.same_component} one-component reentries, {s.witnesses_valid} with witnesses")
