"""Walk through the sibling collections over one image leaf.

For each collection we print the regions, their C/R kind, the dual tree and
whether a central strip exists, then count rotation classes.
"""
from fractions import Fraction as F

from lamkit.chords import Chord
from lamkit.portraits import build_portrait, central_strip, enumerate_sibling_collections
from lamkit.trees import canonical_code, census_crosscheck, dual_tree

d = 3
image = Chord(F(1, 8), F(3, 8))
colls = enumerate_sibling_collections(d, image)
print(f"{len(colls)} sibling collections of degree {d} over {image}")

for c in colls:
    p = build_portrait(c)
    strip = central_strip(p)
    kinds = "".join(r.kind for r in p.regions)
    degrees = [r.degree for r in p.regions]
    print(f"  leaves {', '.join(map(str, c.leaves))}")
    print(f"    regions {kinds} with degrees {degrees}, strip: {'yes' if strip else 'no'}")
    print(f"    dual tree colors {dual_tree(p).colors}, class {canonical_code(c.match)}")

rep = census_crosscheck(d, image)
print(f"rotation classes {rep.classes}, of which {rep.with_strip} have a central strip")
