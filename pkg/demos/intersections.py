"""Stable intersections of tropical plane curves and line covers.

    python3 demos/intersections.py
"""
import random
from fractions import Fraction
from math import factorial

from tropgw import GWEngine, diagonal_intersection, parse_key
from tropgw.suites import random_hypersurface

rng = random.Random(1)
for d, e in [(1, 1), (1, 2), (2, 2), (2, 3)]:
    c, c2 = random_hypersurface(2, d, rng), random_hypersurface(2, e, rng)
    x = diagonal_intersection(c, c2)
    print("C_%d . C_%d: %d points, degree %s" % (d, e, len(x.weights), x.degree()))

print("\ncovers of the line with simple ramification")
engine = GWEngine("R1")
for d in range(1, 5):
    key = parse_key("R1", str(d), "tau1(pt)^%d" % (2 * d - 2) if d > 1 else "-")
    v = engine.unlabelled(key)
    print("  d=%d  <tau1(pt)^%d> = %-6s  Hurwitz check %s" % (d, 2 * d - 2, v,
          Fraction(factorial(2 * d - 2) * Fraction(d) ** (d - 3), factorial(d)) == v))
