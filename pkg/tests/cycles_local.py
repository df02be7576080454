"""Builders for small cycles shared by the tests."""
import itertools
import random
from fractions import Fraction

from tropgw.tropfan import MaxFunction, Polyhedron, WeightedComplex, divisor, refine


def fan(ambient, dim, cones):
    """cones: list of (rays, weight) with the origin as apex."""
    origin = (0,) * ambient
    return WeightedComplex(ambient, dim, {Polyhedron([origin], rays): w for rays, w in cones})


def line_fan(weights=(1, 1, 1)):
    return fan(2, 1, [([(1, 1)], weights[0]), ([(-1, 0)], weights[1]), ([(0, -1)], weights[2])])


def poly(n, d, rng, lo=-30, hi=30):
    mons = [m for m in itertools.product(range(d + 1), repeat=n) if sum(m) <= d]
    return MaxFunction.tropical_max(n, [(Fraction(rng.randint(lo, hi), rng.randint(1, 5)), m) for m in mons])


def curve(d, rng):
    return divisor(poly(2, d, rng), WeightedComplex.space(2))


def make_vertex(x, p):
    """Refine x so that the point p is a cell."""
    for i in range(x.ambient):
        cov = [int(j == i) for j in range(x.ambient)]
        x = refine(x, MaxFunction.tropical_max(x.ambient, [(0, cov), (p[i], [0] * x.ambient)]))
    return x


def random_vector(rng, n):
    return tuple(Fraction(rng.randint(-999, 999), rng.randint(1, 97)) for _ in range(n))
