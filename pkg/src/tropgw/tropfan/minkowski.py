"""Minkowski weights on complete simplicial fans and their cup product."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from ..exactlin import INFINITE, Sublattice, det, index_of_sum, primitive_integer, rank
from .complex import WeightedComplex
from .operations import check_balanced, random_rational_vector
from .polyhedron import Polyhedron

__all__ = ["MinkowskiWeight", "SimplicialFan", "fan_displacement_product", "generic_displacement"]


@dataclass(frozen=True)
class SimplicialFan:
    """Simplicial fan in R^r given by primitive rays and maximal cones (ray index tuples)."""

    rays: tuple[tuple[int, ...], ...]
    maximal: tuple[tuple[int, ...], ...]
    _cones: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @classmethod
    def from_rays_2d(cls, rays: Iterable[Sequence[int]]) -> "SimplicialFan":
        """Complete fan in R^2 whose two-dimensional cones sit between consecutive rays."""
        rs = sorted({primitive_integer(r) for r in rays}, key=cmp_to_key(_angle_cmp))
        k = len(rs)
        cones = tuple(tuple(sorted((i, (i + 1) % k))) for i in range(k))
        return cls(tuple(rs), cones)

    @property
    def ambient(self) -> int:
        return len(self.rays[0])

    def cones(self, dim: int) -> list[tuple[int, ...]]:
        if dim not in self._cones:
            out = set()
            for m in self.maximal:
                for c in combinations(m, dim):
                    out.add(tuple(sorted(c)))
            self._cones[dim] = sorted(out)
        return self._cones[dim]

    def polyhedron(self, cone: Sequence[int]) -> Polyhedron:
        return Polyhedron([(0,) * self.ambient], [self.rays[i] for i in cone], minimal=True)

    def cone_of(self, poly: Polyhedron) -> tuple[int, ...]:
        if not poly.is_cone() or poly.lineality:
            raise ValueError("not a cone of the fan")
        idx = tuple(sorted(self.rays.index(r) for r in poly.rays))
        if idx not in self.cones(len(idx)):
            raise ValueError("not a cone of the fan")
        return idx

    def fundamental(self) -> "MinkowskiWeight":
        return MinkowskiWeight(self, 0, {c: 1 for c in self.cones(self.ambient)})

    def is_complete(self) -> bool:
        r = self.ambient
        top = self.cones(r)
        if any(rank([self.rays[i] for i in c]) != r for c in top):
            return False
        if check_balanced(self.fundamental().to_cycle()):
            return False
        rng = random.Random(1)
        for _ in range(3):
            v = random_rational_vector(rng, r)
            hits = sum(1 for c in top if self.polyhedron(c).contains_point(v))
            if hits != 1:
                return False
        return True

    def is_strongly_unimodular(self) -> bool:
        for a, b in combinations(self.rays, 2):
            if len(a) == 2 and det([a, b]) not in (0, 1, -1):
                return False
        return True


@dataclass
class MinkowskiWeight:
    """Integer weights on the cones of codimension ``codim`` of a simplicial fan."""

    fan: SimplicialFan
    codim: int
    values: dict

    def __post_init__(self):
        self.values = {tuple(sorted(c)): int(v) for c, v in self.values.items() if v}

    @property
    def dim(self) -> int:
        return self.fan.ambient - self.codim

    def to_cycle(self) -> WeightedComplex:
        return WeightedComplex(self.fan.ambient, self.dim,
                               {self.fan.polyhedron(c): w for c, w in self.values.items()})

    @classmethod
    def from_cycle(cls, fan: SimplicialFan, x: WeightedComplex) -> "MinkowskiWeight":
        vals = {}
        for p, w in x.weights.items():
            if w.denominator != 1:
                raise ValueError("non-integral weight")
            vals[fan.cone_of(p)] = int(w)
        return cls(fan, fan.ambient - x.dim, vals)

    def is_balanced(self) -> bool:
        return not check_balanced(self.to_cycle())


def _angle_cmp(a, b) -> int:
    """Exact counter-clockwise order of plane vectors starting at the positive x-axis."""
    def half(v):
        return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    ha, hb = half(a), half(b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def _span(fan: SimplicialFan, cone) -> list:
    return [list(fan.rays[i]) for i in cone]


def generic_displacement(fan: SimplicialFan, seed: int = 0, attempts: int = 32) -> tuple[Fraction, ...]:
    """A rational vector outside every proper subspace spanned by two cones."""
    r = fan.ambient
    spans = []
    for d1 in range(r + 1):
        for d2 in range(r + 1 - d1):
            for a in fan.cones(d1):
                for b in fan.cones(d2):
                    gens = _span(fan, a) + _span(fan, b)
                    if not gens or rank(gens) < r:
                        spans.append(gens)
    rng = random.Random(seed)
    for _ in range(attempts):
        v = random_rational_vector(rng, r)
        ok = True
        for gens in spans:
            if not gens:
                if not any(v):
                    ok = False
                    break
            elif rank(gens + [list(v)]) == rank(gens):
                ok = False
                break
        if ok:
            return v
    raise RuntimeError("no generic displacement vector found")


def fan_displacement_product(c1: MinkowskiWeight, c2: MinkowskiWeight, seed: int = 0,
                             v: Sequence | None = None) -> MinkowskiWeight:
    """Cup product of Minkowski weights via a generic displacement vector."""
    fan = c1.fan
    if c2.fan != fan:
        raise ValueError("weights live on different fans")
    r = fan.ambient
    k = c1.codim + c2.codim
    if k > r:
        return MinkowskiWeight(fan, k, {})
    if v is None:
        v = generic_displacement(fan, seed)
    out = {}
    for tau in fan.cones(r - k):
        st = set(tau)
        total = 0
        for s1, w1 in c1.values.items():
            if not st <= set(s1):
                continue
            p1 = fan.polyhedron(s1).translate(v)
            for s2, w2 in c2.values.items():
                if not st <= set(s2):
                    continue
                if p1.intersection(fan.polyhedron(s2)) is None:
                    continue
                lat1 = Sublattice.saturated(_span(fan, s1), r)
                lat2 = Sublattice.saturated(_span(fan, s2), r)
                m = index_of_sum(lat1, lat2)
                if m is INFINITE:
                    continue
                total += m * w1 * w2
        if total:
            out[tau] = total
    return MinkowskiWeight(fan, k, out)
