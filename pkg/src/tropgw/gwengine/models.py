"""Toric surface models: direction fans, bases of fan cycles and the alpha/beta matrices."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from ..exactlin import det, inverse
from ..tropfan import MaxFunction, PLFunction, MinkowskiWeight, SimplicialFan, WeightedComplex, degree0, diagonal_intersection

__all__ = ["MODEL_NAMES", "SurfaceModel", "build_surface_model"]

# ray names used in the basis descriptions below
_A, _B, _C, _D, _E, _F = (1, 1), (0, 1), (-1, 0), (0, -1), (1, 0), (-1, -1)


def _max0(*covectors) -> MaxFunction:
    r = len(covectors[0])
    return MaxFunction.tropical_max(r, [(0, (0,) * r)] + [(0, tuple(c)) for c in covectors])


# name -> (rays of the fan, curve classes as (name, rays, function with that divisor),
#          directions allowed in degrees (None: all rays))
_SPECS = {
    "P2": ([_A, _C, _D], [("line", [_A, _C, _D], _max0(_E, _B))], None),
    "F1": ([_A, _B, _C, _D], [("line", [_A, _C, _D], _max0(_E, _B)),
                              ("fiber", [_B, _D], _max0(_E))], None),
    "Bl2": ([_A, _B, _C, _D, _E], [("line", [_A, _C, _D], _max0(_E, _B)),
                                   ("vertical", [_B, _D], _max0(_E)),
                                   ("horizontal", [_C, _E], _max0(_B))], None),
    "Bl3": ([_A, _B, _C, _D, _E, _F], [("line", [_A, _C, _D], _max0(_E, _B)),
                                       ("vertical", [_B, _D], _max0(_E)),
                                       ("horizontal", [_C, _E], _max0(_B)),
                                       ("diagonal", [_A, _F], _max0((1, -1)))], None),
    "P1xP1": ([_B, _C, _D, _E], [("vertical", [_B, _D], _max0(_E)),
                                 ("horizontal", [_C, _E], _max0(_B))], None),
    "P1xKstar": ([_B, _C, _D, _E], [("vertical", [_B, _D], _max0(_E)),
                                    ("horizontal", [_C, _E], _max0(_B))], [_C, _E]),
}

MODEL_NAMES = ("P2", "P1xP1", "F1", "Bl2", "Bl3", "P1xKstar", "R1")

_ALIASES = {"p2": "P2", "f1": "F1", "bl2": "Bl2", "bl2p2": "Bl2", "bl3": "Bl3", "bl3p2": "Bl3",
            "p1xp1": "P1xP1", "p1xkstar": "P1xKstar", "r1": "R1"}


@dataclass(frozen=True, eq=False)
class SurfaceModel:
    """A complete simplicial fan with a basis B_0 = point, ..., B_m = R^r of its cycles.

    ``functions[e]`` is a convex function whose divisor is B_e (codimension-one classes).
    """

    name: str
    fan: SimplicialFan
    class_names: tuple[str, ...]
    basis: tuple[MinkowskiWeight, ...]
    functions: dict
    degree_rays: tuple[tuple[int, ...], ...]
    alpha: tuple[tuple[int, ...], ...] = field(init=False)
    beta: tuple[tuple[Fraction, ...], ...] = field(init=False)

    def __post_init__(self):
        cycles = [b.to_cycle() for b in self.basis]
        a = []
        for x in cycles:
            row = []
            for y in cycles:
                if x.dim + y.dim != self.r:
                    row.append(0)
                else:
                    row.append(int(degree0(diagonal_intersection(x, y))))
            a.append(tuple(row))
        object.__setattr__(self, "alpha", tuple(a))
        object.__setattr__(self, "beta", tuple(tuple(r) for r in inverse(a)))
        object.__setattr__(self, "_cycles", tuple(cycles))

    @property
    def r(self) -> int:
        return self.fan.ambient

    @property
    def m(self) -> int:
        """Index of the top class R^r."""
        return len(self.basis) - 1

    def index(self, name: str) -> int:
        key = name.lower()
        for i, n in enumerate(self.class_names):
            if n.lower() == key:
                return i
        if key in ("r", "all", "plane", "r%d" % self.r):
            return self.m
        if key in ("point", "p"):
            return 0
        raise KeyError("model %s has no class %r (classes: %s)" % (self.name, name, ", ".join(self.class_names)))

    def cycle(self, e: int) -> WeightedComplex:
        return self._cycles[e]

    def dim(self, e: int) -> int:
        return self.basis[e].dim

    def codim(self, e: int) -> int:
        return self.basis[e].codim

    def rays_of(self, e: int) -> list[tuple[int, ...]]:
        """Directions of the unbounded rays of B_e."""
        x = self._cycles[e]
        if x.dim != 1:
            return []
        return sorted({c.rays[0] for c in x.facets()})

    def supports(self, direction: Sequence[int]) -> bool:
        return tuple(direction) in self.degree_rays

    def product_degree(self, classes: Sequence[int]) -> int:
        """deg(B_{e_1} ... B_{e_k}); zero unless the codimensions add up to r."""
        return _product_degree(self, tuple(sorted(classes)))

    def curve_degree(self, e: int, directions: Sequence[Sequence[int]]) -> Fraction:
        """deg(B_e . delta(Delta)) for a curve class, i.e. h_e . Delta."""
        return _curve_degree(self, e, tuple(sorted(tuple(v) for v in directions)))

    def divisor_classes(self) -> list[int]:
        """Codimension-one classes B_e = div(h_e) with a known convex h_e."""
        return sorted(e for e in self.functions if self.codim(e) == 1)

    def divisor_degree(self, e: int, directions: Sequence[Sequence[int]]) -> Fraction:
        """h_e . Delta; for curve classes this equals deg(B_e . delta(Delta))."""
        if self.dim(e) == 1:
            return self.curve_degree(e, directions)
        from ..parmod import Degree, h_dot_degree
        return h_dot_degree(self.functions[e], Degree.from_directions(directions, self.r))

    def preferred_divisor(self) -> dict[int, int]:
        """Coefficients of div(h) in the basis for the standard auxiliary function h.

        h = max{0,x,y,x+y} on the two models with the P1xP1 fan,
        max{0,x,y} on the other surfaces and max{0,x} on the line.
        """
        if self.r == 1:
            return {0: 1}
        if self.name in ("P1xP1", "P1xKstar"):
            return {self.index("vertical"): 1, self.index("horizontal"): 1}
        return {self.index("line"): 1}

    def combination_function(self, coeffs: dict[int, int]) -> PLFunction:
        """h = sum c_e h_e, whose divisor is sum c_e B_e."""
        out = None
        for e, c in sorted(coeffs.items()):
            f = c * self.functions[e]
            out = f if out is None else out + f
        return out

    def combination_rays(self, coeffs: dict[int, int]) -> list[tuple[int, ...]]:
        """Rays of the one-dimensional cycle sum c_e B_e with non-zero net weight."""
        w = {}
        for e, c in coeffs.items():
            for ray in self.rays_of(e):
                w[ray] = w.get(ray, 0) + c
        return sorted(ray for ray, x in w.items() if x)

    def combination_degree(self, coeffs: dict[int, int], directions) -> Fraction:
        """h . Delta for h = sum c_e h_e."""
        return sum((c * self.divisor_degree(e, directions) for e, c in coeffs.items()), Fraction(0))

    def check(self) -> list[str]:
        """Structural problems of the model (empty if fine)."""
        out = []
        if not self.fan.is_complete():
            out.append("fan is not complete")
        if self.r == 2 and not self.fan.is_strongly_unimodular():
            out.append("fan is not strongly unimodular")
        if any(not b.is_balanced() for b in self.basis):
            out.append("unbalanced basis class")
        if any(self.alpha[i][j] != self.alpha[j][i] for i in range(len(self.alpha)) for j in range(i)):
            out.append("alpha is not symmetric")
        return out


@lru_cache(maxsize=None)
def _product_degree(model: SurfaceModel, classes: tuple[int, ...]) -> int:
    if sum(model.codim(e) for e in classes) != model.r:
        return 0
    x = WeightedComplex.space(model.r)
    for e in classes:
        if model.codim(e) == 0:
            continue
        x = diagonal_intersection(x, model.cycle(e))
    return int(degree0(x))


@lru_cache(maxsize=None)
def _curve_degree(model: SurfaceModel, e: int, dirs: tuple) -> Fraction:
    if model.dim(e) != 1 or not dirs:
        return Fraction(0)
    from ..parmod import Degree, delta_of_degree
    delta = delta_of_degree(Degree.from_directions(dirs, model.r))
    return degree0(diagonal_intersection(model.cycle(e), delta))


def _weight_on(fan: SimplicialFan, rays) -> MinkowskiWeight:
    return MinkowskiWeight(fan, 1, {(fan.rays.index(tuple(r)),): 1 for r in rays})


@lru_cache(maxsize=None)
def build_surface_model(name: str) -> SurfaceModel:
    """One of P2, P1xP1, F1, Bl2, Bl3, P1xKstar (plane) or R1 (the line)."""
    key = _ALIASES.get(name.lower().replace("^", "").replace("_", ""), name)
    if key == "R1":
        fan = SimplicialFan(((1,), (-1,)), ((0,), (1,)))
        basis = (MinkowskiWeight(fan, 1, {(): 1}), fan.fundamental())
        return SurfaceModel("R1", fan, ("pt", "R1"), basis, {0: _max0((1,))}, fan.rays)
    if key not in _SPECS:
        raise ValueError("unknown model %r (known: %s)" % (name, ", ".join(MODEL_NAMES)))
    rays, curves, allowed = _SPECS[key]
    fan = SimplicialFan.from_rays_2d(rays)
    names = ["pt"] + [c[0] for c in curves] + ["R2"]
    basis = [MinkowskiWeight(fan, 2, {(): 1})]
    functions = {}
    for i, (_, crays, h) in enumerate(curves, start=1):
        basis.append(_weight_on(fan, crays))
        functions[i] = h
    basis.append(fan.fundamental())
    degree_rays = fan.rays if allowed is None else tuple(sorted(allowed))
    return SurfaceModel(key, fan, tuple(names), tuple(basis), functions, degree_rays)


def strongly_unimodular_witness(dirs: Sequence[Sequence[int]]) -> tuple[bool, str]:
    """Primitive directions whose pairwise independent pairs all form lattice bases."""
    from math import gcd
    for v in dirs:
        g = 0
        for x in v:
            g = gcd(g, x)
        if g != 1:
            return False, "direction %s is not primitive" % (tuple(v),)
    distinct = sorted({tuple(v) for v in dirs})
    if distinct and len(distinct[0]) == 2:
        for a, b in combinations(distinct, 2):
            d = det([a, b])
            if d not in (0, 1, -1):
                return False, "directions %s and %s span a sublattice of index %d" % (a, b, abs(d))
    return True, ""
