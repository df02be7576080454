"""Parametrized rational tropical curves in R^r as M_{[n] u Delta} x R^r."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..modcurves import FanSpace, MarkedTree, Partition, PsiProductFan, moduli_fan, psi_product
from ..exactlin import solve
from ..tropfan import CycleMorphism, WeightedComplex
from .degree import Degree

__all__ = ["EvalMap", "ParamCurve", "ParamPsiProduct", "ParamSpace", "psi_product_param"]


class ParamSpace:
    """The space of labelled rational tropical curves with marks and a labelled degree.

    Marks are integers; degree labels become the integers following the
    largest mark, so trees live on one integer label set.  A point is a
    tree together with the position of the anchor mark; vertex positions
    relative to a degree leaf are not linear, so the anchor is always a mark.
    """

    def __init__(self, marks: int | Iterable[int], degree: Degree, anchor: int | None = None):
        marks = tuple(range(1, marks + 1)) if isinstance(marks, int) else tuple(sorted(set(marks)))
        if any(not isinstance(m, int) for m in marks):
            raise TypeError("marks must be integers")
        self.marks = marks
        self.degree = degree
        self.r = degree.r
        start = max(marks, default=0) + 1
        self.leaf_of = {lab: start + i for i, lab in enumerate(degree.labels)}
        self.label_of = {v: k for k, v in self.leaf_of.items()}
        self.labels = marks + tuple(self.leaf_of[k] for k in degree.labels)
        if len(self.labels) < 3:
            raise ValueError("unstable: fewer than three leaves")
        if not marks:
            raise ValueError("the product structure needs a mark as anchor")
        if anchor is None:
            anchor = marks[0]
        if anchor not in marks:
            raise ValueError("the anchor must be a mark")
        self.anchor = anchor
        self._fan_space = None

    def __repr__(self):
        return "ParamSpace(marks=%s, #Delta=%d, r=%d)" % (list(self.marks), len(self.degree), self.r)

    @property
    def n(self) -> int:
        return len(self.marks)

    @property
    def dim(self) -> int:
        return len(self.labels) - 3 + self.r

    def direction(self, leaf) -> tuple[int, ...]:
        """Direction of a leaf: zero for marks."""
        if leaf in self.label_of:
            return self.degree.direction(self.label_of[leaf])
        return (0,) * self.r

    def edge_direction(self, side: Iterable) -> tuple[int, ...]:
        """v_I: the sum of directions of the degree leaves in I."""
        out = [0] * self.r
        for x in side:
            out = [a + b for a, b in zip(out, self.direction(x))]
        return tuple(out)

    def is_reducible(self, part: Partition) -> bool:
        return not any(self.edge_direction(part.side))

    # -- fan model --------------------------------------------------------

    def fan_space(self, max_leaves: int = 7) -> FanSpace:
        if self._fan_space is None:
            if len(self.labels) > max_leaves:
                raise ValueError("fan embedding limited to %d leaves" % max_leaves)
            self._fan_space = FanSpace(moduli_fan(self.labels), self.r)
        return self._fan_space

    def complex(self) -> WeightedComplex:
        return self.fan_space().complex()

    def with_mark(self, mark: int = 0) -> "ParamSpace":
        """The space with one more mark (same degree leaf numbering, same anchor)."""
        if mark in self.marks or mark in self.label_of:
            raise ValueError("label already used")
        big = ParamSpace(self.marks + (mark,), self.degree, self.anchor)
        if big.leaf_of != self.leaf_of:
            raise ValueError("the new mark must not shift the degree leaves")
        return big

    def forgetful(self, mark) -> tuple["ParamSpace", CycleMorphism]:
        if mark not in self.marks or mark == self.anchor:
            raise ValueError("can only forget a non-anchor mark")
        small = ParamSpace([m for m in self.marks if m != mark], self.degree, self.anchor)
        if small.leaf_of != self.leaf_of:
            raise ValueError("forgetting this mark shifts the degree leaves")
        _, f = self.fan_space().forgetful(mark)
        return small, f

    # -- curves -------------------------------------------------------------

    def curve(self, tree: MarkedTree, position: Sequence) -> "ParamCurve":
        if tree.labels != frozenset(self.labels):
            raise ValueError("tree has the wrong leaves")
        if tree.lengths is None:
            raise ValueError("tree without lengths")
        if len(position) != self.r:
            raise ValueError("position has the wrong dimension")
        return ParamCurve(self, tree, tuple(Fraction(x) for x in position))

    def coordinates(self, curve: "ParamCurve") -> tuple[Fraction, ...]:
        """The point of the fan model (fan coordinates, anchor position)."""
        return tuple(self.fan_space().fan.point(curve.tree)) + curve.position

    def eval_map(self, k) -> "EvalMap":
        return EvalMap(self, k)


@dataclass(frozen=True)
class ParamCurve:
    space: ParamSpace
    tree: MarkedTree
    position: tuple[Fraction, ...]

    def leaf_position(self, k) -> tuple[Fraction, ...]:
        """Vertex position of leaf k: anchor position plus lengths times edge directions.

        An edge I|J separating the anchor from k is crossed towards the side
        containing k, whose direction is the sum of the degree leaves there.
        """
        sp = self.space
        out = list(self.position)
        for s in self.tree.splits:
            if s.separates(sp.anchor, k):
                v = sp.edge_direction(s.side_of(k))
                out = [a + self.tree.lengths[s] * b for a, b in zip(out, v)]
        return tuple(out)

    def reanchor(self, anchor) -> "ParamCurve":
        """The same curve recorded with a different anchor mark."""
        sp = ParamSpace(self.space.marks, self.space.degree, anchor)
        return ParamCurve(sp, self.tree, self.leaf_position(anchor))


class EvalMap:
    """ev_k as an integer linear map on the fan model of a parametrized space.

    The tree formula is linear on each cone; its value on the ray of I|J is
    the direction of the edge towards k if I|J separates k from the anchor.
    The matrix is solved from these ray values, which must be consistent.
    """

    def __init__(self, space: ParamSpace, k):
        if k not in space.marks:
            raise ValueError("evaluation maps exist at marks only, not at %r" % (k,))
        self.space = space
        self.k = k
        self.anchor = space.anchor
        self._matrix = None

    def apply(self, curve: ParamCurve) -> tuple[Fraction, ...]:
        if curve.space.anchor != self.anchor:
            curve = curve.reanchor(self.anchor)
        return curve.leaf_position(self.k)

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        if self._matrix is None:
            self._matrix = self._build()
        return self._matrix

    def _ray_value(self, p: Partition) -> tuple[int, ...]:
        if not p.separates(self.anchor, self.k):
            return (0,) * self.space.r
        return self.space.edge_direction(p.side_of(self.k))

    def _build(self):
        sp = self.space
        fan = sp.fan_space().fan
        parts = list(fan.rays)
        m = fan.ambient
        if parts:
            system = [list(fan.rays[p]) for p in parts]
            cols = []
            for i in range(sp.r):
                sol = solve(system, [self._ray_value(p)[i] for p in parts])
                if sol is None:
                    raise ArithmeticError("evaluation map is not linear")
                cols.append(sol)
        else:
            cols = [[Fraction(0)] * m for _ in range(sp.r)]
        rows = []
        for i in range(sp.r):
            if any(Fraction(x).denominator != 1 for x in cols[i]):
                raise ArithmeticError("evaluation map is not integral")
            rows.append(tuple(int(x) for x in cols[i]) + tuple(int(i == j) for j in range(sp.r)))
        return tuple(rows)

    def morphism(self) -> CycleMorphism:
        return CycleMorphism.linear(self.matrix)

    def __call__(self, point: Sequence) -> tuple[Fraction, ...]:
        return tuple(sum(Fraction(m) * Fraction(x) for m, x in zip(row, point)) for row in self.matrix)


@dataclass
class ParamPsiProduct:
    """Psi-product on a parametrized space: abstract types crossed with R^r."""

    space: ParamSpace
    abstract: PsiProductFan

    @property
    def dim(self) -> int:
        return self.abstract.dim + self.space.r

    @property
    def weights(self) -> dict:
        return self.abstract.weights

    def to_complex(self) -> WeightedComplex:
        from ..tropfan import product
        fan = self.space.fan_space().fan
        return product(fan.subfan(self.abstract.weights), WeightedComplex.space(self.space.r))


def psi_product_param(space: ParamSpace, a: Mapping | Sequence) -> ParamPsiProduct:
    """prod psi_k^{a_k} over marks; degree leaves carry exponent zero."""
    if isinstance(a, Mapping):
        exps = {k: int(v) for k, v in a.items()}
    else:
        a = list(a)
        if len(a) != space.n:
            raise ValueError("one exponent per mark expected")
        exps = dict(zip(space.marks, a))
    if any(k not in space.marks for k in exps):
        raise ValueError("psi-classes only at marks")
    full = {x: exps.get(x, 0) for x in space.labels}
    return ParamPsiProduct(space, psi_product(space.labels, full))
