"""Piecewise linear (rational) functions on polyhedral complexes.

A function only has to answer :meth:`PLFunction.affine_on`, returning
``(linear_part, constant)`` of its affine restriction to a cell.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..exactlin import solve
from .polyhedron import Polyhedron

__all__ = [
    "Affine",
    "CellwiseFunction",
    "LinearCombination",
    "MaxFunction",
    "NotAffineError",
    "PLFunction",
    "Pullback",
    "RayValueFunction",
]

Affine = tuple[tuple[Fraction, ...], Fraction]


class NotAffineError(ValueError):
    """The function is not affine on the requested cell."""


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


class PLFunction:
    """Interface: a function that is affine on each cell it is asked about."""

    ambient: int

    def affine_on(self, cell: Polyhedron) -> Affine:
        raise NotImplementedError

    def value(self, x: Sequence) -> Fraction:
        raise NotImplementedError

    def __add__(self, other: "PLFunction") -> "PLFunction":
        return LinearCombination([(1, self), (1, other)])

    def __sub__(self, other: "PLFunction") -> "PLFunction":
        return LinearCombination([(1, self), (-1, other)])

    def __neg__(self):
        return LinearCombination([(-1, self)])

    def __rmul__(self, c):
        return LinearCombination([(c, self)])


class CellwiseFunction(PLFunction):
    """Explicit affine data per cell; lower cells inherit from a containing cell."""

    def __init__(self, ambient: int, data: Mapping[Polyhedron, tuple[Sequence, object]]):
        self.ambient = ambient
        self.data = {p: (tuple(Fraction(x) for x in lin), Fraction(c)) for p, (lin, c) in data.items()}

    def affine_on(self, cell):
        if cell in self.data:
            return self.data[cell]
        for p, aff in self.data.items():
            if p.contains(cell):
                return aff
        raise NotAffineError("no affine data for %r" % (cell,))

    def value(self, x):
        for p, (lin, c) in self.data.items():
            if p.contains_point(x):
                return c + _dot(lin, x)
        raise ValueError("point outside the domain")


class RayValueFunction(PLFunction):
    """Function on a simplicial fan, linear on cones, given by values on rays."""

    def __init__(self, ambient: int, values: Mapping[Sequence[int], object]):
        self.ambient = ambient
        self.values = {tuple(int(x) for x in r): Fraction(v) for r, v in values.items()}
        self._cache: dict = {}

    def affine_on(self, cell):
        if cell in self._cache:
            return self._cache[cell]
        if not cell.is_cone() or cell.lineality:
            raise NotAffineError("ray-value functions live on pointed cones")
        rays = cell.rays
        if not rays:
            res = ((Fraction(0),) * self.ambient, Fraction(0))
        else:
            try:
                vals = [self.values[r] for r in rays]
            except KeyError as exc:
                raise NotAffineError("ray %s is not a ray of the fan" % (exc.args[0],)) from None
            sol = solve([list(r) for r in rays], vals)
            if sol is None:
                raise NotAffineError("ray values are not linear on %r" % (cell,))
            res = (tuple(sol), Fraction(0))
        self._cache[cell] = res
        return res


class MaxFunction(PLFunction):
    """Signed sum of maxima of affine functions on R^n.

    ``components`` is a list of ``(coefficient, terms)`` where each term is
    ``(constant, covector)``; the value is ``sum c * max_t (b_t + a_t . x)``.
    """

    def __init__(self, ambient: int, components: Iterable):
        self.ambient = ambient
        comps = []
        for coef, terms in components:
            ts = []
            for b, a in terms:
                a = tuple(Fraction(x) for x in a)
                if len(a) != ambient:
                    raise ValueError("covector of wrong length")
                ts.append((Fraction(b), a))
            comps.append((Fraction(coef), tuple(ts)))
        self.components = tuple(comps)

    @classmethod
    def tropical_max(cls, ambient: int, terms: Iterable) -> "MaxFunction":
        return cls(ambient, [(1, list(terms))])

    @classmethod
    def linear(cls, covector: Sequence, constant=0) -> "MaxFunction":
        return cls(len(covector), [(1, [(constant, covector)])])

    def value(self, x):
        return sum((c * max(b + _dot(a, x) for b, a in ts) for c, ts in self.components), Fraction(0))

    def affine_on(self, cell):
        lin = [Fraction(0)] * self.ambient
        const = Fraction(0)
        q = cell.interior_point()
        for coef, ts in self.components:
            vals = [b + _dot(a, q) for b, a in ts]
            best = max(vals)
            k = vals.index(best)
            b0, a0 = ts[k]
            for b, a in ts:
                for p in cell.points:
                    if b + _dot(a, p) > b0 + _dot(a0, p):
                        raise NotAffineError("max is not attained by one term on the cell")
                for r in cell.rays:
                    if _dot(a, r) > _dot(a0, r):
                        raise NotAffineError("max is not attained by one term on the cell")
                for l in cell.lineality:
                    if _dot(a, l) != _dot(a0, l):
                        raise NotAffineError("max is not attained by one term on the cell")
            lin = [x + coef * y for x, y in zip(lin, a0)]
            const += coef * b0
        return tuple(lin), const

    def hyperplanes(self) -> list[tuple]:
        """Rows ``(b, a)`` whose hyperplanes separate the domains of linearity."""
        out = []
        for _, ts in self.components:
            for i in range(len(ts)):
                for j in range(i + 1, len(ts)):
                    (b1, a1), (b2, a2) = ts[i], ts[j]
                    h = (b1 - b2,) + tuple(x - y for x, y in zip(a1, a2))
                    if any(h[1:]):
                        out.append(h)
        return out

    def regions(self) -> list[list[tuple]]:
        """For each component, the H-descriptions of its linearity domains."""
        out = []
        for _, ts in self.components:
            regs = []
            for i, (bi, ai) in enumerate(ts):
                rows = []
                for j, (bj, aj) in enumerate(ts):
                    if i != j:
                        rows.append((bi - bj,) + tuple(x - y for x, y in zip(ai, aj)))
                regs.append(rows)
            out.append(regs)
        return out

    def compose(self, matrix: Sequence[Sequence], shift: Sequence | None = None) -> "MaxFunction":
        """The function x -> self(matrix x + shift)."""
        n = len(matrix[0]) if matrix else 0
        shift = [Fraction(0)] * self.ambient if shift is None else [Fraction(s) for s in shift]
        comps = []
        for coef, ts in self.components:
            new = []
            for b, a in ts:
                a2 = [sum(a[i] * Fraction(matrix[i][j]) for i in range(self.ambient)) for j in range(n)]
                new.append((b + _dot(a, shift), a2))
            comps.append((coef, new))
        return MaxFunction(n, comps)

    def __add__(self, other):
        if isinstance(other, MaxFunction):
            return MaxFunction(self.ambient, list(self.components) + list(other.components))
        return super().__add__(other)

    def __neg__(self):
        return MaxFunction(self.ambient, [(-c, ts) for c, ts in self.components])

    def __sub__(self, other):
        if isinstance(other, MaxFunction):
            return self + (-other)
        return super().__sub__(other)

    def __rmul__(self, c):
        return MaxFunction(self.ambient, [(Fraction(c) * k, ts) for k, ts in self.components])


class LinearCombination(PLFunction):
    def __init__(self, parts: Iterable):
        self.parts = [(Fraction(c), f) for c, f in parts]
        self.ambient = self.parts[0][1].ambient

    def affine_on(self, cell):
        lin = [Fraction(0)] * self.ambient
        const = Fraction(0)
        for c, f in self.parts:
            l, k = f.affine_on(cell)
            lin = [x + c * y for x, y in zip(lin, l)]
            const += c * k
        return tuple(lin), const

    def value(self, x):
        return sum((c * f.value(x) for c, f in self.parts), Fraction(0))


class Pullback(PLFunction):
    """phi composed with the affine map x -> matrix x + shift."""

    def __init__(self, phi: PLFunction, matrix: Sequence[Sequence], shift: Sequence | None = None):
        self.phi = phi
        self.matrix = [[Fraction(x) for x in row] for row in matrix]
        self.ambient = len(self.matrix[0]) if self.matrix else 0
        self.shift = None if shift is None else [Fraction(s) for s in shift]
        self._cache: dict = {}

    def affine_on(self, cell):
        if cell in self._cache:
            return self._cache[cell]
        image = cell.linear_image(self.matrix, self.shift)
        lin, const = self.phi.affine_on(image)
        new = tuple(sum(lin[i] * self.matrix[i][j] for i in range(len(lin))) for j in range(self.ambient))
        if self.shift is not None:
            const = const + _dot(lin, self.shift)
        self._cache[cell] = (new, const)
        return new, const

    def value(self, x):
        y = [sum(r[j] * x[j] for j in range(self.ambient)) for r in self.matrix]
        if self.shift is not None:
            y = [a + b for a, b in zip(y, self.shift)]
        return self.phi.value(y)
