"""Weighted polyhedral complexes (tropical cycles)."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from ..exactlin import primitive_vector, rref
from .polyhedron import Polyhedron

__all__ = ["WeightedComplex", "merge_cells", "primitive_normal"]


@lru_cache(maxsize=None)
def primitive_normal(sigma: Polyhedron, tau: Polyhedron) -> tuple[int, ...]:
    """Primitive integer vector of sigma modulo tau, pointing into sigma."""
    direction = [a - b for a, b in zip(sigma.interior_point(), tau.interior_point())]
    return primitive_vector(tau.lattice(), sigma.lattice(), direction)


class WeightedComplex:
    """Pure-dimensional rational polyhedral complex with rational facet weights.

    Only the facets are stored; lower-dimensional cells are derived as
    faces.  Facets of weight zero are dropped unless ``prune`` is False.
    The empty complex is a valid value of any dimension.
    """

    def __init__(self, ambient: int, dim: int, facets: Mapping[Polyhedron, object] | Iterable = (),
                 *, prune: bool = True):
        items = facets.items() if isinstance(facets, Mapping) else facets
        cells: dict[Polyhedron, Fraction] = {}
        for poly, w in items:
            if poly.ambient != ambient:
                raise ValueError("cell lives in R^%d, expected R^%d" % (poly.ambient, ambient))
            if poly.dim != dim:
                raise ValueError("cell of dimension %d in a %d-dimensional complex" % (poly.dim, dim))
            cells[poly] = cells.get(poly, Fraction(0)) + Fraction(w)
        if prune:
            cells = {p: w for p, w in cells.items() if w != 0}
        self.ambient = ambient
        self.dim = dim
        self._cells = cells
        self._ridges = None
        self.lattice_basis = None

    @classmethod
    def empty(cls, ambient: int, dim: int) -> "WeightedComplex":
        return cls(ambient, dim, {})

    @classmethod
    def space(cls, ambient: int, weight=1) -> "WeightedComplex":
        """R^n as a one-cell complex."""
        return cls(ambient, ambient, {Polyhedron.space(ambient): weight})

    @classmethod
    def origin(cls, ambient: int, weight=1) -> "WeightedComplex":
        return cls(ambient, 0, {Polyhedron.point((0,) * ambient): weight})

    # -- access ---------------------------------------------------------

    @property
    def weights(self) -> dict[Polyhedron, Fraction]:
        return dict(self._cells)

    def facets(self) -> list[Polyhedron]:
        return sorted(self._cells)

    def weight(self, cell: Polyhedron) -> Fraction:
        return self._cells.get(cell, Fraction(0))

    def __len__(self):
        return len(self._cells)

    def is_empty(self) -> bool:
        return not self._cells

    def __repr__(self):
        return "WeightedComplex(ambient=%d, dim=%d, facets=%d)" % (self.ambient, self.dim, len(self._cells))

    def is_fan(self) -> bool:
        return all(p.is_cone() for p in self._cells)

    def ridges(self) -> dict[Polyhedron, list[Polyhedron]]:
        """Codimension-one cells mapped to the facets containing them."""
        if self._ridges is None:
            out: dict[Polyhedron, list[Polyhedron]] = {}
            for sigma in self.facets():
                for tau in sigma.facets():
                    out.setdefault(tau, []).append(sigma)
            self._ridges = out
        return self._ridges

    def cells(self) -> list[Polyhedron]:
        """All cells (faces of facets)."""
        seen = set()
        for sigma in self._cells:
            seen.update(sigma.faces())
        return sorted(seen, key=lambda f: (-f.dim, f))

    def facets_containing(self, tau: Polyhedron) -> list[Polyhedron]:
        return [s for s in self.facets() if tau in s.faces()]

    def support_contains(self, x) -> bool:
        return any(s.contains_point(x) for s in self._cells)

    # -- arithmetic -----------------------------------------------------

    def scaled(self, c) -> "WeightedComplex":
        c = Fraction(c)
        return WeightedComplex(self.ambient, self.dim, {p: c * w for p, w in self._cells.items()})

    def __neg__(self):
        return self.scaled(-1)

    def __add__(self, other: "WeightedComplex") -> "WeightedComplex":
        self._check_compatible(other)
        return merge_cells(self.ambient, self.dim, list(self._cells.items()) + list(other._cells.items()))

    def __sub__(self, other: "WeightedComplex") -> "WeightedComplex":
        return self + (-other)

    def _check_compatible(self, other):
        if self.ambient != other.ambient or self.dim != other.dim:
            raise ValueError("cycles of different shape: (%d,%d) vs (%d,%d)"
                             % (self.ambient, self.dim, other.ambient, other.dim))

    def translate(self, v) -> "WeightedComplex":
        return WeightedComplex(self.ambient, self.dim, {p.translate(v): w for p, w in self._cells.items()})

    def degree(self) -> Fraction:
        """Sum of weights of a zero-dimensional cycle."""
        if self.dim != 0:
            raise ValueError("degree is only defined for zero-dimensional cycles")
        return sum(self._cells.values(), Fraction(0))

    def equals(self, other: "WeightedComplex") -> bool:
        """Equality as cycles, i.e. up to refinement."""
        if self.ambient != other.ambient or self.dim != other.dim:
            return False
        if self._cells == other._cells:
            return True
        diff = merge_cells(self.ambient, self.dim,
                           list(self._cells.items()) + [(p, -w) for p, w in other._cells.items()])
        return diff.is_empty()

    def weights_as_ints(self) -> dict[Polyhedron, int]:
        out = {}
        for p, w in self._cells.items():
            if w.denominator != 1:
                raise ValueError("non-integral weight %s" % w)
            out[p] = int(w)
        return out


def _affine_key(p: Polyhedron):
    basis = p.span_basis()
    rows, piv = (basis, [next(i for i, x in enumerate(r) if x) for r in basis])
    x = list(p.points[0])
    for row, c in zip(rows, piv):
        if x[c]:
            f = x[c]
            x = [a - f * b for a, b in zip(x, row)]
    return tuple(tuple(r) for r in rows), tuple(x)


def _split(piece: Polyhedron, h, k):
    out = []
    for side in (h, tuple(-x for x in h)):
        q = piece.cut(side)
        if q is not None and q.dim == k:
            out.append(q)
    return out


def merge_cells(ambient: int, dim: int, items: Iterable, prune: bool = True) -> WeightedComplex:
    """Combine weighted cells into a complex.

    Cells in a common affine span are refined where they overlap or where
    they touch along only part of a facet, so that ridges are shared faces.
    """
    acc: dict[Polyhedron, Fraction] = {}
    for p, w in items:
        acc[p] = acc.get(p, Fraction(0)) + Fraction(w)
    groups: dict = {}
    for p, w in acc.items():
        groups.setdefault(_affine_key(p), []).append([p, w])
    result: dict[Polyhedron, Fraction] = {}
    for cells in groups.values():
        if len(cells) > 1:
            cells = _refine_group(cells, dim)
        for p, w in cells:
            result[p] = result.get(p, Fraction(0)) + w
    return WeightedComplex(ambient, dim, result, prune=prune)


def _refine_group(cells, dim):
    pieces = [(p, w) for p, w in cells]
    changed = True
    while changed:
        changed = False
        merged: dict[Polyhedron, Fraction] = {}
        for p, w in pieces:
            merged[p] = merged.get(p, Fraction(0)) + w
        pieces = list(merged.items())
        for i in range(len(pieces)):
            for j in range(i + 1, len(pieces)):
                a, b = pieces[i][0], pieces[j][0]
                inter = a.intersection(b)
                if inter is None or inter.dim < dim - 1:
                    continue
                if inter.dim == dim - 1 and inter in a.facets() and inter in b.facets():
                    continue
                # overlap, or contact along part of a facet: split both along each other's facet hyperplanes
                new = []
                for (p, w), other in ((pieces[i], b), (pieces[j], a)):
                    parts = [p]
                    for h in other.hrep()[1]:
                        nxt = []
                        for q in parts:
                            nxt.extend(_split(q, h, dim))
                        parts = nxt
                    new.extend((q, w) for q in parts)
                rest = [x for k, x in enumerate(pieces) if k not in (i, j)]
                if len(new) == 2 and new[0][0] == a and new[1][0] == b:
                    continue
                pieces = rest + new
                changed = True
                break
            if changed:
                break
    return pieces
