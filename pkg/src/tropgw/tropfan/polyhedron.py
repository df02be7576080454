"""Exact rational polyhedra.

A :class:`Polyhedron` is stored by a canonical minimal V-representation
(points, primitive integer rays, lineality basis in reduced echelon form),
so two equal polyhedra compare and hash equal.  The H-representation is
computed on demand with a small double description routine over the
integers.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from ..exactlin import Sublattice, primitive_integer, rank, rref

__all__ = ["Polyhedron", "cone_generators", "Vector"]

Vector = tuple[Fraction, ...]


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _prim(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def _int_scale(v: Sequence) -> tuple[int, ...]:
    """Positive multiple of a rational vector with integer entries, made primitive."""
    return primitive_integer(v)


def cone_generators(ineqs: Sequence[Sequence[int]], eqs: Sequence[Sequence[int]], n: int):
    """Lineality basis and extreme rays of ``{x : a.x >= 0, e.x = 0}`` in Q^n.

    Inputs are integer vectors.  Rays are primitive integer vectors and
    extreme modulo the lineality space.
    """
    lin = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    for e in eqs:
        vals = [_dot(e, l) for l in lin]
        idx = next((i for i, v in enumerate(vals) if v), None)
        if idx is None:
            continue
        l0, a0 = lin[idx], vals[idx]
        lin = [_prim([a0 * x - v * y for x, y in zip(l, l0)])
               for i, (l, v) in enumerate(zip(lin, vals)) if i != idx]
    rays: list[tuple[int, ...]] = []
    zs: list[int] = []
    for bit, a in enumerate(ineqs):
        flag = 1 << bit
        vals = [_dot(a, l) for l in lin]
        idx = next((i for i, v in enumerate(vals) if v), None)
        if idx is not None:
            l0, a0 = lin[idx], vals[idx]
            if a0 < 0:
                l0, a0 = tuple(-x for x in l0), -a0
            lin = [_prim([a0 * x - v * y for x, y in zip(l, l0)])
                   for i, (l, v) in enumerate(zip(lin, vals)) if i != idx]
            newr = []
            for r in rays:
                v = _dot(a, r)
                newr.append(_prim([a0 * x - v * y for x, y in zip(r, l0)]) if v else r)
            rays = newr + [l0]
            zs = [z | flag for z in zs] + [flag - 1]
            continue
        vals = [_dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            zs = [z | flag if vals[i] == 0 else z for i, z in enumerate(zs)]
            continue
        newr, newz = [], []
        for i, v in enumerate(vals):
            if v > 0:
                newr.append(rays[i])
                newz.append(zs[i])
            elif v == 0:
                newr.append(rays[i])
                newz.append(zs[i] | flag)
        for p in pos:
            for q in neg:
                common = zs[p] & zs[q]
                adjacent = True
                for k, zk in enumerate(zs):
                    if k != p and k != q and zk & common == common:
                        adjacent = False
                        break
                if adjacent:
                    vp, vq = vals[p], vals[q]
                    newr.append(_prim([vp * x - vq * y for x, y in zip(rays[q], rays[p])]))
                    newz.append(common | flag)
        rays, zs = newr, newz
    return lin, rays


class Polyhedron:
    """Rational polyhedron ``conv(points) + cone(rays) + span(lineality)``."""

    __slots__ = ("ambient", "points", "rays", "lineality", "_key", "_hash", "_cache")

    def __init__(self, points: Iterable[Sequence], rays: Iterable[Sequence] = (),
                 lineality: Iterable[Sequence] = (), *, minimal: bool = False):
        pts = [tuple(Fraction(x) for x in p) for p in points]
        if not pts:
            raise ValueError("a polyhedron needs at least one point")
        n = len(pts[0])
        lin_rows, piv = rref([list(l) for l in lineality]) if lineality else ([], [])

        def red(v):
            v = list(v)
            for row, c in zip(lin_rows, piv):
                if v[c]:
                    f = v[c]
                    v = [x - f * y for x, y in zip(v, row)]
            return v

        pts = sorted({tuple(red(p)) for p in pts})
        rs = set()
        for r in rays:
            r2 = red([Fraction(x) for x in r])
            if any(r2):
                rs.add(_int_scale(r2))
        self.ambient = n
        self.points: tuple[Vector, ...] = tuple(pts)
        self.rays: tuple[tuple[int, ...], ...] = tuple(sorted(rs))
        self.lineality: tuple[Vector, ...] = tuple(tuple(r) for r in lin_rows)
        self._cache: dict = {}
        if not minimal and not self._independent():
            eqs, ineqs = self.hrep()
            other = Polyhedron.from_hrep(eqs, ineqs, n)
            self.points, self.rays, self.lineality = other.points, other.rays, other.lineality
            self._cache = {"hrep": (eqs, ineqs)}
        self._key = (self.points, self.rays, self.lineality)
        self._hash = hash(self._key)

    # -- basic data -----------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Polyhedron) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._key < other._key

    def __repr__(self):
        def f(v):
            return "(" + ",".join(str(x) for x in v) + ")"
        parts = ["pts=" + " ".join(f(p) for p in self.points)]
        if self.rays:
            parts.append("rays=" + " ".join(f(r) for r in self.rays))
        if self.lineality:
            parts.append("lin=" + " ".join(f(l) for l in self.lineality))
        return "Polyhedron(%s)" % "; ".join(parts)

    @classmethod
    def point(cls, p: Sequence) -> "Polyhedron":
        return cls([p], minimal=True)

    @classmethod
    def cone(cls, rays: Iterable[Sequence], ambient: int, lineality: Iterable[Sequence] = ()) -> "Polyhedron":
        return cls([(0,) * ambient], rays, lineality)

    @classmethod
    def space(cls, ambient: int) -> "Polyhedron":
        return cls([(0,) * ambient], (), [tuple(int(i == j) for j in range(ambient)) for i in range(ambient)],
                   minimal=True)

    def directions(self) -> list[list[Fraction]]:
        p0 = self.points[0]
        out = [[x - y for x, y in zip(p, p0)] for p in self.points[1:]]
        out += [list(map(Fraction, r)) for r in self.rays]
        out += [list(l) for l in self.lineality]
        return out

    def _independent(self) -> bool:
        d = self.directions()
        return not d or rank(d) == len(d)

    @property
    def dim(self) -> int:
        if "dim" not in self._cache:
            d = self.directions()
            self._cache["dim"] = rank(d) if d else 0
        return self._cache["dim"]

    def is_simplicial(self) -> bool:
        """True if all generators are affinely independent."""
        if "simp" not in self._cache:
            self._cache["simp"] = self._independent()
        return self._cache["simp"]

    def is_bounded(self) -> bool:
        return not self.rays and not self.lineality

    def is_cone(self) -> bool:
        return len(self.points) == 1 and not any(self.points[0])

    def span_basis(self) -> list[list[Fraction]]:
        """RREF basis of the linear space parallel to the affine hull."""
        if "span" not in self._cache:
            d = self.directions()
            self._cache["span"] = rref(d)[0] if d else []
        return self._cache["span"]

    def lattice(self) -> Sublattice:
        """Integer points of the linear span parallel to the polyhedron."""
        if "lat" not in self._cache:
            self._cache["lat"] = Sublattice.saturated(self.span_basis(), self.ambient)
        return self._cache["lat"]

    def interior_point(self) -> Vector:
        """A point in the relative interior."""
        n = len(self.points)
        p = [sum(c) / n for c in zip(*self.points)]
        for r in self.rays:
            p = [x + y for x, y in zip(p, r)]
        return tuple(p)

    # -- H-representation ----------------------------------------------

    def hrep(self):
        """``(equations, inequalities)``; each row ``(b, a_1..a_n)`` means b + a.x (=|>=) 0."""
        if "hrep" not in self._cache:
            n = self.ambient
            gens = [_int_scale((1,) + p) for p in self.points] + [(0,) + r for r in self.rays]
            lins = [_int_scale((0,) + l) for l in self.lineality]
            lin, rays = cone_generators(gens, lins, n + 1)
            dirs = self.directions()
            ineqs = []
            for r in rays:
                if all(_dot(r[1:], d) == 0 for d in dirs):
                    continue
                ineqs.append(r)
            self._cache["hrep"] = (lin, ineqs)
        return self._cache["hrep"]

    @classmethod
    def from_hrep(cls, eqs: Sequence[Sequence], ineqs: Sequence[Sequence], ambient: int) -> "Polyhedron | None":
        """Polyhedron cut out by the rows; None if empty."""
        e = [_int_scale(r) for r in eqs]
        e = [r for r in e if any(r)]
        i = [_int_scale(r) for r in ineqs]
        for r in i:
            if not any(r[1:]) and r[0] < 0:
                return None
        i = [r for r in i if any(r[1:])]
        for r in e:
            if not any(r[1:]):
                return None
        t_pos = (1,) + (0,) * ambient
        lin, rays = cone_generators(i + [t_pos], e, ambient + 1)
        pts = [tuple(Fraction(x, r[0]) for x in r[1:]) for r in rays if r[0] > 0]
        if not pts:
            return None
        rs = [r[1:] for r in rays if r[0] == 0]
        lns = [l[1:] for l in lin]
        return cls(pts, rs, lns, minimal=True)

    def contains_point(self, x: Sequence) -> bool:
        eqs, ineqs = self.hrep()
        xs = (1,) + tuple(x)
        return all(_dot(e, xs) == 0 for e in eqs) and all(_dot(a, xs) >= 0 for a in ineqs)

    def contains(self, other: "Polyhedron") -> bool:
        eqs, ineqs = self.hrep()
        for p in other.points:
            xs = (1,) + p
            if any(_dot(e, xs) != 0 for e in eqs) or any(_dot(a, xs) < 0 for a in ineqs):
                return False
        for r in other.rays:
            if any(_dot(e[1:], r) != 0 for e in eqs) or any(_dot(a[1:], r) < 0 for a in ineqs):
                return False
        for l in other.lineality:
            if any(_dot(e[1:], l) != 0 for e in eqs) or any(_dot(a[1:], l) != 0 for a in ineqs):
                return False
        return True

    def in_relative_interior(self, x: Sequence) -> bool:
        eqs, ineqs = self.hrep()
        xs = (1,) + tuple(x)
        return all(_dot(e, xs) == 0 for e in eqs) and all(_dot(a, xs) > 0 for a in ineqs)

    def intersection(self, other: "Polyhedron") -> "Polyhedron | None":
        e1, i1 = self.hrep()
        e2, i2 = other.hrep()
        return Polyhedron.from_hrep(list(e1) + list(e2), list(i1) + list(i2), self.ambient)

    def cut(self, halfspace: Sequence) -> "Polyhedron | None":
        """Intersection with ``{x : b + a.x >= 0}`` for ``halfspace = (b, a...)``."""
        eqs, ineqs = self.hrep()
        return Polyhedron.from_hrep(eqs, list(ineqs) + [tuple(halfspace)], self.ambient)

    def restrict_equal(self, hyperplane: Sequence) -> "Polyhedron | None":
        eqs, ineqs = self.hrep()
        return Polyhedron.from_hrep(list(eqs) + [tuple(hyperplane)], ineqs, self.ambient)

    # -- faces ----------------------------------------------------------

    def facets(self) -> list["Polyhedron"]:
        """Faces of codimension one."""
        if "facets" in self._cache:
            return self._cache["facets"]
        out = []
        if self.dim == 0:
            pass
        elif self.is_simplicial():
            pts, rs = self.points, self.rays
            if len(pts) > 1:
                for i in range(len(pts)):
                    out.append(Polyhedron(pts[:i] + pts[i + 1:], rs, self.lineality, minimal=True))
            for i in range(len(rs)):
                out.append(Polyhedron(pts, rs[:i] + rs[i + 1:], self.lineality, minimal=True))
        else:
            _, ineqs = self.hrep()
            seen = set()
            for a in ineqs:
                pts = [p for p in self.points if _dot(a, (1,) + p) == 0]
                if not pts:
                    continue
                rs = [r for r in self.rays if _dot(a[1:], r) == 0]
                f = Polyhedron(pts, rs, self.lineality, minimal=True)
                if f.dim == self.dim - 1 and f not in seen:
                    seen.add(f)
                    out.append(f)
        out.sort()
        self._cache["facets"] = out
        return out

    def faces(self) -> list["Polyhedron"]:
        """All non-empty faces including the polyhedron itself."""
        if "faces" in self._cache:
            return self._cache["faces"]
        seen = {self}
        todo = [self]
        while todo:
            f = todo.pop()
            for g in f.facets():
                if g not in seen:
                    seen.add(g)
                    todo.append(g)
        out = sorted(seen, key=lambda f: (-f.dim, f._key))
        self._cache["faces"] = out
        return out

    # -- maps -----------------------------------------------------------

    def translate(self, v: Sequence) -> "Polyhedron":
        v = [Fraction(x) for x in v]
        return Polyhedron([[a + b for a, b in zip(p, v)] for p in self.points], self.rays,
                          self.lineality, minimal=True)

    def linear_image(self, matrix: Sequence[Sequence], shift: Sequence | None = None) -> "Polyhedron":
        def ap(v):
            return [sum(Fraction(m) * x for m, x in zip(row, v)) for row in matrix]
        pts = [ap(p) for p in self.points]
        if shift is not None:
            pts = [[a + Fraction(b) for a, b in zip(p, shift)] for p in pts]
        return Polyhedron(pts, [ap(r) for r in self.rays], [ap(l) for l in self.lineality])

    def recession_cone(self) -> "Polyhedron":
        return Polyhedron([(0,) * self.ambient], self.rays, self.lineality)

    def product(self, other: "Polyhedron") -> "Polyhedron":
        n, m = self.ambient, other.ambient
        pts = [p + q for p in self.points for q in other.points]
        rs = [tuple(r) + (0,) * m for r in self.rays] + [(0,) * n + tuple(r) for r in other.rays]
        ls = [tuple(l) + (0,) * m for l in self.lineality] + [(0,) * n + tuple(l) for l in other.lineality]
        return Polyhedron(pts, rs, ls, minimal=True)
