"""Intersection theory on weighted complexes."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..exactlin import INFINITE, Sublattice, index_in, index_of_sum, invert_unimodular, rank, smith_normal_form
from .complex import WeightedComplex, merge_cells, primitive_normal
from .functions import CellwiseFunction, MaxFunction, PLFunction, Pullback
from .polyhedron import Polyhedron, cone_generators

__all__ = [
    "CycleMorphism",
    "NonTransversalError",
    "UnbalancedError",
    "check_balanced",
    "degree0",
    "diagonal_intersection",
    "divisor",
    "germ",
    "is_convex_on",
    "product",
    "pull_back",
    "push_forward",
    "random_translation",
    "recession_fan",
    "refine",
    "star",
    "transversal_intersection",
]


class UnbalancedError(ValueError):
    """The complex violates the balancing condition."""


class NonTransversalError(ValueError):
    """Two cycles do not meet transversally."""


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


# ----------------------------------------------------------------------
# balancing and divisors


def check_balanced(x: WeightedComplex) -> list[tuple[Polyhedron, tuple]]:
    """Ridges at which balancing fails, each with its residue vector.

    The residue is the weighted sum of primitive normals reduced modulo the
    span of the ridge; an empty list means the complex is balanced.
    """
    bad = []
    for tau, sigmas in x.ridges().items():
        total = [Fraction(0)] * x.ambient
        for s in sigmas:
            w = x.weight(s)
            v = primitive_normal(s, tau)
            total = [a + w * b for a, b in zip(total, v)]
        span = tau.span_basis()
        if span:
            unbalanced = rank(span + [total]) > len(span)
        else:
            unbalanced = any(total)
        if unbalanced:
            bad.append((tau, tuple(total)))
    return bad


def refine(x: WeightedComplex, phi: PLFunction) -> WeightedComplex:
    """Subdivide cells along the domains of linearity of a max-function."""
    if not isinstance(phi, MaxFunction):
        return x
    k = x.dim
    cells = list(x.weights.items())
    for comp in phi.regions():
        if len(comp) < 2:
            continue
        nxt = []
        for sigma, w in cells:
            # a cell inside a wall meets two regions in the same piece
            pieces = set()
            eqs, ineqs = sigma.hrep()
            for rows in comp:
                piece = Polyhedron.from_hrep(eqs, list(ineqs) + rows, x.ambient)
                if piece is not None and piece.dim == k:
                    pieces.add(piece)
            nxt.extend((piece, w) for piece in pieces)
        cells = nxt
    return WeightedComplex(x.ambient, k, cells)


def divisor(phi: PLFunction, x: WeightedComplex, prune: bool = True, *, refine_first: bool = True) -> WeightedComplex:
    """The intersection product phi . x, a cycle of one dimension less."""
    if x.dim == 0:
        raise ValueError("cannot intersect a zero-dimensional cycle with a function")
    if refine_first and isinstance(phi, MaxFunction):
        x = refine(x, phi)
    aff = {s: phi.affine_on(s) for s in x.facets()}
    out = {}
    for tau, sigmas in x.ridges().items():
        val = Fraction(0)
        total = [Fraction(0)] * x.ambient
        for s in sigmas:
            w = x.weight(s)
            v = primitive_normal(s, tau)
            val += w * _dot(aff[s][0], v)
            total = [a + w * b for a, b in zip(total, v)]
        val -= _dot(aff[sigmas[0]][0], total)
        out[tau] = val
    return WeightedComplex(x.ambient, x.dim - 1, out, prune=prune)


# ----------------------------------------------------------------------
# local structure


def _quotient(tau: Polyhedron):
    """Matrix q (rows) of a projection Z^n -> Z^n / Lambda_tau and the full basis W."""
    n = tau.ambient
    lat = tau.lattice()
    t = lat.rank
    if t == 0:
        ident = [[int(i == j) for j in range(n)] for i in range(n)]
        return ident, ident
    _, _, v = smith_normal_form(lat.basis)
    q = [[v[i][j] for i in range(n)] for j in range(t, n)]
    # W = V^-1, rows w_i; the first t rows span Lambda_tau
    w = invert_unimodular(v)
    return q, w


def star(x: WeightedComplex, tau: Polyhedron):
    """The fan Star_x(tau) in R^n / V_tau and the quotient matrix used."""
    q, _ = _quotient(tau)
    base = tau.interior_point()
    m = len(q)
    out = {}
    for s, w in x.weights.items():
        if tau not in s.faces():
            continue
        gens = [[_dot(row, [a - b for a, b in zip(p, base)]) for row in q] for p in s.points]
        gens += [[_dot(row, r) for row in q] for r in s.rays]
        lins = [[_dot(row, l) for row in q] for l in s.lineality]
        cone = Polyhedron([(0,) * m], gens, lins)
        out[cone] = out.get(cone, Fraction(0)) + w
    return WeightedComplex(m, x.dim - tau.dim, out), q


def germ(phi: PLFunction, x: WeightedComplex, tau: Polyhedron) -> tuple[WeightedComplex, PLFunction]:
    """Star of x at tau together with the induced function on it."""
    fan, q = star(x, tau)
    _, w = _quotient(tau)
    t = tau.lattice().rank
    base = tau.interior_point()
    ref = None
    data = {}
    for s in x.facets():
        if tau not in s.faces():
            continue
        lin, _ = phi.affine_on(s)
        if ref is None:
            ref = lin
        diff = [a - b for a, b in zip(lin, ref)]
        cov = [_dot(w[i], diff) for i in range(t, x.ambient)]
        gens = [[_dot(row, [a - b for a, b in zip(p, base)]) for row in q] for p in s.points]
        gens += [[_dot(row, r) for row in q] for r in s.rays]
        lins = [[_dot(row, l) for row in q] for l in s.lineality]
        cone = Polyhedron([(0,) * len(q)], gens, lins)
        data[cone] = (cov, 0)
    return fan, CellwiseFunction(fan.ambient, data)


def is_convex_on(phi: PLFunction, x: WeightedComplex) -> bool:
    """Local convexity of phi at every ridge of x (refined along phi first)."""
    x = refine(x, phi)
    for tau, sigmas in x.ridges().items():
        q, _ = _quotient(tau)
        lin0 = phi.affine_on(sigmas[0])[0]
        vs, fs = [], []
        for s in sigmas:
            v = primitive_normal(s, tau)
            lin = phi.affine_on(s)[0]
            vs.append([_dot(row, v) for row in q])
            fs.append(_dot([a - b for a, b in zip(lin, lin0)], v))
        k = len(vs)
        ineqs = [tuple(int(i == j) for j in range(k)) for i in range(k)]
        eqs = []
        for c in range(len(q)):
            eqs.append(tuple(int(v[c]) for v in vs))
        _, rays = cone_generators(ineqs, eqs, k)
        for lam in rays:
            if _dot(lam, fs) < 0:
                return False
    return True


# ----------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class CycleMorphism:
    """Integral affine map x -> matrix x + shift from R^n to R^m."""

    matrix: tuple[tuple[int, ...], ...]
    shift: tuple[Fraction, ...] | None = None

    @classmethod
    def linear(cls, matrix) -> "CycleMorphism":
        return cls(tuple(tuple(int(v) for v in row) for row in matrix))

    @property
    def source_dim(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    def __call__(self, x):
        y = [sum(a * b for a, b in zip(row, x)) for row in self.matrix]
        if self.shift is not None:
            y = [a + b for a, b in zip(y, self.shift)]
        return tuple(y)

    def image(self, cell: Polyhedron) -> Polyhedron:
        return cell.linear_image(self.matrix, self.shift)

    def compose(self, other: "CycleMorphism") -> "CycleMorphism":
        """self o other."""
        m = [[sum(self.matrix[i][k] * other.matrix[k][j] for k in range(self.source_dim))
              for j in range(other.source_dim)] for i in range(self.target_dim)]
        shift = None
        if other.shift is not None or self.shift is not None:
            inner = other.shift if other.shift is not None else (0,) * other.target_dim
            shift = tuple(Fraction(v) for v in self(inner))
        return CycleMorphism(tuple(tuple(r) for r in m), shift)


def push_forward(f: CycleMorphism, x: WeightedComplex) -> WeightedComplex:
    """f_* x: images of facets on which f is injective, weighted by lattice indices."""
    items = []
    for s, w in x.weights.items():
        img = f.image(s)
        if img.dim != x.dim:
            continue
        gens = [[sum(a * b for a, b in zip(row, g)) for row in f.matrix] for g in s.lattice().basis]
        idx = _index_in_lattice(gens, img.lattice())
        items.append((img, w * idx))
    return merge_cells(f.target_dim, x.dim, items)


def _index_in_lattice(gens, lat: Sublattice):
    idx = index_in(gens, lat)
    if idx is INFINITE:
        raise ValueError("map is not injective on a facet")
    return idx


def pull_back(f: CycleMorphism, phi: PLFunction) -> PLFunction:
    if isinstance(phi, MaxFunction):
        return phi.compose(f.matrix, f.shift)
    return Pullback(phi, f.matrix, f.shift)


# ----------------------------------------------------------------------
# products and intersections


def product(x: WeightedComplex, y: WeightedComplex) -> WeightedComplex:
    cells = {}
    for s, w in x.weights.items():
        for t, v in y.weights.items():
            cells[s.product(t)] = w * v
    return WeightedComplex(x.ambient + y.ambient, x.dim + y.dim, cells)


def diagonal_intersection(x: WeightedComplex, y: WeightedComplex) -> WeightedComplex:
    """Stable intersection x . y in R^r via the diagonal of R^r x R^r."""
    r = x.ambient
    if y.ambient != r:
        raise ValueError("cycles live in different spaces")
    dim = x.dim + y.dim - r
    if dim < 0 or x.is_empty() or y.is_empty():
        return WeightedComplex.empty(r, dim)
    z = product(x, y)
    for i in range(r):
        a = [0] * (2 * r)
        b = [0] * (2 * r)
        a[i] = 1
        b[r + i] = 1
        phi = MaxFunction.tropical_max(2 * r, [(0, a), (0, b)])
        z = divisor(phi, z)
        if z.is_empty():
            return WeightedComplex.empty(r, dim)
    proj = CycleMorphism.linear([[int(j == i) for j in range(2 * r)] for i in range(r)])
    return push_forward(proj, z)


def transversal_intersection(x: WeightedComplex, y: WeightedComplex) -> WeightedComplex:
    """Set-theoretic intersection weighted by lattice indices; requires transversality."""
    r = x.ambient
    dim = x.dim + y.dim - r
    items = []
    for s, w in x.weights.items():
        for t, v in y.weights.items():
            inter = s.intersection(t)
            if inter is None:
                continue
            if dim < 0 or inter.dim != dim:
                raise NonTransversalError("cells meet in dimension %d, expected %d" % (inter.dim, dim))
            q = inter.interior_point()
            if not (s.in_relative_interior(q) and t.in_relative_interior(q)):
                raise NonTransversalError("intersection meets the boundary of a cell")
            idx = index_of_sum(s.lattice(), t.lattice())
            if idx is INFINITE:
                raise NonTransversalError("cells do not span the ambient space")
            items.append((inter, w * v * idx))
    if dim < 0:
        return WeightedComplex.empty(r, dim)
    return merge_cells(r, dim, items)


def recession_fan(x: WeightedComplex) -> WeightedComplex:
    items = []
    for s, w in x.weights.items():
        rc = s.recession_cone()
        if rc.dim == x.dim:
            items.append((rc, w))
    return merge_cells(x.ambient, x.dim, items)


def degree0(x: WeightedComplex) -> Fraction:
    return x.degree()


# ----------------------------------------------------------------------
# generic translations


DENOMINATOR_BOUND = 2 ** 16


def random_rational_vector(rng: random.Random, n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-DENOMINATOR_BOUND, DENOMINATOR_BOUND), rng.randint(1, DENOMINATOR_BOUND))
                 for _ in range(n))


def _generic_against(v, x: WeightedComplex, y: WeightedComplex) -> bool:
    r = x.ambient
    for a in x.cells():
        for b in y.cells():
            if a.dim + b.dim >= r:
                continue
            span = a.span_basis() + b.span_basis()
            off = [vi - (pb - pa) for vi, pa, pb in zip(v, a.points[0], b.points[0])]
            if not span:
                if not any(off):
                    return False
            elif rank(span + [off]) == rank(span):
                return False
    return True


def random_translation(x: WeightedComplex, seed: int = 0, against: WeightedComplex | None = None,
                       attempts: int = 32):
    """Translate x by a seeded random rational vector.

    With ``against`` the vector is resampled until x + v meets ``against``
    only in expected dimension (at most ``attempts`` tries).
    """
    rng = random.Random(seed)
    for _ in range(attempts):
        v = random_rational_vector(rng, x.ambient)
        if against is None or _generic_against(v, x, against):
            return x.translate(v), v
    raise RuntimeError("no generic translation found in %d attempts" % attempts)
