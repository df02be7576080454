"""The moduli fan of rational tropical curves as a simplicial fan in a lattice quotient.

Distance coordinates live in R^{C(N,2)}; the fan sits in the quotient
by the image of Phi(a)_{ij} = a_i + a_j.  We pick integer coordinates on
Lambda_N / (Lambda_N cap Im Phi) with a Smith normal form, so the quotient
lattice becomes Z^{C(N,2) - N}.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from ..exactlin import hermite_normal_form, invert_unimodular, primitive_integer, smith_normal_form, solve
from ..tropfan import CycleMorphism, Polyhedron, RayValueFunction, WeightedComplex
from .trees import MarkedTree, Partition, enumerate_types, nontrivial_partitions

__all__ = ["ModuliFan", "embed_moduli_fan", "v_vector", "psi_value"]


def v_vector(p: Partition, labels: Sequence | None = None) -> tuple[int, ...]:
    """Separation vector: entry (k,l) is 1 iff the split separates k and l."""
    labels = sorted(p.labels if labels is None else labels)
    return tuple(int(p.separates(k, l)) for k, l in combinations(labels, 2))


def psi_value(n: int, k, p: Partition) -> Fraction:
    """Value of psi_k on the ray of p: |I|(|I|-1)/((n-1)(n-2)) with I the side without k."""
    i = len(p.other if k in p.side else p.side)
    return Fraction(i * (i - 1), (n - 1) * (n - 2))


class ModuliFan:
    """Embedded moduli fan of rational tropical curves with leaves labelled by ``labels``."""

    def __init__(self, labels: Iterable):
        self.labels = tuple(sorted(set(labels)))
        n = len(self.labels)
        if n < 3:
            raise ValueError("need at least three labels")
        self.n = n
        self.pairs = list(combinations(self.labels, 2))
        c = len(self.pairs)
        self.distance_dim = c
        self.ambient = c - n
        lab = frozenset(self.labels)
        everything = [Partition.of([x], lab) for x in self.labels] + nontrivial_partitions(lab) if n >= 4 else \
            [Partition.of([x], lab) for x in self.labels]
        basis = hermite_normal_form([v_vector(p, self.labels) for p in everything])
        if len(basis) != c:
            raise ValueError("separation vectors do not span")
        self._basis = [list(r) for r in basis]
        leaf_vecs = [v_vector(Partition.of([x], lab), self.labels) for x in self.labels]
        leaf_coords = [[int(t) for t in self._coords(v)] for v in leaf_vecs]
        _, _, v = smith_normal_form(leaf_coords)
        self._v = v
        vinv = invert_unimodular(v)
        # lifts of the quotient unit vectors to lattice points in distance coordinates
        self._lifts = [[sum(vinv[n + i][k] * self._basis[k][j] for k in range(c)) for j in range(c)]
                       for i in range(self.ambient)]
        self.partitions = nontrivial_partitions(lab) if n >= 4 else []
        self.rays = {p: self.project(v_vector(p, self.labels)) for p in self.partitions}
        self._split_of_ray = {primitive_integer(r): p for p, r in self.rays.items()}
        self._complex = None

    @property
    def lifts(self) -> list[list[int]]:
        """Distance vectors lifting the unit vectors of the quotient lattice."""
        return self._lifts

    # -- coordinates ----------------------------------------------------

    def _coords(self, x: Sequence) -> list[Fraction]:
        sol = solve([list(col) for col in zip(*self._basis)], list(x))
        if sol is None:
            raise ValueError("vector outside the lattice span")
        return sol

    def project(self, x: Sequence) -> tuple:
        """Image of a distance vector in quotient coordinates."""
        c = self._coords(x)
        out = []
        for j in range(self.n, self.distance_dim):
            out.append(sum(c[k] * self._v[k][j] for k in range(self.distance_dim)))
        return tuple(int(t) if t.denominator == 1 else t for t in out)

    def lift(self, y: Sequence) -> list[Fraction]:
        """A distance vector mapping to the quotient point y."""
        return [sum(Fraction(y[i]) * self._lifts[i][j] for i in range(self.ambient)) for j in range(self.distance_dim)]

    def distances(self, y: Sequence) -> dict:
        """Pairwise distances of a point, defined up to Im Phi."""
        return dict(zip(self.pairs, self.lift(y)))

    # -- cones ----------------------------------------------------------

    def cone(self, splits: Iterable[Partition]) -> Polyhedron:
        return Polyhedron([(0,) * self.ambient], [self.rays[p] for p in splits], minimal=True)

    def type_of(self, cone: Polyhedron) -> MarkedTree:
        return MarkedTree(frozenset(self.labels), frozenset(self._split_of_ray[r] for r in cone.rays))

    def split_of_ray(self, ray: Sequence[int]) -> Partition:
        return self._split_of_ray[tuple(ray)]

    def point(self, tree: MarkedTree) -> tuple[Fraction, ...]:
        if tree.lengths is None:
            raise ValueError("tree without lengths")
        out = [Fraction(0)] * self.ambient
        for s in tree.splits:
            out = [a + tree.lengths[s] * b for a, b in zip(out, self.rays[s])]
        return tuple(out)

    def complex(self) -> WeightedComplex:
        """The whole moduli space with all weights one."""
        if self._complex is None:
            dim = self.n - 3
            cells = {self.cone(t.splits): 1 for t in enumerate_types(self.labels, dim)}
            self._complex = WeightedComplex(self.ambient, dim, cells)
        return self._complex

    def subfan(self, weights: dict) -> WeightedComplex:
        """Cycle from a map type -> weight."""
        if not weights:
            return WeightedComplex.empty(self.ambient, 0)
        dim = next(iter(weights)).dim
        return WeightedComplex(self.ambient, dim, {self.cone(t.splits): w for t, w in weights.items()})

    def weights_by_type(self, x: WeightedComplex) -> dict:
        return {self.type_of(c): w for c, w in x.weights.items()}

    # -- functions ------------------------------------------------------

    def ray_function(self, values) -> RayValueFunction:
        """Function linear on cones with the given value (callable or dict) on each split."""
        get = values if callable(values) else (lambda p: values.get(p, 0))
        return RayValueFunction(self.ambient, {primitive_integer(r): get(p) for p, r in self.rays.items()})

    def phi(self, part: Partition | Iterable) -> RayValueFunction:
        if not isinstance(part, Partition):
            part = Partition.of(part, self.labels)
        if part.labels != frozenset(self.labels):
            raise ValueError("split over a different label set")
        return self.ray_function(lambda p: 1 if p == part else 0)

    def psi(self, k) -> RayValueFunction:
        if k not in self.labels:
            raise ValueError("unknown label %r" % (k,))
        return self.ray_function(lambda p: psi_value(self.n, k, p))

    # -- forgetful maps -------------------------------------------------

    def forgetful(self, label) -> tuple["ModuliFan", CycleMorphism]:
        """Target fan and matrix of the map forgetting ``label``."""
        target = moduli_fan(tuple(x for x in self.labels if x != label))
        keep = [i for i, (a, b) in enumerate(self.pairs) if label not in (a, b)]
        cols = []
        for lift in self._lifts:
            cols.append(target.project([lift[i] for i in keep]))
        matrix = [[int(cols[i][t]) for i in range(self.ambient)] for t in range(target.ambient)]
        return target, CycleMorphism.linear(matrix)


@lru_cache(maxsize=None)
def moduli_fan(labels: tuple) -> ModuliFan:
    return ModuliFan(labels)


def embed_moduli_fan(n: int | Iterable, max_n: int = 7) -> ModuliFan:
    """Moduli fan on labels 1..n (or the given labels)."""
    labels = tuple(range(1, n + 1)) if isinstance(n, int) else tuple(sorted(n))
    if len(labels) > max_n:
        raise ValueError("fan embedding limited to %d leaves" % max_n)
    return moduli_fan(labels)
