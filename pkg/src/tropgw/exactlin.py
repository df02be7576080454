"""Exact integer and rational linear algebra.

Everything here works with Python ints and :class:`fractions.Fraction`;
no floating point value ever enters a computation.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "INFINITE",
    "Index",
    "IntMatrix",
    "Sublattice",
    "det",
    "hermite_normal_form",
    "index_in",
    "index_of_sum",
    "inverse",
    "invert_unimodular",
    "lattice_index",
    "nullspace",
    "primitive_integer",
    "primitive_vector",
    "rank",
    "rref",
    "saturate",
    "smith_normal_form",
    "solve",
]

IntMatrix = tuple[tuple[int, ...], ...]


class Index(enum.Enum):
    """Marker for the index of a sublattice of lower rank."""

    INFINITE = "infinite"

    def __str__(self) -> str:
        return "infinite"


INFINITE = Index.INFINITE


def _mat(m: Iterable[Iterable[int]]) -> list[list[int]]:
    rows = [list(r) for r in m]
    for r in rows:
        for x in r:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError("non-integral entry %s" % x)
            elif not isinstance(x, int):
                raise TypeError("integer matrix expected, got %r" % type(x))
    return [[int(x) for x in r] for r in rows]


def _freeze(m: list[list[int]]) -> IntMatrix:
    return tuple(tuple(r) for r in m)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U @ m @ V == D`` and U, V unimodular.

    D is diagonal with non-negative entries d_1 | d_2 | ... .
    """
    a = _mat(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for r in a:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    t = 0
    while t < min(rows, cols):
        # smallest non-zero entry of the remaining block becomes the pivot
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        done = False
            if not done:
                best = None
                for i in range(t, rows):
                    if a[i][t] and (best is None or abs(a[i][t]) < abs(a[best][t])):
                        best = i
                swap_rows(t, best)
                bestc = None
                for j in range(t, cols):
                    if a[t][j] and (bestc is None or abs(a[t][j]) < abs(a[t][bestc])):
                        bestc = j
                swap_cols(t, bestc)
                continue
            # divisibility of the rest of the block
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return _freeze(u), _freeze(a), _freeze(v)


def smith_diagonal(m: Sequence[Sequence[int]]) -> list[int]:
    _, d, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def hermite_normal_form(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Row Hermite normal form of the row lattice, zero rows dropped.

    Pivots are positive and entries above a pivot lie in ``[0, pivot)``.
    """
    a = [r for r in _mat(m)]
    if not a:
        return ()
    cols = len(a[0])
    out: list[list[int]] = []
    pivots: list[int] = []
    rest = [r for r in a if any(r)]
    for c in range(cols):
        if not rest:
            break
        with_c = [r for r in rest if r[c]]
        others = [r for r in rest if not r[c]]
        if not with_c:
            continue
        # gcd-combine the entries in column c
        while len(with_c) > 1:
            with_c.sort(key=lambda r: abs(r[c]))
            piv = with_c[0]
            nxt = [piv]
            for r in with_c[1:]:
                q = r[c] // piv[c]
                r2 = [x - q * y for x, y in zip(r, piv)]
                if r2[c]:
                    nxt.append(r2)
                elif any(r2):
                    others.append(r2)
            with_c = nxt
        piv = with_c[0]
        if piv[c] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        pivots.append(c)
        rest = others
    for i in range(len(out)):
        c = pivots[i]
        for k in range(i):
            q = out[k][c] // out[i][c]
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], out[i])]
    return _freeze(out)


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free elimination)."""
    a = _mat(m)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("square matrix expected")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


# ----------------------------------------------------------------------
# rational elimination


def rref(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in m]
    if not a:
        return [], []
    cols = len(a[0])
    piv: list[int] = []
    r = 0
    for c in range(cols):
        p = None
        for i in range(r, len(a)):
            if a[i][c] != 0:
                p = i
                break
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], piv


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[0]) if m else 0


def nullspace(m: Sequence[Sequence], cols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : m x = 0} over Q."""
    if cols is None:
        cols = len(m[0])
    rows, piv = rref(m) if m else ([], [])
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * cols
        x[f] = Fraction(1)
        for r, c in zip(rows, piv):
            x[c] = -r[f]
        basis.append(x)
    return basis


def solve(m: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution x of m x = b over Q (free variables set to 0), or None."""
    cols = len(m[0]) if m else 0
    aug = [list(r) + [bi] for r, bi in zip(m, b)]
    rows, piv = rref(aug)
    if cols in piv:
        return None
    x = [Fraction(0)] * cols
    for r, c in zip(rows, piv):
        x[c] = r[cols]
    return x


def primitive_integer(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    """Inverse over Q; raises ZeroDivisionError for singular matrices."""
    n = len(m)
    aug = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    rows, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in rows]


def invert_unimodular(v: Sequence[Sequence[int]]) -> list[list[int]]:
    inv = inverse(v)
    if any(x.denominator != 1 for r in inv for x in r):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in r] for r in inv]


def saturate(gens: Sequence[Sequence], ambient_rank: int) -> IntMatrix:
    """HNF basis of span_Q(gens) intersected with Z^n."""
    ints = [primitive_integer(g) for g in gens]
    ints = [g for g in ints if any(g)]
    if not ints:
        return ()
    _, d, v = smith_normal_form(ints)
    r = sum(1 for i in range(min(len(d), ambient_rank)) if d[i][i])
    vinv = invert_unimodular(v)
    return hermite_normal_form(vinv[:r])


# ----------------------------------------------------------------------
# sublattices


@dataclass(frozen=True)
class Sublattice:
    """A sublattice of Z^n stored by its row Hermite basis."""

    ambient_rank: int
    basis: IntMatrix

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]], ambient_rank: int) -> "Sublattice":
        rows = [tuple(int(x) for x in g) for g in gens]
        for r in rows:
            if len(r) != ambient_rank:
                raise ValueError("generator of wrong length")
        return cls(ambient_rank, hermite_normal_form(rows) if rows else ())

    @classmethod
    def saturated(cls, gens: Iterable[Sequence], ambient_rank: int) -> "Sublattice":
        return cls(ambient_rank, saturate(list(gens), ambient_rank))

    @classmethod
    def full(cls, n: int) -> "Sublattice":
        return cls(n, _freeze(_identity(n)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, x: Sequence) -> list[Fraction] | None:
        """Coefficients of x in the basis (rational), or None if x is outside the span."""
        if not self.basis:
            return [] if not any(x) else None
        cols = list(zip(*self.basis))
        return solve([list(c) for c in cols], list(x))

    def contains(self, x: Sequence) -> bool:
        c = self.coordinates(x)
        return c is not None and all(Fraction(t).denominator == 1 for t in c)

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative of x modulo the lattice."""
        y = [int(t) for t in x]
        for row in self.basis:
            c = next(i for i, t in enumerate(row) if t)
            q = y[c] // row[c]
            if q:
                y = [a - q * b for a, b in zip(y, row)]
        return tuple(y)


def index_in(sub: Sequence[Sequence[int]], sup: Sublattice):
    """|sup / span_Z(sub)|, sub assumed inside sup."""
    if sup.rank == 0:
        return 1
    coords = []
    for g in sub:
        c = sup.coordinates(g)
        if c is None or any(t.denominator != 1 for t in c):
            raise ValueError("generator not contained in the lattice")
        coords.append([int(t) for t in c])
    if not coords:
        return INFINITE
    diag = smith_diagonal(coords)
    nz = [d for d in diag if d]
    if len(nz) < sup.rank:
        return INFINITE
    out = 1
    for d in nz:
        out *= d
    return out


def lattice_index(h: Sequence[Sequence[int]], dom: Sublattice | None = None):
    """|Z^l / h(dom)| for an l x n integer matrix h; ``INFINITE`` if rank drops."""
    hm = _mat(h)
    l = len(hm)
    n = len(hm[0]) if l else 0
    gens = dom.basis if dom is not None else _identity(n)
    images = [[sum(hm[i][j] * g[j] for j in range(n)) for i in range(l)] for g in gens]
    return index_in(images, Sublattice.full(l))


def index_of_sum(a: Sublattice, b: Sublattice):
    """|Z^n / (a + b)|, ``INFINITE`` when a + b has lower rank."""
    n = a.ambient_rank
    gens = list(a.basis) + list(b.basis)
    return index_in(gens, Sublattice.full(n))


def primitive_vector(small: Sublattice, big: Sublattice, direction: Sequence) -> tuple[int, ...]:
    """Generator v of big / small (rank one quotient) pointing along direction.

    The result satisfies Z v + small = big, has positive pairing with the
    direction in the quotient, and is reduced modulo ``small``.
    """
    if big.rank != small.rank + 1:
        raise ValueError("quotient must have rank one")
    k = big.rank
    # small in coordinates of big
    coords = []
    for g in small.basis:
        c = big.coordinates(g)
        if c is None or any(t.denominator != 1 for t in c):
            raise ValueError("small lattice is not contained in big lattice")
        coords.append([int(t) for t in c])
    if coords:
        ker = nullspace(coords, k)
        func = primitive_integer(ker[0])
    else:
        func = (1,)
    # integer u with func . u = 1
    uu, d, v = smith_normal_form([list(func)])
    if d[0][0] != 1:
        raise ValueError("small lattice is not saturated in big lattice")
    u = [uu[0][0] * v[i][0] for i in range(k)]
    dc = big.coordinates(direction)
    if dc is None:
        raise ValueError("direction not in span of big lattice")
    s = sum(Fraction(f) * x for f, x in zip(func, dc))
    if s == 0:
        raise ValueError("direction lies in the small lattice span")
    if s < 0:
        u = [-x for x in u]
    vec = [sum(u[i] * big.basis[i][j] for i in range(k)) for j in range(big.ambient_rank)]
    return small.reduce(vec)
