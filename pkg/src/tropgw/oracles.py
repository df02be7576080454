"""Independent reference values: Kontsevich's recursion and brute-force curve enumeration.

Nothing here uses the recursion engine.  The enumeration lists the weighted
psi-product types on M_{0,n+#Delta}, writes every evaluation map in edge
length coordinates and solves for the curves through random points.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .exactlin import det, solve
from .modcurves import psi_product

__all__ = ["enumerate_point_invariant", "hurwitz_closed_form", "kontsevich", "line_cover_count"]


@lru_cache(maxsize=None)
def kontsevich(d: int) -> int:
    """Number of rational plane curves of degree d through 3d - 1 general points."""
    if d < 1:
        raise ValueError("degree must be positive")
    if d == 1:
        return 1
    total = 0
    for da in range(1, d):
        db = d - da
        total += kontsevich(da) * kontsevich(db) * da * da * db * (
            db * comb(3 * d - 4, 3 * da - 2) - da * comb(3 * d - 4, 3 * da - 1))
    return total


def hurwitz_closed_form(d: int) -> Fraction:
    """Simple rational Hurwitz number (2d-2)! d^(d-3) / d!."""
    return Fraction(factorial(2 * d - 2) * Fraction(d) ** (d - 3)) / factorial(d)


def _random_points(n: int, r: int, rng: random.Random) -> list[tuple[Fraction, ...]]:
    return [tuple(Fraction(rng.randrange(-10 ** 6, 10 ** 6), rng.randrange(1, 10 ** 4) * 7 + 1) for _ in range(r))
            for _ in range(n)]


def enumerate_point_invariant(directions: Sequence[Sequence[int]], psi: Sequence[int], seed: int = 0,
                              attempts: int = 5) -> int:
    """Labelled <prod_k tau_{a_k}(P_k)>_Delta by listing curves through random points.

    Marks are 1..n with psi exponents ``psi``; degree leaves follow.  For each
    weighted type of the psi-product, the positions ev_k = P + sum of edge
    lengths times edge directions (towards k) must equal the points; a
    solution with positive lengths contributes weight * |det|.
    """
    dirs = [tuple(int(x) for x in v) for v in directions]
    r = len(dirs[0])
    n = len(psi)
    if n < 1:
        raise ValueError("enumeration needs a marked point")
    labels = list(range(1, n + len(dirs) + 1))
    direction = {n + 1 + i: v for i, v in enumerate(dirs)}
    exps = {k: (psi[k - 1] if k <= n else 0) for k in labels}
    prod_fan = psi_product(labels, exps)
    if prod_fan.dim + r != r * n:
        return 0
    rng = random.Random(seed)
    for _ in range(attempts):
        points = _random_points(n, r, rng)
        total = 0
        generic = True
        for tree, weight in prod_fan.weights.items():
            splits = list(tree.splits)
            rows, rhs = [], []
            for k in range(1, n + 1):
                for c in range(r):
                    row = []
                    for s in splits:
                        if s.separates(1, k):
                            side = s.side_of(k)
                            row.append(sum(direction[x][c] for x in side if x in direction))
                        else:
                            row.append(0)
                    rows.append(row + [int(c == j) for j in range(r)])
                    rhs.append(points[k - 1][c])
            d = det(rows)
            if d == 0:
                continue
            sol = solve(rows, rhs)
            lengths = sol[:len(splits)]
            if any(x == 0 for x in lengths):
                generic = False
                break
            if all(x > 0 for x in lengths):
                total += weight * abs(d)
        if generic:
            return total
    raise ArithmeticError("no generic point configuration found")


def line_cover_count(d: int, seed: int = 0) -> Fraction:
    """<tau_1(pt)^(2d-2)>_d / d!^2 for covers of the line, by enumeration.

    For d = 1 there are no marks and the moduli space is unstable: the only
    cover is the identity of R, counted once.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    if d == 1:
        return Fraction(1)
    dirs = [(1,)] * d + [(-1,)] * d
    return Fraction(enumerate_point_invariant(dirs, [1] * (2 * d - 2), seed), factorial(d) ** 2)
