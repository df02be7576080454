"""Small brute-force oracles used only by the tests."""
from fractions import Fraction
from itertools import combinations
from math import gcd


def det_fraction(m):
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return out


def determinantal_divisors(m):
    """Elementary divisors from gcds of k x k minors."""
    rows, cols = len(m), len(m[0])
    prev = 1
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, int(det_fraction([[m[r][c] for c in cs] for r in rs])))
        if g == 0:
            out.extend([0] * (min(rows, cols) - k + 1))
            break
        out.append(g // prev)
        prev = g
    return out
