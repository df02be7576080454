"""Fan-level checks of the forgetful, evaluation and psi identities for maps."""
from __future__ import annotations

import random
from fractions import Fraction

from ..modcurves import MarkedTree, enumerate_types, forgetful_identities
from ..report import Report
from ..tropfan import MaxFunction, divisor, pull_back, push_forward
from .degree import h_dot_degree
from .space import ParamSpace

__all__ = ["map_equations_suite", "random_curve", "standard_h"]


def standard_h(r: int) -> MaxFunction:
    """max{0, x_1, ..., x_r}."""
    terms = [(0, (0,) * r)] + [(0, tuple(int(i == j) for j in range(r))) for i in range(r)]
    return MaxFunction.tropical_max(r, terms)


def random_curve(space: ParamSpace, rng: random.Random):
    """A random curve of maximal type with positive rational lengths."""
    types = enumerate_types(space.labels, len(space.labels) - 3)
    t = rng.choice(types)
    lengths = {s: Fraction(rng.randint(1, 40), rng.randint(1, 7)) for s in t.splits}
    tree = MarkedTree.from_splits(space.labels, t.splits, lengths)
    pos = [Fraction(rng.randint(-30, 30), rng.randint(1, 5)) for _ in range(space.r)]
    return space.curve(tree, pos)


def map_equations_suite(space: ParamSpace, extra: int = 0, seed: int = 0, samples: int = 20) -> Report:
    """Identities relating the space with one more mark ``extra`` to ``space``."""
    rep = Report("map equations: %r" % (space,))
    big = space.with_mark(extra)
    small_fs = space.fan_space()
    big_fs = big.fan_space()
    n_leaves = len(space.labels)
    forgetful_identities(big_fs, list(space.marks), extra,
                         dilaton_factor=n_leaves - 2, report=rep)

    _, ft = big_fs.forgetful(extra)
    x = big.complex()
    h = standard_h(space.r)
    hd = h_dot_degree(h, space.degree)
    ev0 = big.eval_map(extra).morphism()
    lhs = push_forward(ft, divisor(pull_back(ev0, h), x))
    rep.add("ft_*(ev_0^* h . M) = (h.Delta) M", lhs.equals(small_fs.complex().scaled(hd)), "h.Delta = %s" % hd)

    rng = random.Random(seed)
    ok = True
    for _ in range(samples):
        c = random_curve(big, rng)
        pt = big.coordinates(c)
        for k in big.marks:
            ev = big.eval_map(k)
            ok &= ev(pt) == ev.apply(c)
            other = big.marks[-1] if big.anchor != big.marks[-1] else big.marks[0]
            ok &= ev.apply(c) == c.reanchor(other).leaf_position(k)
    rep.add("ev_k linear map agrees with the tree formula for every anchor", ok)

    ok = True
    marks = list(big.marks)
    for i, k in enumerate(marks):
        for l in marks[i + 1:]:
            if n_leaves + 1 < 4:
                continue
            d = divisor(big_fs.phi({k, l}), x)
            mk, ml = big.eval_map(k).matrix, big.eval_map(l).matrix
            for cell in d.facets():
                for v in list(cell.rays) + list(cell.lineality):
                    ok &= all(sum(a * b for a, b in zip(rk, v)) == sum(a * b for a, b in zip(rl, v))
                              for rk, rl in zip(mk, ml))
    rep.add("ev_k = ev_l on div phi_kl", ok)
    return rep
