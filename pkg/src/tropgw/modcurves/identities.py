"""Fan-level verification of the forgetful-map and psi-class identities."""
from __future__ import annotations

import itertools

from ..report import Report
from ..tropfan import (
    CycleMorphism,
    PLFunction,
    Pullback,
    WeightedComplex,
    divisor,
    is_convex_on,
    product,
    push_forward,
)
from .moduli_fan import ModuliFan, embed_moduli_fan, moduli_fan
from .psi import abstract_invariant, boundary_divisor_weight, psi_divisor_weight, psi_product
from .trees import Partition

__all__ = ["FanSpace", "forgetful_identities", "forgetful_pushpull_suite", "moduli_fan_suite", "string_dilaton_abstract"]


class FanSpace:
    """A moduli fan, optionally times R^r (the parametrized moduli space)."""

    def __init__(self, fan: ModuliFan, r: int = 0):
        self.fan = fan
        self.r = r
        self.ambient = fan.ambient + r
        m = fan.ambient
        self._proj = [[int(i == j) for j in range(self.ambient)] for i in range(m)]
        self._complex = None

    @property
    def labels(self):
        return self.fan.labels

    def complex(self) -> WeightedComplex:
        if self._complex is None:
            x = self.fan.complex()
            if self.r:
                x = product(x, WeightedComplex.space(self.r))
            self._complex = x
        return self._complex

    def _lift(self, f) -> PLFunction:
        return f if not self.r else Pullback(f, self._proj)

    def phi(self, part) -> PLFunction:
        return self._lift(self.fan.phi(part))

    def psi(self, k) -> PLFunction:
        return self._lift(self.fan.psi(k))

    def partition(self, side) -> Partition:
        return Partition.of(side, self.labels)

    def forgetful(self, label) -> tuple["FanSpace", CycleMorphism]:
        target, f = self.fan.forgetful(label)
        if not self.r:
            return FanSpace(target, 0), f
        m, m2 = self.fan.ambient, target.ambient
        rows = [list(f.matrix[i]) + [0] * self.r for i in range(m2)]
        rows += [[0] * m + [int(i == j) for j in range(self.r)] for i in range(self.r)]
        return FanSpace(target, self.r), CycleMorphism.linear(rows)


def _same_function(f, g, x: WeightedComplex) -> bool:
    """Agreement on x: compare the affine pieces on every generator of every facet."""
    for c in x.facets():
        (lf, cf), (lg, cg) = f.affine_on(c), g.affine_on(c)
        for v in list(c.rays) + list(c.lineality):
            if sum(a * b for a, b in zip(lf, v)) != sum(a * b for a, b in zip(lg, v)):
                return False
        for v in c.points:
            if sum(a * b for a, b in zip(lf, v)) + cf != sum(a * b for a, b in zip(lg, v)) + cg:
                return False
    return True


def _power(f, a, x):
    for _ in range(a):
        x = divisor(f, x)
    return x


def forgetful_identities(big: FanSpace, marks, extra=0, *, dilaton_factor: int, report: Report | None = None,
                         thorough: bool = True) -> Report:
    """Identities relating big (with the extra leaf) to the space forgetting it."""
    rep = report or Report("forgetful identities")
    small, ft = big.forgetful(extra)
    x = big.complex()
    m_small = small.complex()
    labels = [l for l in big.labels if l != extra]
    n_small = len(small.labels)
    empty_small = WeightedComplex.empty(small.ambient, m_small.dim)

    # lattice images of the rays
    ok = True
    for p, ray in big.fan.rays.items():
        img = ft(tuple(ray) + (0,) * big.r)[:small.fan.ambient]
        a, b = p.side - {extra}, p.other - {extra}
        if len(a) >= 2 and len(b) >= 2:
            want = small.fan.rays[Partition.of(a, small.labels)]
        else:
            want = (0,) * small.fan.ambient
        ok &= tuple(img) == tuple(want)
    rep.add("ft maps V_I|J to V_(I-0)|(J-0)", ok)

    # pull-backs of boundary functions
    ok = True
    for p in small.fan.partitions:
        lhs = Pullback(small.phi(p), ft.matrix)
        rhs = big.phi(p.side | {extra}) + big.phi(p.side)
        ok &= _same_function(lhs, rhs, x)
    rep.add("ft^* phi_I'|J' = phi_I'0|J' + phi_I'|J'0", ok)

    for k in marks:
        psi_k = big.psi(k)
        ftpsi = Pullback(small.psi(k), ft.matrix)
        phi0k = big.phi({extra, k})
        d_psi = divisor(psi_k, x)
        d_ft = divisor(ftpsi, x)
        d_phi = divisor(phi0k, x)
        rep.add("div psi_%s = div ft^*psi_%s + div phi_0%s" % (k, k, k), d_psi.equals(d_ft + d_phi))

        ok = True
        for tau in x.ridges():
            parts = set(big.fan.type_of(_cone_part(big, tau)).four_valent_parts())
            zero, kk = frozenset([extra]), frozenset([k])
            row = (d_psi.weight(tau), d_ft.weight(tau), d_phi.weight(tau))
            if frozenset([extra, k]) in parts:
                ok &= row == (0, 1, -1)
            elif zero in parts and kk in parts:
                ok &= row == (1, 0, 1)
            elif kk in parts and any(extra in q and len(q) > 1 for q in parts):
                ok &= row == (1, 1, 0)
        rep.add("weight table for psi_%s, ft^*psi_%s, phi_0%s" % (k, k, k), ok)

        rep.add("phi_0%s^2 = -ft^*psi_%s phi_0%s" % (k, k, k),
                divisor(phi0k, d_phi).equals(-divisor(ftpsi, d_phi)) if d_phi.dim > 0 else True)

        for a in range(1, x.dim + 1):
            lhs = _power(psi_k, a, x)
            first = _power(ftpsi, a, x)
            mixed = _power(ftpsi, a - 1, d_phi)
            rep.add("psi_%s^%d = ft^*psi^%d + ft^*psi^%d phi_0%s" % (k, a, a, a - 1, k), lhs.equals(first + mixed))
            alt = _power(phi0k, a, x).scaled((-1) ** (a - 1))
            rep.add("psi_%s^%d = ft^*psi^%d + (-1)^%d phi_0%s^%d" % (k, a, a, a - 1, k, a), lhs.equals(first + alt))

        rep.add("ft_* div phi_0%s = M" % k, push_forward(ft, d_phi).equals(m_small))
        rep.add("ft_* div psi_%s = M" % k, push_forward(ft, d_psi).equals(m_small))

    # phi_ij phi_ik = 0 and phi_ij psi_i = 0
    labs = list(big.labels)
    triples = list(itertools.permutations(labs, 3))
    if not thorough:
        triples = triples[:6]
    ok1 = ok2 = True
    for i, j, k in triples:
        dij = divisor(big.phi({i, j}), x)
        if dij.dim > 0:
            ok1 &= divisor(big.phi({i, k}), dij).is_empty()
            if i in marks or i == extra:
                ok2 &= divisor(big.psi(i), dij).is_empty()
    rep.add("phi_ij phi_ik = 0", ok1)
    rep.add("phi_ij psi_i = 0", ok2)

    if n_small > 4:
        ok = True
        for p in big.fan.partitions:
            img = push_forward(ft, divisor(big.phi(p), x))
            special = any(side == frozenset([extra, k]) for side in p.sides() for k in labels)
            ok &= img.equals(m_small if special else empty_small)
        rep.add("ft_* div phi_I|J is M iff a side is {0,k}", ok)

    l1 = marks[0]
    l2, l3 = [l for l in labs if l != l1][:2]
    d1 = divisor(big.psi(l1), x)
    acc = WeightedComplex.empty(x.ambient, x.dim - 1)
    for p in big.fan.partitions:
        side1 = p.side_of(l1)
        if l2 not in side1 and l3 not in side1:
            acc = acc + divisor(big.phi(p), x)
    rep.add("div psi_%s = sum of phi_I|J with %s in I and %s,%s in J" % (l1, l1, l2, l3), d1.equals(acc))

    rep.add("ft_* div psi_0 = %d M" % dilaton_factor,
            push_forward(ft, divisor(big.psi(extra), x)).equals(m_small.scaled(dilaton_factor)))
    return rep


def _cone_part(space: FanSpace, cell):
    if not space.r:
        return cell
    proj = [[int(i == j) for j in range(space.ambient)] for i in range(space.fan.ambient)]
    return cell.linear_image(proj)


def forgetful_pushpull_suite(n: int, max_n: int = 7, thorough: bool = True) -> Report:
    """Identities between the moduli fans with labels {0,..,n} and {1,..,n}."""
    if n + 1 > max_n:
        raise ValueError("fan-level check limited to %d leaves" % max_n)
    if n < 3:
        raise ValueError("need n >= 3")
    big = FanSpace(moduli_fan(tuple(range(0, n + 1))))
    rep = Report("forgetful identities n=%d" % n)
    return forgetful_identities(big, list(range(1, n + 1)), 0, dilaton_factor=n - 2, report=rep,
                                thorough=thorough)


def moduli_fan_suite(n: int, max_n: int = 7) -> Report:
    """Psi-products, boundary weights and convexity on the embedded fan."""
    m = embed_moduli_fan(n, max_n)
    x = m.complex()
    rep = Report("moduli fan n=%d" % n)
    bad = 0
    count = 0
    for total in range(0, n - 2):
        for a in itertools.product(range(total + 1), repeat=n):
            if sum(a) != total:
                continue
            count += 1
            y = x
            for k, ak in zip(m.labels, a):
                y = _power(m.psi(k), ak, y)
            comb = psi_product(m.labels, a)
            want = {m.cone(t.splits): w for t, w in comb.weights.items()}
            if y.weights != want:
                bad += 1
    rep.add("psi-products agree with the valence rule", bad == 0, "%d exponent vectors" % count)

    ok = True
    for p in m.partitions:
        d = divisor(m.phi(p), x, prune=False)
        for c, w in d.weights.items():
            ok &= w == boundary_divisor_weight(p, m.type_of(c))
    rep.add("boundary divisor weights are +1/-1/0", ok)

    ok = True
    for k in m.labels:
        d = divisor(m.psi(k), x, prune=False)
        for c, w in d.weights.items():
            ok &= w == psi_divisor_weight(k, m.type_of(c))
    rep.add("psi divisor weight is 1 iff {k} is a branch", ok)

    rep.add("psi_k is convex", all(is_convex_on(m.psi(k), x) for k in m.labels))
    return rep


def string_dilaton_abstract(n_max: int = 8) -> Report:
    """String and dilaton relations among the closed-form abstract invariants."""
    rep = Report("string and dilaton")
    ok_s = ok_d = True
    for n in range(4, n_max + 1):
        for a in itertools.product(range(n - 2), repeat=n - 1):
            if sum(a) != n - 3:
                continue
            # string: a new leaf with exponent 0
            lhs = abstract_invariant((0,) + a)
            rhs = sum(abstract_invariant(a[:i] + (a[i] - 1,) + a[i + 1:]) for i in range(len(a)) if a[i] > 0)
            ok_s &= lhs == rhs
        for a in itertools.product(range(n - 3), repeat=n - 1):
            if sum(a) != n - 4 or n - 1 < 3:
                continue
            ok_d &= abstract_invariant((1,) + a) == (n - 1 - 2) * abstract_invariant(a)
    rep.add("string equation", ok_s)
    rep.add("dilaton equation", ok_d)
    return rep
