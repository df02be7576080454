"""Recursive computation of descendant invariants of toric surfaces and of the line.

Values are reduced by string, dilaton and divisor equations, topological
recursion at point marks and WDVV with two auxiliary curve marks, down to
degree-zero invariants and the initial values with one or two points.
"""
from __future__ import annotations

import threading
from collections import Counter
from fractions import Fraction
from itertools import combinations, product
from math import comb, prod

from ..modcurves import multinomial
from ..parmod import NotReducible
from .keys import InvariantKey, rational_text
from .models import SurfaceModel, build_surface_model
from .preconditions import (
    PreconditionViolation,
    Violation,
    _basic,
    check_degree,
    check_tr_preconditions,
    separated_rays,
)

__all__ = ["GWEngine", "compute_invariant", "degree_zero_invariant", "engine_for", "to_unlabelled"]

STRATEGIES = ("first", "last")
ROUTES = ("unlabelled", "labelled")


def degree_zero_invariant(model: SurfaceModel, conditions) -> Fraction:
    """<prod tau_{a_k}(C_k)>_0 = binom(n-3; a) deg(C_1 ... C_n)."""
    n = len(conditions)
    if n < 3:
        return Fraction(0)
    a = [x for x, _ in conditions]
    return Fraction(multinomial(n - 3, a) * model.product_degree([e for _, e in conditions]))


def to_unlabelled(value, key: InvariantKey) -> Fraction:
    return Fraction(value) / key.degree_factorial()


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


class GWEngine:
    """Memoised recursion on one model.

    ``route="unlabelled"`` works with unlabelled invariants and sums over
    sub-multisets of the degree; ``route="labelled"`` works with labelled
    invariants and sums over subsets of degree labels and marks one at a
    time.  ``strategy`` selects between two admissible reduction orders.
    """

    def __init__(self, model: str | SurfaceModel, strategy: str = "first", route: str = "unlabelled"):
        if strategy not in STRATEGIES:
            raise ValueError("strategy must be one of %s" % ", ".join(STRATEGIES))
        if route not in ROUTES:
            raise ValueError("route must be one of %s" % ", ".join(ROUTES))
        self.model = build_surface_model(model) if isinstance(model, str) else model
        self.strategy = strategy
        self.route = route
        self.stats = Counter()
        self._memo: dict = {}
        self._active: set = set()
        self._lock = threading.RLock()
        m = self.model
        size = len(m.beta)
        self._beta = [(e, f, m.beta[e][f]) for e in range(size) for f in range(size) if m.beta[e][f]]
        self._curves = [e for e in range(size) if m.r == 2 and m.dim(e) == 1]
        self._divisors = m.divisor_classes()

    def __repr__(self):
        return "GWEngine(%s, strategy=%s, route=%s)" % (self.model.name, self.strategy, self.route)

    # -- public ---------------------------------------------------------------

    def invariant(self, key: InvariantKey) -> Fraction:
        """The invariant of the key, unlabelled or labelled according to the route."""
        if key.model != self.model.name:
            raise ValueError("key for %s given to an engine for %s" % (key.model, self.model.name))
        with self._lock:
            return self._value(key.degree, key.conditions)

    def unlabelled(self, key: InvariantKey) -> Fraction:
        v = self.invariant(key)
        return v if self.route == "unlabelled" else to_unlabelled(v, key)

    def labelled(self, key: InvariantKey) -> Fraction:
        v = self.invariant(key)
        return v if self.route == "labelled" else v * key.degree_factorial()

    def ledger(self) -> dict[str, str]:
        """Every memoised value, keyed by canonical key text."""
        with self._lock:
            items = list(self._memo.items())
        out = {}
        for (deg, conds), v in items:
            out[InvariantKey(self.model.name, deg, conds).canonical()] = rational_text(v)
        return dict(sorted(out.items()))

    def clear(self) -> None:
        with self._lock:
            self._memo.clear()
            self.stats.clear()

    # -- dispatch -------------------------------------------------------------

    def _dimension_ok(self, deg, conds) -> bool:
        m = self.model
        return sum(a + m.codim(e) for a, e in conds) == len(conds) + len(deg) + m.r - 3

    def _value(self, deg, conds) -> Fraction:
        if not self._dimension_ok(deg, conds):
            return Fraction(0)
        k = (deg, conds)
        hit = self._memo.get(k)
        if hit is not None:
            return hit
        if k in self._active:
            raise RuntimeError("cyclic reduction at %s" % InvariantKey(self.model.name, deg, conds).canonical())
        self._active.add(k)
        try:
            v = self._compute(deg, conds)
        finally:
            self._active.discard(k)
        self._memo[k] = v
        return v

    def _key(self, deg, conds) -> InvariantKey:
        return InvariantKey(self.model.name, deg, conds)

    def _compute(self, deg, conds) -> Fraction:
        m = self.model
        n, nd = len(conds), len(deg)
        if nd == 0:
            self.stats["degree zero"] += 1
            return degree_zero_invariant(m, conds)
        bad = check_degree(m, deg)
        if bad:
            raise PreconditionViolation(bad, self._key(deg, conds))
        if n + nd < 3:
            return self._unstable(deg, conds)
        top = m.m
        for x, (a, e) in enumerate(conds):
            if e == top and a in (0, 1):
                rest = conds[:x] + conds[x + 1:]
                if n - 1 + nd < 3:
                    return Fraction(0)
                if a == 0:
                    self.stats["string"] += 1
                    out = Fraction(0)
                    for y, (b, f) in enumerate(rest):
                        if b > 0:
                            out += self._value(deg, tuple(sorted(rest[:y] + ((b - 1, f),) + rest[y + 1:])))
                    return out
                self.stats["dilaton"] += 1
                return (n - 1 + nd - 2) * self._value(deg, rest)
        bad = _basic(self._key(deg, conds))
        if bad:
            raise PreconditionViolation(bad, self._key(deg, conds))
        base = self._initial(deg, conds)
        if base is not None:
            return base
        has_psi = any(a > 0 for a, _ in conds)
        strip = self._strippable(deg, conds)
        if self.strategy == "last" and strip is not None:
            return self._strip(deg, conds, strip)
        if has_psi:
            return self._topological_recursion(deg, conds)
        if strip is not None:
            return self._strip(deg, conds, strip)
        return self._wdvv(deg, conds)

    def _initial(self, deg, conds):
        if any(c != (0, 0) for c in conds):
            return None
        n, nd, r = len(conds), len(deg), self.model.r
        if (n, nd) == (1, 2) or (r == 2 and (n, nd) == (2, 3)):
            self.stats["initial"] += 1
            return Fraction(1)
        return None

    # -- divisor equation -------------------------------------------------------

    def _strippable(self, deg, conds):
        """A mark tau_0(B_e) with B_e = div(h_e) and h_e . Delta known."""
        if len(conds) - 1 + len(deg) < 3:
            return None
        idx = [x for x, (a, e) in enumerate(conds) if a == 0 and e in self._divisors]
        if not idx:
            return None
        return idx[0] if self.strategy == "first" else idx[-1]

    def _strip(self, deg, conds, x) -> Fraction:
        # corrections tau_{a_k-1}(h . C_k) vanish: psi-classes sit at points only
        self.stats["divisor"] += 1
        e = conds[x][1]
        return self.model.divisor_degree(e, deg) * self._value(deg, conds[:x] + conds[x + 1:])

    def _aux_candidates(self, deg):
        """Auxiliary divisors div(h) as basis coefficients, the standard h first."""
        m = self.model
        pref = m.preferred_divisor()
        cands = [pref] + [{e: 1} for e in m.divisor_classes() if {e: 1} != pref]
        if self.strategy == "last":
            cands.reverse()
        return [c for c in cands if m.combination_degree(c, deg)]

    def _aux_for_unstable(self, deg, conds):
        cands = self._aux_candidates(deg)
        if not cands:
            raise PreconditionViolation([Violation("unsupported", "no auxiliary divisor meets the degree")],
                                        self._key(deg, conds))
        return cands[0]

    def _unstable(self, deg, conds) -> Fraction:
        """Divisor equation read backwards: <X> = <tau_0(div h) X> / (h . Delta)."""
        self.stats["reverse divisor"] += 1
        c = self._aux_for_unstable(deg, conds)
        total = sum((w * self._value(deg, tuple(sorted(conds + ((0, e),)))) for e, w in c.items()), Fraction(0))
        return total / self.model.combination_degree(c, deg)

    # -- topological recursion ------------------------------------------------

    def _rays(self, spec):
        m = self.model
        if isinstance(spec, dict):
            return m.combination_rays(spec) if m.r == 2 else None
        e = spec[1]
        return m.rays_of(e) if m.r == 2 and m.dim(e) == 1 else None

    def _pair_ok(self, deg, s1, s2) -> bool:
        r1, r2 = self._rays(s1), self._rays(s2)
        if r1 is None or r2 is None:
            return True
        return separated_rays(r1, r2, deg)

    def _tr_choice(self, deg, conds):
        first = self.strategy == "first"
        psi = [x for x, (a, e) in enumerate(conds) if a > 0 and e == 0]
        i = psi[0] if first else psi[-1]
        others = [x for x in range(len(conds)) if x != i]
        if not first:
            others.reverse()
        for k, l in combinations(others, 2):
            if self._pair_ok(deg, conds[k], conds[l]):
                return i, k, l, []
        aux = self._aux_candidates(deg)
        for c in aux:
            for k in others:
                if self._pair_ok(deg, conds[k], c):
                    return i, k, c, [c]
        for c in aux:
            if self._pair_ok(deg, c, c):
                return i, c, c, [c, c]
        raise PreconditionViolation([Violation("iii", "no admissible helper marks for the recursion")],
                                    self._key(deg, conds))

    @staticmethod
    def _expand(conds, spec):
        if isinstance(spec, dict):
            return [((0, e), w) for e, w in sorted(spec.items())]
        return [(conds[spec], 1)]

    def _topological_recursion(self, deg, conds) -> Fraction:
        i, k, l, aux = self._tr_choice(deg, conds)
        if not aux:
            bad = check_tr_preconditions(self._key(deg, conds), i, k, l)
            if bad:
                raise PreconditionViolation(bad, self._key(deg, conds))
        else:
            self.stats["reverse divisor"] += len(aux)
        self.stats["topological recursion"] += 1
        a, e = conds[i]
        used = {i} | {x for x in (k, l) if isinstance(x, int)}
        others = [conds[x] for x in range(len(conds)) if x not in used]
        total = Fraction(0)
        for ck, wk in self._expand(conds, k):
            for cl, wl in self._expand(conds, l):
                t, _ = self._split_sum(deg, [(a - 1, e)], [ck, cl], others)
                total += wk * wl * t
        for c in aux:
            total /= self.model.combination_degree(c, deg)
        return total

    # -- WDVV -------------------------------------------------------------------

    def _wdvv_classes(self, deg, conds):
        m = self.model
        pref = m.preferred_divisor()
        cands = [(pref, pref)]
        for e, f in combinations(self._curves, 2):
            cands.append(({e: 1}, {f: 1}))
        for e in self._curves:
            if ({e: 1}, {e: 1}) != (pref, pref):
                cands.append(({e: 1}, {e: 1}))
        if self.strategy == "last":
            cands.reverse()
        for ci, cj in cands:
            meet = sum(wi * wj * m.alpha[e][f] for e, wi in ci.items() for f, wj in cj.items())
            if meet and self._pair_ok(deg, ci, cj):
                return ci, cj, meet
        raise PreconditionViolation([Violation("iii", "no pair of curves meeting and separated by the degree")],
                                    self._key(deg, conds))

    def _wdvv(self, deg, conds) -> Fraction:
        """Points only, n >= 3: WDVV (ij|kl) on tau_0(C_i) tau_0(C_j) prod_{n-1} tau_0(P).

        The target appears once, in the split I = {i,j}, Delta_I = 0, with
        coefficient deg(C_i . C_j); every other term has smaller degree.
        """
        n = len(conds)
        if self.model.r != 2 or n < 3:
            raise PreconditionViolation([Violation("unsupported", "no reduction available")], self._key(deg, conds))
        ci, cj, _ = self._wdvv_classes(deg, conds)
        self.stats["wdvv"] += 1
        target = (deg, conds)
        pt = (0, 0)
        others = [pt] * (n - 3)
        lhs = rhs = coef = Fraction(0)
        for e, wi in sorted(ci.items()):
            for f, wj in sorted(cj.items()):
                w = wi * wj
                t, c = self._split_sum(deg, [(0, e), (0, f)], [pt, pt], others, target)
                lhs += w * t
                coef += w * c
                t, c = self._split_sum(deg, [(0, e), pt], [(0, f), pt], others, target)
                rhs += w * t
                coef -= w * c
        if not coef:
            raise PreconditionViolation([Violation("iii", "the WDVV equation does not determine the invariant")],
                                        self._key(deg, conds))
        return (rhs - lhs) / coef

    # -- splitting sums -----------------------------------------------------------

    def _degree_splits(self, deg):
        r = self.model.r
        zero = (0,) * r
        if self.route == "unlabelled":
            cnt = sorted(Counter(deg).items())
            for choice in product(*[range(c + 1) for _, c in cnt]):
                s = zero
                for (v, _), x in zip(cnt, choice):
                    s = _add(s, tuple(x * t for t in v))
                if s != zero:
                    continue
                d_i = tuple(v for (v, _), x in zip(cnt, choice) for _ in range(x))
                d_j = tuple(v for (v, c), x in zip(cnt, choice) for _ in range(c - x))
                yield d_i, d_j
        else:
            nd = len(deg)
            for mask in range(1 << nd):
                s = zero
                for t in range(nd):
                    if mask >> t & 1:
                        s = _add(s, deg[t])
                if s != zero:
                    continue
                d_i = tuple(sorted(deg[t] for t in range(nd) if mask >> t & 1))
                d_j = tuple(sorted(deg[t] for t in range(nd) if not mask >> t & 1))
                yield d_i, d_j

    def _mark_splits(self, others):
        if self.route == "unlabelled":
            cnt = sorted(Counter(others).items())
            for choice in product(*[range(c + 1) for _, c in cnt]):
                mult = prod(comb(c, x) for (_, c), x in zip(cnt, choice))
                a_side = tuple(t for (t, _), x in zip(cnt, choice) for _ in range(x))
                b_side = tuple(t for (t, c), x in zip(cnt, choice) for _ in range(c - x))
                yield a_side, b_side, mult
        else:
            no = len(others)
            for mask in range(1 << no):
                yield (tuple(others[t] for t in range(no) if mask >> t & 1),
                       tuple(others[t] for t in range(no) if not mask >> t & 1), 1)

    def _split_sum(self, deg, fixed_a, fixed_b, others, target=None):
        """Sum over reducible splits with fixed_a on one side and fixed_b on the other.

        Terms whose second factor is the target key are not evaluated; their
        coefficient is returned separately.
        """
        total = Fraction(0)
        coef = Fraction(0)
        mark_splits = list(self._mark_splits(tuple(others)))
        for d_i, d_j in self._degree_splits(deg):
            for a_side, b_side, mult in mark_splits:
                ca = tuple(fixed_a) + a_side
                cb = tuple(fixed_b) + b_side
                if len(ca) + len(d_i) < 2 or len(cb) + len(d_j) < 2:
                    continue
                for e, f, beta in self._beta:
                    ka = tuple(sorted(ca + ((0, e),)))
                    kb = tuple(sorted(cb + ((0, f),)))
                    if not (self._dimension_ok(d_i, ka) and self._dimension_ok(d_j, kb)):
                        continue
                    if target is not None and (d_i, ka) == target:
                        coef += mult * beta * self._value(d_j, kb)
                        continue
                    if target is not None and (d_j, kb) == target:
                        coef += mult * beta * self._value(d_i, ka)
                        continue
                    va = self._value(d_i, ka)
                    if not va:
                        continue
                    total += mult * beta * va * self._value(d_j, kb)
        return total, coef

    def splitting_term(self, key: InvariantKey, marks_i, degree_i) -> Fraction:
        """sum_{e,f} <prod_I tau(C) tau_0(B_e)>_{Delta_I} beta_ef <tau_0(B_f) prod_J tau(C)>_{Delta_J}.

        ``marks_i`` indexes key.conditions; ``degree_i`` is a sub-multiset of
        the degree with zero sum (the split must be reducible).
        """
        deg = list(key.degree)
        d_i = []
        for v in degree_i:
            v = tuple(v)
            if v not in deg:
                raise ValueError("%s is not part of the degree" % (v,))
            deg.remove(v)
            d_i.append(v)
        if any(sum(v[t] for v in d_i) for t in range(self.model.r)):
            raise NotReducible("the split is not reducible")
        marks_i = set(marks_i)
        ca = tuple(key.conditions[x] for x in sorted(marks_i))
        cb = tuple(c for x, c in enumerate(key.conditions) if x not in marks_i)
        with self._lock:
            out = Fraction(0)
            for e, f, beta in self._beta:
                out += beta * self._value(tuple(sorted(d_i)), tuple(sorted(ca + ((0, e),)))) \
                    * self._value(tuple(sorted(deg)), tuple(sorted(cb + ((0, f),))))
            return out


_ENGINES: dict = {}
_ENGINES_LOCK = threading.Lock()


def engine_for(model: str, strategy: str = "first", route: str = "unlabelled") -> GWEngine:
    """A shared engine per (model, strategy, route)."""
    name = build_surface_model(model).name
    with _ENGINES_LOCK:
        eng = _ENGINES.get((name, strategy, route))
        if eng is None:
            eng = _ENGINES[(name, strategy, route)] = GWEngine(name, strategy, route)
        return eng


def compute_invariant(key: InvariantKey, strategy: str = "first", route: str = "unlabelled") -> Fraction:
    """The unlabelled invariant <...>_delta of the key."""
    return engine_for(key.model, strategy, route).unlabelled(key)
