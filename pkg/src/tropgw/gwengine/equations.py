"""Explicit relations between invariants: splitting, WDVV, topological recursion, string, dilaton, divisor.

Each builder returns an Equation whose sides are linear combinations of
products of invariants.  The sums are written out partition by partition,
independently of the grouped sums inside the engine, so evaluating an
equation with engine values is a consistency check of the engine.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from ..parmod import NotReducible
from .keys import InvariantKey
from .preconditions import PreconditionViolation, check_tr_preconditions, check_wdvv_preconditions

__all__ = [
    "Equation",
    "Term",
    "dilaton_rewrite",
    "divisor_rewrite",
    "splitting_lemma",
    "string_rewrite",
    "topological_recursion",
    "wdvv_reduce",
]


@dataclass(frozen=True)
class Term:
    coefficient: Fraction
    factors: tuple[InvariantKey, ...]

    def value(self, engine, labelled: bool) -> Fraction:
        out = Fraction(self.coefficient)
        for k in self.factors:
            if not out:
                return out
            out *= engine.labelled(k) if labelled else engine.unlabelled(k)
        return out


@dataclass
class Equation:
    name: str
    lhs: list[Term] = field(default_factory=list)
    rhs: list[Term] = field(default_factory=list)
    labelled: bool = False

    def evaluate(self, engine) -> tuple[Fraction, Fraction]:
        return (sum((t.value(engine, self.labelled) for t in self.lhs), Fraction(0)),
                sum((t.value(engine, self.labelled) for t in self.rhs), Fraction(0)))

    def holds(self, engine) -> bool:
        a, b = self.evaluate(engine)
        return a == b


def _sub_degrees(degree, labelled: bool):
    """(Delta_I, Delta_J) with zero-sum Delta_I: label subsets or sub-multisets."""
    r = len(degree[0]) if degree else 0
    if labelled:
        nd = len(degree)
        for mask in range(1 << nd):
            d_i = [degree[t] for t in range(nd) if mask >> t & 1]
            if any(sum(v[c] for v in d_i) for c in range(r)):
                continue
            yield tuple(d_i), tuple(degree[t] for t in range(nd) if not mask >> t & 1)
    else:
        cnt = sorted(Counter(degree).items())
        for choice in product(*[range(c + 1) for _, c in cnt]):
            d_i = [v for (v, _), x in zip(cnt, choice) for _ in range(x)]
            if any(sum(v[c] for v in d_i) for c in range(r)):
                continue
            yield tuple(d_i), tuple(v for (v, c), x in zip(cnt, choice) for _ in range(c - x))


def _pair_terms(model, degree, conds_i, conds_j, d_i, d_j) -> list[Term]:
    out = []
    size = len(model.beta)
    for e in range(size):
        for f in range(size):
            b = model.beta[e][f]
            if b:
                out.append(Term(Fraction(b), (InvariantKey(model.name, d_i, tuple(conds_i) + ((0, e),)),
                                              InvariantKey(model.name, d_j, tuple(conds_j) + ((0, f),)))))
    return out


def _split_terms(key: InvariantKey, conds, side_a: Sequence[int], side_b: Sequence[int], labelled: bool):
    """All reducible I|J with side_a marks in I and side_b marks in J."""
    model = key.surface
    n = len(conds)
    rest = [x for x in range(n) if x not in side_a and x not in side_b]
    out = []
    for d_i, d_j in _sub_degrees(key.degree, labelled):
        for mask in range(1 << len(rest)):
            a_marks = list(side_a) + [rest[t] for t in range(len(rest)) if mask >> t & 1]
            b_marks = list(side_b) + [rest[t] for t in range(len(rest)) if not mask >> t & 1]
            if len(a_marks) + len(d_i) < 2 or len(b_marks) + len(d_j) < 2:
                continue
            out.extend(_pair_terms(model, key.degree, [conds[x] for x in a_marks], [conds[x] for x in b_marks],
                                   d_i, d_j))
    return out


def splitting_lemma(key: InvariantKey, marks_i: Sequence[int], degree_i, labelled: bool = False) -> list[Term]:
    """phi_{I|J} . F as sum_{e,f} <prod_I tau(C) tau_0(B_e)>_{Delta_I} beta_ef <tau_0(B_f) prod_J tau(C)>_{Delta_J}.

    ``marks_i`` indexes key.conditions and ``degree_i`` is the degree part of I.
    """
    rest = list(key.degree)
    d_i = []
    for v in degree_i:
        v = tuple(v)
        if v not in rest:
            raise ValueError("%s is not part of the degree" % (v,))
        rest.remove(v)
        d_i.append(v)
    r = key.surface.r
    if any(sum(v[c] for v in d_i) for c in range(r)):
        raise NotReducible("the partition is not reducible")
    marks_i = sorted(set(marks_i))
    a = [key.conditions[x] for x in marks_i]
    b = [c for x, c in enumerate(key.conditions) if x not in marks_i]
    if len(a) + len(d_i) < 2 or len(b) + len(rest) < 2:
        raise ValueError("both sides of the partition need at least two leaves")
    return _pair_terms(key.surface, key.degree, a, b, tuple(d_i), tuple(rest))


def _one_dimensional(key: InvariantKey):
    if key.expected_dim() != key.condition_codim() + 1:
        raise ValueError("the equation needs a one-dimensional family")


def wdvv_reduce(key: InvariantKey, i: int, j: int, k: int, l: int, labelled: bool = False) -> Equation:
    """The WDVV equation (ij|kl) = (ik|jl) for the one-dimensional family ``key``."""
    _one_dimensional(key)
    bad = check_wdvv_preconditions(key, i, j, k, l)
    if bad:
        raise PreconditionViolation(bad, key)
    conds = key.conditions
    return Equation("WDVV (%d%d|%d%d)" % (i, j, k, l), _split_terms(key, conds, [i, j], [k, l], labelled),
                    _split_terms(key, conds, [i, k], [j, l], labelled), labelled)


def topological_recursion(key: InvariantKey, i: int, k: int, l: int, labelled: bool = False) -> Equation:
    """<psi_i F> as a sum over reducible I|J with i in I and k, l in J, where F lowers a_i by one."""
    if not key.is_zero_dimensional():
        raise ValueError("topological recursion expresses a zero-dimensional invariant")
    bad = check_tr_preconditions(key, i, k, l)
    if bad:
        raise PreconditionViolation(bad, key)
    conds = list(key.conditions)
    a, e = conds[i]
    conds[i] = (a - 1, e)
    return Equation("TR (%d|%d%d)" % (i, k, l), [Term(Fraction(1), (key,))],
                    _split_terms(key, conds, [i], [k, l], labelled), labelled)


def _find(key: InvariantKey, cond, x):
    if x is None:
        try:
            return key.conditions.index(cond)
        except ValueError:
            raise ValueError("no mark with %s" % (cond,)) from None
    if key.conditions[x] != cond:
        raise ValueError("mark %d is %s, not %s" % (x, key.conditions[x], cond))
    return x


def string_rewrite(key: InvariantKey, x: int | None = None) -> Equation:
    """<tau_0(R^r) prod tau_{a_k}(C_k)> = sum_k <... tau_{a_k - 1}(C_k) ...>."""
    top = key.surface.m
    x = _find(key, (0, top), x)
    rest = key.conditions[:x] + key.conditions[x + 1:]
    rhs = []
    for y, (b, f) in enumerate(rest):
        if b > 0:
            rhs.append(Term(Fraction(1), (InvariantKey(key.model, key.degree, rest[:y] + ((b - 1, f),) + rest[y + 1:]),)))
    return Equation("string", [Term(Fraction(1), (key,))], rhs)


def dilaton_rewrite(key: InvariantKey, x: int | None = None) -> Equation:
    """<tau_1(R^r) prod> = (n + #Delta - 2) <prod>, with n the remaining marks."""
    top = key.surface.m
    x = _find(key, (1, top), x)
    rest = key.conditions[:x] + key.conditions[x + 1:]
    factor = len(rest) + len(key.degree) - 2
    return Equation("dilaton", [Term(Fraction(1), (key,))],
                    [Term(Fraction(factor), (InvariantKey(key.model, key.degree, rest),))])


def divisor_rewrite(key: InvariantKey, x: int) -> Equation:
    """<tau_0(div h) prod> = (h . Delta) <prod> + sum_k <... tau_{a_k - 1}(h . C_k) ...>."""
    model = key.surface
    a, e = key.conditions[x]
    if a != 0 or e not in model.divisor_classes():
        raise ValueError("mark %d does not carry a divisor class tau_0(B_e)" % x)
    rest = key.conditions[:x] + key.conditions[x + 1:]
    rhs = [Term(model.divisor_degree(e, key.degree), (InvariantKey(key.model, key.degree, rest),))]
    for y, (b, f) in enumerate(rest):
        if b == 0:
            continue
        # h . B_f in the basis: B_e on R^r, deg(B_e.B_f) points on curves, zero on points
        if f == model.m:
            prod_class, c = e, 1
        elif model.codim(f) == 1:
            prod_class, c = 0, model.alpha[e][f]
        else:
            continue
        if c:
            new = rest[:y] + ((b - 1, prod_class),) + rest[y + 1:]
            rhs.append(Term(Fraction(c), (InvariantKey(key.model, key.degree, new),)))
    return Equation("divisor", [Term(Fraction(1), (key,))], rhs)
