"""Combinatorial descriptions of psi-class products and boundary divisors."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import factorial
from typing import Iterable, Mapping

from .trees import MarkedTree, Partition, enumerate_types, parse_tree

__all__ = [
    "PsiProductFan",
    "abstract_invariant",
    "boundary_divisor_weight",
    "boundary_psi_facets",
    "multinomial",
    "psi_divisor_weight",
    "psi_product",
]


def multinomial(total: int, parts: Iterable[int]) -> int:
    parts = list(parts)
    if any(p < 0 for p in parts) or sum(parts) != total:
        return 0
    out = factorial(total)
    for p in parts:
        out //= factorial(p)
    return out


def _exponents(labels, a) -> dict:
    if isinstance(a, Mapping):
        exps = {k: int(a.get(k, 0)) for k in labels}
    else:
        a = list(a)
        if len(a) != len(labels):
            raise ValueError("one exponent per label expected")
        exps = dict(zip(labels, (int(x) for x in a)))
    if any(v < 0 for v in exps.values()):
        raise ValueError("exponents must be non-negative")
    return exps


@dataclass
class PsiProductFan:
    """Weighted types of a product of psi-classes on the moduli space."""

    labels: tuple
    exponents: dict
    weights: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.labels) - 3 - sum(self.exponents.values())

    def degree(self) -> int:
        if self.dim != 0:
            raise ValueError("degree only for zero-dimensional products")
        return sum(self.weights.values())

    def to_json(self) -> str:
        return json.dumps({
            "labels": list(self.labels),
            "exponents": {str(k): v for k, v in self.exponents.items()},
            "types": [{"tree": t.to_text(), "weight": w}
                      for t, w in sorted(self.weights.items(), key=lambda tw: tw[0].to_text())],
        }, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "PsiProductFan":
        d = json.loads(text)
        labels = tuple(d["labels"])
        exps = {int(k): int(v) for k, v in d["exponents"].items()}
        weights = {parse_tree(e["tree"]): int(e["weight"]) for e in d["types"]}
        return cls(labels, exps, weights)


def _type_weight(tree: MarkedTree, exps: dict) -> int:
    w = 1
    for v in tree.vertices():
        s = sum(exps[k] for k in v.leaves)
        if v.valence != s + 3:
            return 0
        w *= multinomial(v.valence - 3, [exps[k] for k in v.leaves])
    return w


def psi_product(labels: int | Iterable, a) -> PsiProductFan:
    """The product of psi_k^{a_k} as weighted combinatorial types.

    A type contributes iff each vertex V has valence sum_{k in V} a_k + 3;
    its weight is the product over vertices of the multinomial coefficients.
    """
    labels = tuple(range(1, labels + 1)) if isinstance(labels, int) else tuple(sorted(labels))
    exps = _exponents(labels, a)
    dim = len(labels) - 3 - sum(exps.values())
    out = PsiProductFan(labels, exps)
    if dim < 0:
        return out
    for t in enumerate_types(labels, dim):
        w = _type_weight(t, exps)
        if w:
            out.weights[t] = w
    return out


def abstract_invariant(a) -> int:
    """Degree of prod psi_k^{a_k} on the moduli space with len(a) leaves: (n-3)!/prod a_k!."""
    a = list(a)
    n = len(a)
    return multinomial(n - 3, a)


def boundary_divisor_weight(part: Partition, ridge: MarkedTree) -> int:
    """Weight of the divisor of phi_{I|J} on a codimension-one type.

    With A, B, C, D the branches at the four-valent vertex: +1 if a side of
    the split is the union of two branches, -1 if a side is one branch.
    """
    parts = set(ridge.four_valent_parts())
    for side in part.sides():
        if side in parts:
            return -1
    for x in parts:
        for y in parts:
            if x != y and part.side == x | y:
                return 1
    return 0


def psi_divisor_weight(k, ridge: MarkedTree) -> int:
    """Weight of the divisor of psi_k: one iff {k} is a branch at the four-valent vertex."""
    return int(frozenset([k]) in ridge.four_valent_parts())


def boundary_psi_facets(labels: int | Iterable, a, part: Partition | Iterable) -> dict:
    """Classify the codimension-one types of a psi-product relative to phi_{I|J}.

    Returns a dict type -> "positive" | "negative" | "zero".  Positive types
    have P(V) refining I|J at the special vertex V and both sides of V
    matching their exponent sums; negative ones have P(V) refining I|J and a
    single branch on one side.
    """
    labels = tuple(range(1, labels + 1)) if isinstance(labels, int) else tuple(sorted(labels))
    exps = _exponents(labels, a)
    if not isinstance(part, Partition):
        part = Partition.of(part, labels)
    dim = len(labels) - 3 - sum(exps.values()) - 1
    out = {}
    if dim < 0:
        return out
    for t in enumerate_types(labels, dim):
        special = None
        ok = True
        for v in t.vertices():
            s = sum(exps[k] for k in v.leaves)
            if v.valence == s + 3:
                continue
            if v.valence == s + 4 and special is None:
                special = v
                continue
            ok = False
            break
        if not ok or special is None:
            continue
        I, J = part.side, part.other
        if not all(p <= I or p <= J for p in special.parts):
            out[t] = "zero"
            continue
        m_i = sum(1 for p in special.parts if p <= I)
        m_j = sum(1 for p in special.parts if p <= J)
        a_i = sum(exps[k] for k in special.leaves if k in I)
        a_j = sum(exps[k] for k in special.leaves if k in J)
        if m_i + 1 == a_i + 3 and m_j + 1 == a_j + 3:
            out[t] = "positive"
        elif m_i == 1 or m_j == 1:
            out[t] = "negative"
        else:
            out[t] = "zero"
    return out
