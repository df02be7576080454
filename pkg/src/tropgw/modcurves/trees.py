"""Splits, marked rational tropical curves and their combinatorial types."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

__all__ = [
    "MarkedTree",
    "Partition",
    "TreeVertex",
    "enumerate_types",
    "nontrivial_partitions",
    "parse_tree",
]


@dataclass(frozen=True)
class Partition:
    """A split I|J of a finite label set; ``side`` is the part holding the smallest label."""

    side: frozenset
    labels: frozenset

    @classmethod
    def of(cls, part: Iterable, labels: Iterable) -> "Partition":
        labels = frozenset(labels)
        part = frozenset(part)
        if not part <= labels:
            raise ValueError("part %s is not inside the label set" % sorted(part))
        rest = labels - part
        if not part or not rest:
            raise ValueError("both sides of a split must be non-empty")
        m = min(labels)
        return cls(part if m in part else rest, labels)

    @property
    def other(self) -> frozenset:
        return self.labels - self.side

    def sides(self) -> tuple[frozenset, frozenset]:
        return self.side, self.other

    def side_of(self, k) -> frozenset:
        return self.side if k in self.side else self.other

    def separates(self, k, l) -> bool:
        return (k in self.side) != (l in self.side)

    def is_leaf(self) -> bool:
        return len(self.side) == 1 or len(self.other) == 1

    def compatible(self, other: "Partition") -> bool:
        a, b = self.side, other.side
        return not (a & b) or not (a - b) or not (b - a) or not (self.labels - (a | b))

    def sort_key(self):
        return (len(self.other), sorted(self.other))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return "%s|%s" % (_fmt(self.side), _fmt(self.other))

    __repr__ = __str__


def _fmt(s) -> str:
    items = sorted(s)
    if all(isinstance(x, int) and 0 <= x < 10 for x in items):
        return "".join(str(x) for x in items)
    return "{" + ",".join(str(x) for x in items) + "}"


def nontrivial_partitions(labels: Iterable) -> list[Partition]:
    """All splits with at least two labels on each side."""
    labels = sorted(set(labels))
    m, rest = labels[0], labels[1:]
    n = len(labels)
    out = []
    for size in range(1, n - 2):
        for comb in combinations(rest, size):
            side = frozenset((m,) + comb)
            if 2 <= len(side) <= n - 2:
                out.append(Partition(side, frozenset(labels)))
    return sorted(out)


@dataclass(frozen=True)
class TreeVertex:
    """A vertex given by the leaf sets of its branches; ``leaves`` are adjacent marked leaves."""

    parts: tuple[frozenset, ...]
    leaves: frozenset

    @property
    def valence(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class MarkedTree:
    """Rational tropical curve with marked leaves: a set of pairwise compatible splits."""

    labels: frozenset
    splits: frozenset
    lengths: Mapping | None = field(default=None, compare=False, hash=False)

    @classmethod
    def from_splits(cls, labels: Iterable, splits: Iterable, lengths: Mapping | None = None) -> "MarkedTree":
        labels = frozenset(labels)
        sp = []
        for s in splits:
            if not isinstance(s, Partition):
                s = Partition.of(s, labels)
            if s.labels != labels:
                raise ValueError("split over a different label set")
            if s.is_leaf():
                raise ValueError("leaf splits carry no bounded edge")
            sp.append(s)
        for a, b in combinations(sp, 2):
            if not a.compatible(b):
                raise ValueError("splits %s and %s are not compatible" % (a, b))
        if len(labels) < 3:
            raise ValueError("need at least three leaves")
        lens = None
        if lengths is not None:
            lens = {}
            for s, v in lengths.items():
                if not isinstance(s, Partition):
                    s = Partition.of(s, labels)
                lens[s] = Fraction(v)
                if lens[s] < 0:
                    raise ValueError("negative edge length")
        return cls(labels, frozenset(sp), lens)

    @property
    def dim(self) -> int:
        return len(self.splits)

    @property
    def n(self) -> int:
        return len(self.labels)

    def vertices(self) -> list[TreeVertex]:
        labels = self.labels
        r = min(labels)
        clades = sorted({s.other for s in self.splits}, key=len)
        out = []
        for c in clades:
            inner = [d for d in clades if d < c]
            maximal = [d for d in inner if not any(d < e for e in inner)]
            covered = frozenset().union(*maximal) if maximal else frozenset()
            singles = [frozenset([x]) for x in c - covered]
            parts = tuple(maximal + singles + [labels - c])
            out.append(TreeVertex(parts, frozenset(c - covered)))
        top = [d for d in clades if not any(d < e for e in clades)]
        covered = frozenset().union(*top) if top else frozenset()
        singles = [frozenset([x]) for x in labels - covered]
        out.append(TreeVertex(tuple(top + singles), frozenset(labels - covered)))
        return out

    def vertex_of_leaf(self, k) -> TreeVertex:
        for v in self.vertices():
            if k in v.leaves:
                return v
        raise KeyError(k)

    def is_ridge_type(self) -> bool:
        vals = sorted(v.valence for v in self.vertices())
        return vals[-1] == 4 and all(x == 3 for x in vals[:-1])

    def four_valent_parts(self) -> tuple[frozenset, ...]:
        """The four branches at the unique four-valent vertex of a ridge type."""
        quads = [v for v in self.vertices() if v.valence == 4]
        if len(quads) != 1:
            raise ValueError("not a codimension-one type")
        return quads[0].parts

    def forget(self, label) -> "MarkedTree":
        """Image under the forgetful map: drop a leaf and stabilise."""
        new_labels = self.labels - {label}
        sp = set()
        lens = {} if self.lengths is not None else None
        for s in self.splits:
            a, b = s.side - {label}, s.other - {label}
            if len(a) >= 2 and len(b) >= 2:
                p = Partition.of(a, new_labels)
                sp.add(p)
                if lens is not None:
                    lens[p] = lens.get(p, Fraction(0)) + self.lengths[s]
        return MarkedTree(frozenset(new_labels), frozenset(sp), lens)

    def distance(self, i, j) -> Fraction:
        """Sum of bounded edge lengths separating leaves i and j."""
        if self.lengths is None:
            raise ValueError("tree has no edge lengths")
        return sum((self.lengths[s] for s in self.splits if s.separates(i, j)), Fraction(0))

    def to_text(self) -> str:
        r = min(self.labels)
        clades = sorted({s.other: s for s in self.splits}.items(), key=lambda t: len(t[0]))
        by = dict(clades)

        def children(c):
            inner = [d for d in by if d < c]
            maximal = [d for d in inner if not any(d < e for e in inner)]
            covered = frozenset().union(*maximal) if maximal else frozenset()
            return sorted(maximal, key=lambda d: min(d)), sorted(c - covered)

        def render(c):
            sub, singles = children(c)
            items = [(min(d), render(d)) for d in sub] + [(x, str(x)) for x in singles]
            items.sort()
            txt = "(" + ",".join(t for _, t in items) + ")"
            if self.lengths is not None:
                txt += ":" + str(self.lengths[by[c]])
            return txt

        top = [d for d in by if not any(d < e for e in by)]
        covered = frozenset().union(*top) if top else frozenset()
        items = [(min(d), render(d)) for d in top] + [(x, str(x)) for x in sorted(self.labels - covered)]
        items.sort()
        return "(" + ",".join(t for _, t in items) + ");"

    def __str__(self):
        return self.to_text()


_TOKEN = re.compile(r"\s*([(),;:]|[^(),;:\s]+)")


def parse_tree(text: str) -> MarkedTree:
    """Parse the newick-like format written by :meth:`MarkedTree.to_text`.

    Labels are integers; a clade may carry ``:length`` with a rational length.
    """
    toks = _TOKEN.findall(text.strip())
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        if pos >= len(toks):
            raise ValueError("unexpected end of tree text")
        t = toks[pos]
        if expected is not None and t != expected:
            raise ValueError("expected %r, got %r" % (expected, t))
        pos += 1
        return t

    clades: list[tuple[frozenset, Fraction | None]] = []

    def group():
        take("(")
        leaves = set()
        while True:
            if peek() == "(":
                sub = group()
                ln = None
                if peek() == ":":
                    take(":")
                    ln = Fraction(take())
                clades.append((frozenset(sub), ln))
                leaves |= sub
            else:
                t = take()
                try:
                    leaves.add(int(t))
                except ValueError:
                    raise ValueError("bad label %r" % t) from None
            t = take()
            if t == ")":
                return leaves
            if t != ",":
                raise ValueError("expected ',' or ')', got %r" % t)

    labels = group()
    if peek() == ";":
        take(";")
    if pos != len(toks):
        raise ValueError("trailing text in tree")
    has_len = any(l is not None for _, l in clades)
    if has_len and any(l is None for _, l in clades):
        raise ValueError("either all or no clades carry lengths")
    splits, lens = [], {}
    for c, l in clades:
        p = Partition.of(c, labels)
        splits.append(p)
        if has_len:
            lens[p] = l
    return MarkedTree.from_splits(labels, splits, lens if has_len else None)


def enumerate_types(labels: Iterable | int, dim: int) -> list[MarkedTree]:
    """All combinatorial types with ``dim`` bounded edges (cones of that dimension)."""
    if isinstance(labels, int):
        labels = range(1, labels + 1)
    labels = frozenset(labels)
    parts = nontrivial_partitions(labels)
    m = len(parts)
    compat = [[parts[i].compatible(parts[j]) for j in range(m)] for i in range(m)]
    out = []

    def rec(start, chosen):
        if len(chosen) == dim:
            out.append(MarkedTree(labels, frozenset(parts[i] for i in chosen)))
            return
        for i in range(start, m):
            if all(compat[i][j] for j in chosen):
                chosen.append(i)
                rec(i + 1, chosen)
                chosen.pop()

    if 0 <= dim <= len(labels) - 3:
        rec(0, [])
    return out
