"""Labelled degrees: finite families of integer directions summing to zero."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from math import factorial, gcd
from typing import Iterable, Mapping, Sequence

from ..tropfan import PLFunction, Polyhedron, WeightedComplex, degree0, divisor

__all__ = [
    "Degree",
    "NotReducible",
    "degree_factorial",
    "delta_of_degree",
    "h_dot_degree",
    "projective_degree",
    "split_degree",
]


class NotReducible(ValueError):
    """The edge of a split carries a non-zero direction."""


def _content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


@dataclass(frozen=True)
class Degree:
    """Labelled degree in R^r; ``labels`` is sorted, ``dirs[i]`` belongs to ``labels[i]``."""

    labels: tuple[str, ...]
    dirs: tuple[tuple[int, ...], ...]
    r: int

    def __init__(self, dirs: Mapping[str, Sequence[int]] | Iterable[tuple[str, Sequence[int]]], r: int | None = None):
        items = sorted((str(k), tuple(int(x) for x in v)) for k, v in (dirs.items() if isinstance(dirs, Mapping) else dirs))
        if len({k for k, _ in items}) != len(items):
            raise ValueError("duplicate degree label")
        if r is None:
            if not items:
                raise ValueError("ambient dimension needed for the empty degree")
            r = len(items[0][1])
        for k, v in items:
            if len(v) != r:
                raise ValueError("direction %s has the wrong length" % k)
            if not any(v):
                raise ValueError("direction %s is zero" % k)
        if any(sum(v[i] for _, v in items) for i in range(r)):
            raise ValueError("directions do not sum to zero")
        object.__setattr__(self, "labels", tuple(k for k, _ in items))
        object.__setattr__(self, "dirs", tuple(v for _, v in items))
        object.__setattr__(self, "r", r)

    def __len__(self):
        return len(self.labels)

    def direction(self, label: str) -> tuple[int, ...]:
        return self.dirs[self.labels.index(label)]

    def items(self):
        return zip(self.labels, self.dirs)

    def sub(self, labels: Iterable[str]) -> "Degree":
        keep = set(labels)
        return Degree([(k, v) for k, v in self.items() if k in keep], self.r)

    def multiset(self) -> tuple[tuple[int, ...], ...]:
        """The unlabelled degree: sorted directions."""
        return tuple(sorted(self.dirs))

    def is_primitive(self) -> bool:
        return all(_content(v) == 1 for v in self.dirs)

    def to_dict(self) -> dict:
        return {"labels": list(self.labels), "dirs": {k: list(v) for k, v in self.items()}, "r": self.r}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: Mapping) -> "Degree":
        dirs = d["dirs"]
        labels = d.get("labels", list(dirs))
        if set(labels) != set(dirs):
            raise ValueError("labels and dirs disagree")
        return cls({k: dirs[k] for k in labels}, d.get("r"))

    @classmethod
    def from_json(cls, text: str) -> "Degree":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_directions(cls, dirs: Iterable[Sequence[int]], r: int | None = None, prefix: str = "v") -> "Degree":
        dirs = list(dirs)
        width = len(str(len(dirs)))
        return cls({"%s%0*d" % (prefix, width, i + 1): v for i, v in enumerate(dirs)}, r)


def projective_degree(d: int, r: int = 2) -> Degree:
    """Degree d in R^r: d copies each of e_1+...+e_r and -e_1, ..., -e_r."""
    if d < 0:
        raise ValueError("negative degree")
    dirs = {}
    for j in range(d):
        dirs["0.%d" % (j + 1)] = (1,) * r
        for i in range(r):
            dirs["%d.%d" % (i + 1, j + 1)] = tuple(-int(t == i) for t in range(r))
    return Degree(dirs, r)


def degree_factorial(d: Degree) -> int:
    """Delta! = product over directions v of n(v)!."""
    out = 1
    for c in Counter(d.dirs).values():
        out *= factorial(c)
    return out


def delta_of_degree(d: Degree) -> WeightedComplex:
    """One-dimensional fan of the directions, ray weights summing the lattice indices."""
    weights: dict[tuple, int] = {}
    for v in d.dirs:
        g = _content(v)
        p = tuple(x // g for x in v)
        weights[p] = weights.get(p, 0) + g
    origin = (0,) * d.r
    cells = {Polyhedron([origin], [p], minimal=True): w for p, w in weights.items()}
    return WeightedComplex(d.r, 1, cells)


def h_dot_degree(h: PLFunction, d: Degree):
    """deg(h . delta(Delta))."""
    if not len(d):
        return 0
    return degree0(divisor(h, delta_of_degree(d)))


def split_degree(d: Degree, side: Iterable) -> tuple[Degree, Degree]:
    """Restrict the degree to the two sides of a split of marks and degree labels.

    ``side`` may contain mark labels, which are ignored.  Raises NotReducible
    when the directions on one side do not sum to zero.
    """
    side = {str(x) for x in side}
    a = [(k, v) for k, v in d.items() if k in side]
    if any(sum(v[i] for _, v in a) for i in range(d.r)):
        raise NotReducible("the split edge has direction %s"
                           % (tuple(sum(v[i] for _, v in a) for i in range(d.r)),))
    b = [(k, v) for k, v in d.items() if k not in side]
    return Degree(a, d.r), Degree(b, d.r)
