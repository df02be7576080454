"""Invariant keys: degree and condition multiset over a surface model, with a text syntax."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .models import SurfaceModel, build_surface_model

__all__ = ["InvariantKey", "KeyError_", "format_conditions", "parse_conditions", "parse_degree", "parse_key"]


class KeyError_(ValueError):
    """Malformed key text."""


@dataclass(frozen=True)
class InvariantKey:
    """<prod tau_{a_k}(B_{e_k})>_Delta on a model.

    ``degree`` is the sorted tuple of directions (the unlabelled degree);
    ``conditions`` the sorted tuple of pairs (a, e).
    """

    model: str
    degree: tuple[tuple[int, ...], ...]
    conditions: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "degree", tuple(sorted(tuple(int(x) for x in v) for v in self.degree)))
        object.__setattr__(self, "conditions", tuple(sorted((int(a), int(e)) for a, e in self.conditions)))

    @property
    def surface(self) -> SurfaceModel:
        return build_surface_model(self.model)

    @property
    def n(self) -> int:
        return len(self.conditions)

    def expected_dim(self) -> int:
        """n + #Delta + r - 3."""
        return self.n + len(self.degree) + self.surface.r - 3

    def condition_codim(self) -> int:
        s = self.surface
        return sum(a + s.codim(e) for a, e in self.conditions)

    def is_zero_dimensional(self) -> bool:
        return self.expected_dim() == self.condition_codim()

    def degree_factorial(self) -> int:
        out = 1
        for c in Counter(self.degree).values():
            out *= factorial(c)
        return out

    def canonical(self) -> str:
        return "%s;%s;%s" % (self.model, format_degree(self.degree), format_conditions(self.surface, self.conditions))

    def __str__(self):
        return self.canonical()


def format_degree(degree) -> str:
    if not degree:
        return "0"
    parts = []
    for v, c in sorted(Counter(degree).items()):
        txt = "(" + ",".join(str(x) for x in v) + ")"
        parts.append(txt if c == 1 else "%s^%d" % (txt, c))
    return " ".join(parts)


def format_conditions(model: SurfaceModel, conditions) -> str:
    if not conditions:
        return "-"
    parts = []
    for (a, e), c in sorted(Counter(conditions).items()):
        name = model.class_names[e]
        txt = name if a == 0 else "tau%d(%s)" % (a, name)
        parts.append(txt if c == 1 else "%s^%d" % (txt, c))
    return " ".join(parts)


_COND = re.compile(r"^(?:tau_?(\d+)\(\s*([A-Za-z][A-Za-z0-9]*)\s*\)|([A-Za-z][A-Za-z0-9]*))(?:\^(\d+))?$")


def parse_conditions(model: SurfaceModel, text: str) -> tuple[tuple[int, int], ...]:
    """Parse e.g. "pt^8", "tau1(pt)^2 line", "tau_2(pt)*pt*R2"."""
    out = []
    text = text.strip()
    if text in ("", "-"):
        return ()
    for tok in re.split(r"[\s,*]+", text):
        if not tok:
            continue
        m = _COND.match(tok)
        if not m:
            raise KeyError_("cannot parse condition %r" % tok)
        a = int(m.group(1)) if m.group(1) else 0
        name = m.group(2) or m.group(3)
        mult = int(m.group(4)) if m.group(4) else 1
        try:
            e = model.index(name)
        except KeyError as err:
            raise KeyError_(str(err.args[0])) from None
        out.extend([(a, e)] * mult)
    return tuple(sorted(out))


_VEC = re.compile(r"\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)(?:\^(\d+))?")


def parse_degree(model: SurfaceModel, text: str) -> tuple[tuple[int, ...], ...]:
    """Degree text: an integer d (P2, R1, P1xKstar), "a,b" (P1xP1) or a list "(1,1) (-1,0)^2 ...".

    Projective degree d in the plane is d times (1,1), (-1,0), (0,-1); on
    P1xP1 the bidegree a,b means a times (1,0),(-1,0) and b times (0,1),(0,-1).
    """
    text = text.strip()
    if re.fullmatch(r"\d+", text):
        d = int(text)
        if model.name in ("P2", "F1", "Bl2", "Bl3"):
            dirs = [(1, 1), (-1, 0), (0, -1)] * d
        elif model.name == "R1":
            dirs = [(1,), (-1,)] * d
        elif model.name == "P1xKstar":
            dirs = [(1, 0), (-1, 0)] * d
        else:
            raise KeyError_("model %s needs an explicit degree" % model.name)
        return tuple(sorted(dirs))
    m = re.fullmatch(r"(\d+)\s*,\s*(\d+)", text)
    if m and model.name in ("P1xP1", "P1xKstar"):
        a, b = int(m.group(1)), int(m.group(2))
        return tuple(sorted([(1, 0), (-1, 0)] * a + [(0, 1), (0, -1)] * b))
    dirs = []
    pos = 0
    for mm in _VEC.finditer(text):
        if text[pos:mm.start()].strip(" ;,"):
            raise KeyError_("cannot parse degree %r" % text)
        v = tuple(int(x) for x in mm.group(1).split(","))
        dirs.extend([v] * (int(mm.group(2)) if mm.group(2) else 1))
        pos = mm.end()
    if text[pos:].strip(" ;,") or not dirs:
        raise KeyError_("cannot parse degree %r" % text)
    if any(len(v) != model.r for v in dirs):
        raise KeyError_("directions must have length %d" % model.r)
    if any(sum(v[i] for v in dirs) for i in range(model.r)):
        raise KeyError_("directions do not sum to zero")
    if any(not any(v) for v in dirs):
        raise KeyError_("zero direction")
    return tuple(sorted(dirs))


def parse_key(model: str, degree: str, conditions: str) -> InvariantKey:
    try:
        m = build_surface_model(model)
    except ValueError as err:
        raise KeyError_(str(err.args[0])) from None
    return InvariantKey(m.name, parse_degree(m, degree), parse_conditions(m, conditions))


def rational_text(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)
