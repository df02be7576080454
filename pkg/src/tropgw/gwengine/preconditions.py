"""Admissibility of WDVV and topological-recursion steps for a family of curves."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..exactlin import det
from .keys import InvariantKey
from .models import SurfaceModel, strongly_unimodular_witness

__all__ = [
    "PreconditionViolation",
    "Violation",
    "check_degree",
    "check_strongly_unimodular",
    "check_tr_preconditions",
    "check_wdvv_preconditions",
    "separated",
    "separated_rays",
    "theta_of_family",
]

LABELS = ("i", "ii", "iii", "iv", "directionality", "unsupported")


@dataclass(frozen=True)
class Violation:
    label: str
    reason: str

    def __str__(self):
        return "%s: %s" % (self.label, self.reason)


class PreconditionViolation(ValueError):
    """A reduction step would leave the range where the recursion is proven."""

    def __init__(self, violations: Sequence[Violation], key: InvariantKey | None = None):
        self.violations = list(violations)
        self.key = key
        where = " for %s" % key.canonical() if key is not None else ""
        super().__init__("precondition violated%s: %s" % (where, "; ".join(map(str, self.violations))))

    @property
    def labels(self) -> list[str]:
        return sorted({v.label for v in self.violations}, key=LABELS.index)


def check_strongly_unimodular(directions) -> list[Violation]:
    ok, why = strongly_unimodular_witness(directions)
    return [] if ok else [Violation("ii", why)]


def check_degree(model: SurfaceModel, directions) -> list[Violation]:
    """Condition ii and support of the directions by the model's fan."""
    out = check_strongly_unimodular(directions)
    if not out:
        for v in sorted(set(map(tuple, directions))):
            if not model.supports(v):
                out.append(Violation("unsupported", "direction %s is not a ray allowed by %s" % (v, model.name)))
    return out


def _inside(w, v1, v2) -> bool:
    """w in the open cone spanned by independent v1, v2."""
    d = det([v1, v2])
    s = Fraction(det([w, v2]), d)
    t = Fraction(det([v1, w]), d)
    return s > 0 and t > 0


def separated_rays(rays_e, rays_f, directions) -> bool:
    """No open cone of two independent degree directions contains a ray of each cycle."""
    dirs = sorted(set(map(tuple, directions)))
    for a in range(len(dirs)):
        for b in range(a + 1, len(dirs)):
            v1, v2 = dirs[a], dirs[b]
            if len(v1) != 2 or det([v1, v2]) == 0:
                continue
            if any(_inside(w, v1, v2) for w in rays_e) and any(_inside(w, v1, v2) for w in rays_f):
                return False
    return True


def separated(model: SurfaceModel, e: int, f: int, directions) -> bool:
    """Condition iii for the curve classes B_e, B_f (trivially true unless both are curves)."""
    if model.r != 2 or model.dim(e) != 1 or model.dim(f) != 1:
        return True
    return separated_rays(model.rays_of(e), model.rays_of(f), directions)


def _is_curve(model: SurfaceModel, e: int) -> bool:
    return model.r == 2 and model.dim(e) == 1


def _basic(key: InvariantKey) -> list[Violation]:
    model = key.surface
    out = check_degree(model, key.degree) if key.degree else []
    for a, e in key.conditions:
        if a > 0 and e != 0:
            out.append(Violation("i", "psi-condition tau%d at %s, which is not a point" % (a, model.class_names[e])))
            if model.dim(e) == model.r and a >= 2:
                out.append(Violation("directionality",
                                     "tau%d(%s) is not directional" % (a, model.class_names[e])))
    return out


def _pair(key: InvariantKey, x: int, y: int, what: str) -> list[Violation]:
    model = key.surface
    (_, e), (_, f) = key.conditions[x], key.conditions[y]
    if _is_curve(model, e) and _is_curve(model, f) and not separated(model, e, f, key.degree):
        return [Violation("iii", "%s and %s at the %s marks are not separated by the degree directions"
                          % (model.class_names[e], model.class_names[f], what))]
    return []


def check_wdvv_preconditions(key: InvariantKey, i: int, j: int, k: int, l: int) -> list[Violation]:
    """Violations for the WDVV equation (ij|kl) on a one-dimensional family (indices into conditions)."""
    if len({i, j, k, l}) != 4:
        raise ValueError("i, j, k, l must be distinct marks")
    return _basic(key) + _pair(key, i, j, "i,j") + _pair(key, k, l, "k,l")


def check_tr_preconditions(key: InvariantKey, i: int, k: int, l: int) -> list[Violation]:
    """Violations for topological recursion at the psi-mark i with helpers k, l."""
    if len({i, k, l}) != 3:
        raise ValueError("i, k, l must be distinct marks")
    out = _basic(key)
    a, e = key.conditions[i]
    if e != 0:
        out.append(Violation("iv", "the recursion mark carries %s, not a point" % key.surface.class_names[e]))
    if a == 0:
        out.append(Violation("iv", "the recursion mark carries no psi-class"))
    return out + _pair(key, k, l, "k,l")


def theta_of_family(key: InvariantKey) -> tuple[tuple[int, ...], ...]:
    """Rays a fan must contain for the family to be directional: degree directions and curve rays."""
    model = key.surface
    rays = set(map(tuple, key.degree))
    for _, e in key.conditions:
        if model.dim(e) == 1 and model.r == 2:
            rays.update(model.rays_of(e))
    return tuple(sorted(rays))
