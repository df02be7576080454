"""Signs of phi_{I|J} times a psi-product: combinatorial rule versus the fan computation."""
from __future__ import annotations

from itertools import product

from ..modcurves import Partition, boundary_psi_facets, embed_moduli_fan, nontrivial_partitions
from ..report import Report
from ..tropfan import divisor

__all__ = ["boundary_psi_crosscheck", "boundary_psi_facets", "boundary_psi_suite"]


def boundary_psi_crosscheck(n: int, a, part, max_n: int = 6) -> tuple[bool, str]:
    """Compare the classification with the weights of div(phi_{I|J}) on the psi-product cycle."""
    m = embed_moduli_fan(n, max_n)
    labels = m.labels
    exps = dict(zip(labels, a))
    if not isinstance(part, Partition):
        part = Partition.of(part, labels)
    x = m.complex()
    for k in labels:
        for _ in range(exps[k]):
            x = divisor(m.psi(k), x)
    if x.dim < 1:
        return True, "psi-product has no ridges"
    d = divisor(m.phi(part), x)
    got = {m.type_of(c): w for c, w in d.weights.items() if w}
    classes = boundary_psi_facets(labels, exps, part)
    for t, w in got.items():
        want = classes.get(t)
        if want is None or (want == "positive") != (w > 0) or (want == "negative") != (w < 0):
            return False, "type %s has weight %d but is classified %s" % (t.to_text(), w, want)
    for t, c in classes.items():
        if c != "zero" and t not in got:
            return False, "type %s classified %s has weight 0" % (t.to_text(), c)
    return True, "%d facets" % len(got)


def boundary_psi_suite(n: int, max_n: int = 6, limit: int | None = None) -> Report:
    """All exponent vectors with a one-dimensional-or-more product, all partitions (optionally capped)."""
    rep = Report("boundary psi facets n=%d" % n)
    labels = tuple(range(1, n + 1))
    count = 0
    ok_all = True
    detail = ""
    for a in product(range(n - 3), repeat=n):
        if sum(a) > n - 4:
            continue
        for p in nontrivial_partitions(labels):
            ok, why = boundary_psi_crosscheck(n, a, p, max_n)
            count += 1
            if not ok:
                ok_all = False
                detail = "a=%s, %s: %s" % (a, p, why)
            if limit is not None and count >= limit:
                break
        if limit is not None and count >= limit:
            break
    rep.add("phi_I|J psi-product signs match the special-vertex rule", ok_all, detail or "%d cases" % count)
    return rep
