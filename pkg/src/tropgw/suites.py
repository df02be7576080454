"""Verification suites shared by the command line and the test-suite."""
from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction
from functools import lru_cache

from .exactlin import inverse
from .gwengine import (
    GWEngine,
    InvariantKey,
    MODEL_NAMES,
    PreconditionViolation,
    build_surface_model,
    compute_invariant,
    parse_key,
)
from .gwengine.facets import boundary_psi_suite
from .modcurves import (
    abstract_invariant,
    forgetful_pushpull_suite,
    moduli_fan_suite,
    psi_product,
    psi_value,
    string_dilaton_abstract,
)
from .oracles import kontsevich, line_cover_count
from .parmod import Degree, ParamSpace, map_equations_suite
from .report import Report
from .tropfan import (
    CycleMorphism,
    MaxFunction,
    WeightedComplex,
    check_balanced,
    degree0,
    diagonal_intersection,
    divisor,
    fan_displacement_product,
    product,
    pull_back,
    push_forward,
)

__all__ = [
    "SUITES",
    "bezout_suite",
    "closed_form_suite",
    "fan_crosscheck_suite",
    "fan_displacement_suite",
    "invariants_suite",
    "models_suite",
    "precondition_suite",
    "property_suite",
    "random_model_curve",
    "random_polynomial",
    "random_zero_dim_key",
    "run_suite",
]

SURFACES = ("P2", "P1xP1", "F1", "Bl2", "Bl3")
SIX_MODELS = ("P1xKstar", "P2", "P1xP1", "F1", "Bl2", "Bl3")


# -- random instances ---------------------------------------------------------


def _coef(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-60, 60), rng.randint(1, 7))


def random_polynomial(n: int, monomials, rng: random.Random) -> MaxFunction:
    """max over the given exponent vectors with random rational coefficients."""
    return MaxFunction.tropical_max(n, [(_coef(rng), tuple(m)) for m in monomials])


def _simplex_monomials(n: int, d: int):
    return [m for m in itertools.product(range(d + 1), repeat=n) if sum(m) <= d]


def random_hypersurface(n: int, d: int, rng: random.Random) -> WeightedComplex:
    return divisor(random_polynomial(n, _simplex_monomials(n, d), rng), WeightedComplex.space(n))


def random_model_curve(model, rng: random.Random, size: int = 2) -> WeightedComplex:
    """A random tropical curve whose unbounded directions are rays of the model's fan.

    The Newton polygon {m : <m, rho> <= c_rho} has outer normals among the rays.
    """
    rays = model.fan.rays
    while True:
        c = {rho: rng.randint(0, size) for rho in rays}
        box = range(-2 * size - 2, 2 * size + 3)
        mons = [m for m in itertools.product(box, repeat=2)
                if all(m[0] * rho[0] + m[1] * rho[1] <= c[rho] for rho in rays)]
        if len(mons) >= 3 and len({m[0] for m in mons}) > 1 and len({m[1] for m in mons}) > 1:
            return divisor(random_polynomial(2, mons, rng), WeightedComplex.space(2))


def random_zero_dim_key(rng: random.Random, max_degree: int = 3, model: str = "P2") -> InvariantKey:
    """A zero-dimensional key on a projective-degree model with psi-classes only at points.

    With s string marks, p points carrying total psi-power A and any number
    of lines, dimension balance reads p + A = s + 3d - 1.
    """
    m = build_surface_model(model)
    d = rng.randint(1, max_degree)
    s = rng.choice([0, 0, 1])
    total = s + 3 * d - 1
    psi = rng.randint(0, min(3, total - 1))
    p = total - psi
    a = [0] * p
    for _ in range(psi):
        a[rng.randrange(p)] += 1
    lines = rng.randint(0, 2)
    line = m.index("line")
    conds = [(x, 0) for x in a] + [(0, line)] * lines + [(0, m.m)] * s
    deg = [(1, 1), (-1, 0), (0, -1)] * d
    return InvariantKey(m.name, deg, conds)


# -- closed form ------------------------------------------------------------------


@lru_cache(maxsize=None)
def _string_oracle(a: tuple) -> int:
    """Abstract psi-invariants from <tau_0^3> = 1 and the string equation alone."""
    a = tuple(sorted(a))
    n = len(a)
    if n < 3 or sum(a) != n - 3:
        return 0
    if n == 3:
        return 1
    rest = a[1:]  # a[0] == 0 since sum(a) < n
    return sum(_string_oracle(rest[:i] + (rest[i] - 1,) + rest[i + 1:]) for i in range(len(rest)) if rest[i])


def _divisor_route(a) -> Fraction:
    """deg psi^a as psi_k applied to the one-dimensional product with a_k lowered."""
    n = len(a)
    k = next(i for i, x in enumerate(a) if x > 0)
    low = list(a)
    low[k] -= 1
    fan = psi_product(n, low)
    total = Fraction(0)
    for tree, w in fan.weights.items():
        (split,) = tuple(tree.splits)
        total += w * psi_value(n, k + 1, split)
    return total


def closed_form_suite(n_max: int = 8) -> Report:
    """Three routes to deg psi^a: the psi-product fan, the string recursion and psi_k on a 1-dim product.

    The fan route runs on every exponent vector and is timed; the divisor
    route is symmetric in the labels and runs on sorted vectors only.
    """
    rep = Report("closed form for abstract psi-products")
    t0 = time.perf_counter()
    count = 0
    bad = []
    for n in range(3, n_max + 1):
        for a in itertools.product(range(n - 2), repeat=n):
            if sum(a) != n - 3:
                continue
            count += 1
            if psi_product(n, a).degree() != abstract_invariant(a):
                bad.append(a)
    elapsed = time.perf_counter() - t0
    rep.add("deg psi-product = (n-3)!/prod a_k! for n <= %d" % n_max, not bad,
            "%d exponent vectors, %.1f s%s" % (count, elapsed, "; first failure %s" % (bad[0],) if bad else ""))
    bad = []
    for n in range(4, n_max + 1):
        for a in itertools.combinations_with_replacement(range(n - 2), n):
            if sum(a) == n - 3 and not abstract_invariant(a) == _string_oracle(a) == _divisor_route(a):
                bad.append(a)
    rep.add("string recursion and psi_k on the one-dimensional product agree", not bad,
            "first failure %s" % (bad[0],) if bad else "")
    return rep


# -- fan-level identities -------------------------------------------------------


def fan_crosscheck_suite(max_n: int = 6) -> Report:
    """Psi-products, boundary weights and forgetful identities on the embedded fans."""
    rep = Report("fan-level cross-check (n <= %d)" % max_n)
    for n in range(4, max_n + 1):
        rep.extend(moduli_fan_suite(n, max_n=max_n), "M_0,%d: " % n)
    for n in range(3, max_n):
        rep.extend(forgetful_pushpull_suite(n, max_n=max_n), "M_0,%d -> M_0,%d: " % (n + 1, n))
    rep.extend(string_dilaton_abstract(max_n + 2), "abstract ")
    for n in range(4, min(max_n, 5) + 1):
        rep.extend(boundary_psi_suite(n, max_n=max_n), "n=%d: " % n)
    spaces = [ParamSpace(1, Degree.from_directions([(1,), (-1,)], 1)),
              ParamSpace(2, Degree.from_directions([(1,), (-1,)], 1)),
              ParamSpace(1, Degree.from_directions([(1, 1), (-1, 0), (0, -1)], 2))]
    for sp in spaces:
        if len(sp.labels) + 1 <= max_n + 1:
            rep.extend(map_equations_suite(sp, samples=5), "%r: " % (sp,))
    return rep


# -- intersection products on the models ----------------------------------------------


def fan_displacement_suite(models=SURFACES, seeds: int = 20, seed: int = 0) -> Report:
    rep = Report("fan displacement = diagonal intersection")
    for name in models:
        m = build_surface_model(name)
        ok = True
        detail = ""
        for e, f in itertools.combinations_with_replacement(range(len(m.basis)), 2):
            want = diagonal_intersection(m.cycle(e), m.cycle(f))
            for s in range(seed, seed + seeds):
                got = fan_displacement_product(m.basis[e], m.basis[f], seed=s).to_cycle()
                if not got.equals(want):
                    ok = False
                    detail = "B_%d . B_%d with seed %d" % (e, f, s)
        rep.add("%s: all basis pairs, %d seeds" % (name, seeds), ok, detail)
    return rep


def bezout_suite(max_degree: int = 3, seed: int = 0) -> Report:
    rep = Report("tropical Bezout")
    rng = random.Random(seed)
    for d in range(1, max_degree + 1):
        for e in range(d, max_degree + 1):
            c1 = random_hypersurface(2, d, rng)
            c2 = random_hypersurface(2, e, rng)
            deg = degree0(diagonal_intersection(c1, c2))
            rep.add("deg(C_%d . C_%d) = %d" % (d, e, d * e), deg == d * e, "got %s" % deg)
    return rep


def _deg_product(model, x: WeightedComplex, e: int) -> Fraction:
    # classes of the wrong dimension pair to zero
    if x.dim + model.cycle(e).dim != model.r:
        return Fraction(0)
    return degree0(diagonal_intersection(x, model.cycle(e)))


def models_suite(models=SIX_MODELS + ("R1",), samples: int = 3, seed: int = 0) -> Report:
    """alpha symmetric and invertible, beta alpha = 1, and the diagonal replacement identity."""
    rep = Report("surface models")
    rng = random.Random(seed)
    for name in models:
        m = build_surface_model(name)
        a, b = m.alpha, m.beta
        size = len(a)
        rep.add("%s: structure" % name, not m.check(), "; ".join(m.check()))
        rep.add("%s: alpha symmetric" % name, all(a[i][j] == a[j][i] for i in range(size) for j in range(size)))
        ident = all(sum(b[i][k] * a[k][j] for k in range(size)) == int(i == j)
                    for i in range(size) for j in range(size))
        rep.add("%s: beta alpha = 1" % name, ident and inverse(a) == [list(r) for r in b])
        ok = True
        for _ in range(samples):
            if m.r == 2:
                x, y = random_model_curve(m, rng), random_model_curve(m, rng)
            else:
                x = m.cycle(0).scaled(rng.randint(1, 5))
                y = m.cycle(m.m).scaled(rng.randint(1, 5))
            lhs = degree0(diagonal_intersection(x, y))
            dx = [_deg_product(m, x, e) for e in range(size)]
            dy = [_deg_product(m, y, f) for f in range(size)]
            rhs = sum(dx[e] * b[e][f] * dy[f] for e in range(size) for f in range(size))
            ok &= lhs == rhs
        rep.add("%s: deg(X.Y) = sum deg(X.B_e) beta_ef deg(Y.B_f)" % name, ok, "%d random pairs" % samples)
        h = m.combination_function(m.preferred_divisor())
        want = None
        for e, c in m.preferred_divisor().items():
            want = m.cycle(e).scaled(c) if want is None else want + m.cycle(e).scaled(c)
        rep.add("%s: div(h) of the auxiliary function" % name,
                divisor(h, WeightedComplex.space(m.r)).equals(want))
    return rep


# -- randomized properties of the cycle operations ------------------------------------------


def _random_cycle(rng: random.Random) -> WeightedComplex:
    kind = rng.randrange(4)
    if kind == 0:
        n = rng.choice([2, 3])
        return random_hypersurface(n, rng.randint(1, 2), rng)
    if kind == 1:
        x = random_hypersurface(3, 1, rng)
        return divisor(random_polynomial(3, _simplex_monomials(3, 1), rng), x)
    if kind == 2:
        return product(random_hypersurface(2, 1, rng), random_hypersurface(2, 1, rng))
    return WeightedComplex.space(rng.choice([1, 2])).scaled(rng.randint(1, 3))


def _random_matrix(rng: random.Random, rows: int, cols: int):
    while True:
        m = [[rng.randint(-2, 2) for _ in range(cols)] for _ in range(rows)]
        if any(any(r) for r in m):
            return m


def property_suite(balancing: int = 200, projection: int = 100, seed: int = 0) -> Report:
    rep = Report("randomized cycle properties")
    rng = random.Random(seed)
    fails = []
    for i in range(balancing):
        x = _random_cycle(rng)
        op = i % 3
        if op == 0 and x.dim > 0:
            y = divisor(random_polynomial(x.ambient, _simplex_monomials(x.ambient, rng.randint(1, 2)), rng), x)
        elif op == 1:
            f = CycleMorphism.linear(_random_matrix(rng, rng.randint(1, x.ambient), x.ambient))
            y = push_forward(f, x)
        else:
            y = product(x, random_hypersurface(2, 1, rng)) if x.ambient <= 3 else x
        if check_balanced(y):
            fails.append(i)
    rep.add("balancing after divisor / push-forward / product", not fails,
            "%d instances%s" % (balancing, "; failing %s" % fails[:5] if fails else ""))
    fails = []
    for i in range(projection):
        x = _random_cycle(rng)
        if x.dim == 0:
            x = WeightedComplex.space(x.ambient)
        f = CycleMorphism.linear(_random_matrix(rng, rng.randint(1, 2), x.ambient))
        phi = random_polynomial(f.target_dim, _simplex_monomials(f.target_dim, rng.randint(1, 2)), rng)
        lhs = push_forward(f, divisor(pull_back(f, phi), x))
        rhs = divisor(phi, push_forward(f, x))
        if not lhs.equals(rhs):
            fails.append(i)
    rep.add("projection formula f_*(f^*phi . X) = phi . f_*X", not fails,
            "%d morphisms%s" % (projection, "; failing %s" % fails[:5] if fails else ""))
    return rep


# -- invariants -------------------------------------------------------------------------


def kontsevich_check(max_degree: int = 4) -> tuple[bool, str]:
    t0 = time.perf_counter()
    got = [compute_invariant(parse_key("P2", str(d), "pt^%d" % (3 * d - 1))) for d in range(1, max_degree + 1)]
    want = [kontsevich(d) for d in range(1, max_degree + 1)]
    return got == want, "engine %s, oracle %s, %.2f s" % ([str(x) for x in got], want, time.perf_counter() - t0)


def line_covers_check(degrees=(1, 2), seed: int = 0) -> tuple[bool, str]:
    out = []
    ok = True
    for d in degrees:
        key = parse_key("R1", str(d), "tau1(pt)^%d" % (2 * d - 2) if d > 1 else "-")
        got = compute_invariant(key)
        want = line_cover_count(d, seed)
        ok &= got == want
        out.append("d=%d: %s vs %s" % (d, got, want))
    return ok, "; ".join(out)


def path_independence_check(count: int = 10, seed: int = 0, max_degree: int = 3) -> tuple[bool, str]:
    rng = random.Random(seed)
    first = GWEngine("P2", "first")
    last = GWEngine("P2", "last")
    ok = True
    distinct = 0
    shown = []
    for _ in range(count):
        key = random_zero_dim_key(rng, max_degree)
        first.clear()
        last.clear()
        a, b = first.invariant(key), last.invariant(key)
        ok &= a == b
        distinct += set(first.ledger()) != set(last.ledger())
        shown.append("%s=%s" % (key.canonical(), a))
    return ok, "%d keys, %d with different intermediate keys: %s" % (count, distinct, ", ".join(shown))


COUNTEREXAMPLES = (
    ("psi at a line condition", ("P2", "2", "tau1(line) line^3 pt^4"), {"i"}),
    ("non-primitive direction", ("P1xP1", "(2,0) (-1,0)^2", "tau1(pt)"), {"ii"}),
    ("F2-type fan", ("F1", "(1,0) (-1,2) (0,-1)^2", "pt^3"), {"ii"}),
    ("tau_2 at R^2 in degree one", ("P2", "1", "line pt tau2(R2)"), {"i", "directionality"}),
)


def precondition_suite() -> Report:
    rep = Report("precondition guard")
    for name, (model, deg, conds), labels in COUNTEREXAMPLES:
        key = parse_key(model, deg, conds)
        try:
            v = compute_invariant(key)
            rep.add(name, False, "accepted with value %s" % v)
        except PreconditionViolation as err:
            rep.add(name, key.is_zero_dimensional() and labels <= set(err.labels),
                    "labels %s: %s" % (",".join(err.labels), err.violations[0].reason))
    return rep


def invariants_suite(seed: int = 0) -> Report:
    rep = Report("invariants")
    rep.add("P2 N_1..N_4 against the Kontsevich oracle", *kontsevich_check())
    rep.add("line covers d=1,2 against enumeration", *line_covers_check())
    rep.add("path independence on random P2 keys", *path_independence_check(seed=seed))
    rep.extend(precondition_suite(), "guard: ")
    return rep


SUITES = {
    "closed-form": lambda a: closed_form_suite(min(a.max_n_abstract, 8)),
    "fan": lambda a: fan_crosscheck_suite(a.max_n),
    "fan-displacement": lambda a: fan_displacement_suite(a.models or SURFACES, a.seeds, a.seed),
    "bezout": lambda a: bezout_suite(3, a.seed),
    "models": lambda a: models_suite(a.models or SIX_MODELS + ("R1",), seed=a.seed),
    "properties": lambda a: property_suite(seed=a.seed),
    "boundary-psi": lambda a: _boundary(a.max_n),
    "invariants": lambda a: invariants_suite(a.seed),
}


def _boundary(max_n: int) -> Report:
    rep = Report("boundary psi facets")
    for n in range(4, max_n + 1):
        rep.extend(boundary_psi_suite(n, max_n=max_n), "n=%d: " % n)
    return rep


def run_suite(name: str, options) -> Report:
    if name == "all":
        rep = Report("all suites")
        for k, f in SUITES.items():
            rep.extend(f(options), k + ": ")
        return rep
    if name not in SUITES:
        raise KeyError("unknown suite %r (known: all, %s)" % (name, ", ".join(SUITES)))
    return SUITES[name](options)
