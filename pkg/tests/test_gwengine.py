import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from tropgw.gwengine import (
    GWEngine,
    InvariantKey,
    KeyError_,
    MODEL_NAMES,
    PreconditionViolation,
    build_surface_model,
    check_degree,
    check_strongly_unimodular,
    check_tr_preconditions,
    check_wdvv_preconditions,
    compute_invariant,
    degree_zero_invariant,
    dilaton_rewrite,
    divisor_rewrite,
    parse_key,
    splitting_lemma,
    string_rewrite,
    theta_of_family,
    topological_recursion,
    wdvv_reduce,
)
from tropgw.oracles import enumerate_point_invariant, hurwitz_closed_form, kontsevich
from tropgw.parmod import NotReducible
from tropgw.suites import random_zero_dim_key
from tropgw.tropfan import degree0, diagonal_intersection

seeds = st.integers(0, 10 ** 6)


# -- models ----------------------------------------------------------------------------


def pairing_oracle(model):
    size = len(model.basis)
    out = [[0] * size for _ in range(size)]
    for e in range(size):
        for f in range(size):
            if model.dim(e) + model.dim(f) == model.r:
                out[e][f] = degree0(diagonal_intersection(model.cycle(e), model.cycle(f)))
    return out


@pytest.mark.parametrize("name", MODEL_NAMES)
def test_alpha_from_intersections(name):
    m = build_surface_model(name)
    assert [list(r) for r in m.alpha] == pairing_oracle(m)
    size = len(m.alpha)
    assert all(sum(m.beta[i][k] * m.alpha[k][j] for k in range(size)) == (i == j)
               for i in range(size) for j in range(size))
    assert m.check() == []


def test_p2_model():
    m = build_surface_model("P2")
    assert m.class_names == ("pt", "line", "R2")
    assert [list(r) for r in m.alpha] == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    assert [list(r) for r in m.beta] == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]


def test_p1xp1_rulings():
    m = build_surface_model("P1xP1")
    curves = [e for e in range(len(m.basis)) if m.dim(e) == 1]
    assert len(curves) == 2
    a, b = curves
    assert m.alpha[a][a] == m.alpha[b][b] == 0 and m.alpha[a][b] == 1


def test_r1_model():
    m = build_surface_model("R1")
    assert m.r == 1 and len(m.basis) == 2
    assert sorted(m.fan.rays) == [(-1,), (1,)]


def test_unknown_model():
    with pytest.raises(ValueError):
        build_surface_model("P3")


# -- degrees and preconditions ------------------------------------------------------------


def test_strongly_unimodular_examples():
    assert check_strongly_unimodular([(1, 1), (-1, 0), (0, -1)] * 3) == []
    assert [v.label for v in check_strongly_unimodular([(2, 0), (-1, 0), (-1, 0)])] == ["ii"]
    assert [v.label for v in check_strongly_unimodular([(1, 0), (-1, 2), (0, -1), (0, -1)])] == ["ii"]


def test_unsupported_direction():
    m = build_surface_model("P2")
    assert [v.label for v in check_degree(m, [(1, 0), (-1, 0)])] == ["unsupported"]


def test_wdvv_preconditions_examples():
    ok = parse_key("P2", "2", "pt^4 tau1(pt)")
    assert check_wdvv_preconditions(ok, 0, 1, 2, 3) == []
    bad = parse_key("P2", "2", "tau1(line) line pt^4")
    assert "i" in {v.label for v in check_wdvv_preconditions(bad, 0, 1, 2, 3)}
    # the tau_2(R^2) family in degree one
    fam = parse_key("P2", "1", "pt tau2(R2) line R2")
    assert {"i", "directionality"} <= {v.label for v in check_wdvv_preconditions(fam, 0, 1, 2, 3)}


def test_tr_preconditions():
    key = parse_key("P2", "1", "tau1(pt) line^2")
    pt_mark = key.conditions.index((1, 0))
    line_mark = next(x for x, c in enumerate(key.conditions) if c[0] == 0)
    others = [x for x in range(3) if x != line_mark]
    assert "iv" in {v.label for v in check_tr_preconditions(key, line_mark, *others)}
    assert all(v.label in ("iii", "iv") for v in check_tr_preconditions(key, pt_mark, *[x for x in range(3) if x != pt_mark]))


def test_theta_of_family():
    key = parse_key("P1xP1", "1,1", "pt^3")
    rays = theta_of_family(key)
    assert set(key.degree) <= set(rays)


# -- keys ------------------------------------------------------------------------------------


def test_key_parsing_and_canonical():
    key = parse_key("P2", "2", "pt^3 line tau1(pt)")
    assert key.canonical() == "P2;(-1,0)^2 (0,-1)^2 (1,1)^2;pt^3 line tau1(pt)"
    assert parse_key("P2", "(1,1)^2 (-1,0)^2 (0,-1)^2", "tau_1(pt), line * pt^3") == key
    assert key.degree_factorial() == 8
    assert key.is_zero_dimensional()


@pytest.mark.parametrize("model,degree,conds", [
    ("P2", "2", "tau1(zz)"),
    ("P2", "(1,0) (0,1)", "pt"),
    ("P2", "x", "pt"),
    ("P2", "2", "tau(pt"),
])
def test_bad_keys(model, degree, conds):
    with pytest.raises(ValueError):
        parse_key(model, degree, conds)


# -- degree zero ------------------------------------------------------------------------------


def test_degree_zero_examples():
    m = build_surface_model("P2")
    pt, line, top = m.index("pt"), m.index("line"), m.index("R2")
    assert degree_zero_invariant(m, [(0, line), (0, line), (0, top)]) == 1
    assert compute_invariant(InvariantKey("P2", (), ((0, line), (0, line), (0, line)))) == 0
    assert degree_zero_invariant(m, [(2, pt)] + [(0, top)] * 4) == 1
    assert degree_zero_invariant(m, [(1, pt), (1, top)] + [(0, top)] * 3) == 2


# -- invariants against oracles ---------------------------------------------------------------


def test_kontsevich_numbers():
    assert [compute_invariant(parse_key("P2", str(d), "pt^%d" % (3 * d - 1))) for d in range(1, 5)] == \
        [kontsevich(d) for d in range(1, 5)]


@pytest.mark.parametrize("name", ["F1", "Bl2", "Bl3"])
def test_plane_numbers_on_blow_up_models(name):
    for d in (1, 2, 3):
        assert compute_invariant(parse_key(name, str(d), "pt^%d" % (3 * d - 1))) == kontsevich(d)


@pytest.mark.parametrize("model,degree,psi", [
    ("P2", "1", [1]),
    ("P2", "1", [0, 0]),
    ("P2", "2", [2, 0, 0]),
    ("P2", "2", [2, 1]),
    ("P2", "2", [4]),
    ("P1xP1", "1,1", [1, 0]),
    ("P1xP1", "1,1", [2]),
    ("R1", "2", [1, 1]),
])
def test_point_descendants_against_enumeration(model, degree, psi):
    key = parse_key(model, degree, " ".join("tau%d(pt)" % a for a in psi))
    assert key.is_zero_dimensional()
    eng = GWEngine(model)
    assert eng.labelled(key) == enumerate_point_invariant(key.degree, psi)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_line_target_hurwitz(d):
    key = parse_key("R1", str(d), "tau1(pt)^%d" % (2 * d - 2) if d > 1 else "-")
    assert compute_invariant(key) == hurwitz_closed_form(d)
    assert compute_invariant(key, strategy="last") == hurwitz_closed_form(d)


def test_p1xp1_bidegree_counts():
    # points on P1xP1 in bidegree (a,b): 2a + 2b - 1 conditions
    got = [compute_invariant(parse_key("P1xP1", "%d,%d" % ab, "pt^%d" % (2 * sum(ab) - 1))) for ab in [(1, 0), (1, 1), (2, 1)]]
    assert got == [1, 1, 1]


# -- path independence and consistency --------------------------------------------------------


@settings(max_examples=15)
@given(seeds)
def test_strategies_agree(seed):
    key = random_zero_dim_key(random.Random(seed), max_degree=2)
    a = GWEngine("P2", "first").invariant(key)
    b = GWEngine("P2", "last").invariant(key)
    assert a == b


@settings(max_examples=10)
@given(seeds)
def test_labelled_is_factorial_times_unlabelled(seed):
    key = random_zero_dim_key(random.Random(seed), max_degree=2)
    lab = GWEngine("P2", route="labelled").labelled(key)
    unl = GWEngine("P2", route="unlabelled").unlabelled(key)
    assert lab == key.degree_factorial() * unl


@settings(max_examples=15)
@given(seeds)
def test_invariants_nonnegative(seed):
    rng = random.Random(seed)
    model = rng.choice(["P2", "F1", "Bl2", "Bl3"])
    key = random_zero_dim_key(rng, max_degree=2, model=model)
    assert compute_invariant(key) >= 0


def test_ledger_export():
    eng = GWEngine("P2")
    eng.invariant(parse_key("P2", "2", "pt^5"))
    led = eng.ledger()
    assert led["P2;(-1,0)^2 (0,-1)^2 (1,1)^2;pt^5"] == "1"
    assert all(isinstance(v, str) and Fraction(v) == Fraction(v) for v in led.values())


# -- equations --------------------------------------------------------------------------------


FAMILIES = ["line^2 pt^4", "line^2 pt^2 tau1(pt)", "line^3 pt tau2(pt)"]


@pytest.mark.parametrize("conds", FAMILIES)
def test_wdvv_all_choices(conds):
    key = parse_key("P2", "2", conds)
    eng = GWEngine("P2")
    n = len(key.conditions)
    count = 0
    for i, j, k, l in permutations(range(n), 4):
        if i < j and k < l and i < k:
            try:
                eq = wdvv_reduce(key, i, j, k, l)
            except PreconditionViolation:
                continue
            assert eq.holds(eng), (i, j, k, l)
            count += 1
    assert count > 0


def test_wdvv_labelled():
    key = parse_key("P2", "2", "line^2 pt^4")
    assert wdvv_reduce(key, 0, 1, 2, 3, labelled=True).holds(GWEngine("P2", route="labelled"))


def test_wdvv_needs_one_dimensional_family():
    with pytest.raises(ValueError):
        wdvv_reduce(parse_key("P2", "2", "pt^5"), 0, 1, 2, 3)


@pytest.mark.parametrize("model,degree,conds", [
    ("P2", "2", "tau1(pt) pt^3 line"),
    ("P2", "2", "tau2(pt) pt^2 line^2"),
    ("P1xP1", "1,1", "tau1(pt) pt vertical"),
])
def test_topological_recursion(model, degree, conds):
    key = parse_key(model, degree, conds)
    eng = GWEngine(model)
    checked = 0
    for i, (a, _) in enumerate(key.conditions):
        if not a:
            continue
        for k, l in combinations([x for x in range(len(key.conditions)) if x != i], 2):
            try:
                eq = topological_recursion(key, i, k, l)
            except PreconditionViolation as err:
                assert err.labels
                continue
            assert eq.holds(eng), (i, k, l)
            checked += 1
    assert checked > 0


def line_mark(key):
    return key.conditions.index((0, key.surface.index("line")))


def test_string_dilaton_divisor():
    eng = GWEngine("P2")
    assert string_rewrite(parse_key("P2", "2", "tau2(pt) pt^3 R2")).holds(eng)
    dil = dilaton_rewrite(parse_key("P2", "2", "tau1(R2) pt^5"))
    assert dil.rhs[0].coefficient == 5 + 6 - 2
    assert dil.holds(eng)
    for conds in ["line tau1(pt) pt^3 line", "line tau2(pt) pt^2 line"]:
        key = parse_key("P2", "2", conds)
        assert divisor_rewrite(key, line_mark(key)).holds(eng)
    key = parse_key("P2", "1", "line pt^2")
    eq = divisor_rewrite(key, line_mark(key))
    assert eq.holds(eng) and eq.evaluate(eng) == (1, 1)


def test_dilaton_factor_small():
    # two marks left and three degree leaves
    assert dilaton_rewrite(parse_key("P2", "1", "tau1(R2) pt tau1(pt)")).rhs[0].coefficient == 3


def test_splitting_lemma_matches_engine():
    key = parse_key("P2", "2", "pt^4 line")
    eng = GWEngine("P2", route="labelled")
    one = [(1, 1), (-1, 0), (0, -1)]
    terms = splitting_lemma(key, [0, 1], one, labelled=True)
    assert sum(t.value(eng, True) for t in terms) == eng.splitting_term(key, [0, 1], one)
    with pytest.raises(NotReducible):
        splitting_lemma(key, [0], [(1, 1)])
    with pytest.raises(NotReducible):
        eng.splitting_term(key, [0], [(1, 1)])


# -- guard ------------------------------------------------------------------------------------


@pytest.mark.parametrize("model,degree,conds,label", [
    ("P2", "2", "tau1(line) line^3 pt^4", "i"),
    ("P1xP1", "(2,0) (-1,0)^2", "tau1(pt)", "ii"),
    ("F1", "(1,0) (-1,2) (0,-1)^2", "pt^3", "ii"),
    ("P2", "1", "line pt tau2(R2)", "directionality"),
])
def test_guard(model, degree, conds, label):
    with pytest.raises(PreconditionViolation) as err:
        compute_invariant(parse_key(model, degree, conds))
    assert label in err.value.labels
