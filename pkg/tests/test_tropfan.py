import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from tropgw.tropfan import (
    CycleMorphism,
    MaxFunction,
    MinkowskiWeight,
    NonTransversalError,
    Polyhedron,
    RayValueFunction,
    SimplicialFan,
    WeightedComplex,
    check_balanced,
    complex_from_dict,
    complex_to_dict,
    degree0,
    diagonal_intersection,
    divisor,
    dumps_complex,
    fan_displacement_product,
    function_from_dict,
    function_to_dict,
    germ,
    is_convex_on,
    loads_complex,
    product,
    pull_back,
    push_forward,
    random_translation,
    recession_fan,
    refine,
    star,
    transversal_intersection,
)
from cycles_local import curve, fan, line_fan, make_vertex, poly, random_vector

seeds = st.integers(0, 10 ** 6)


# -- balancing ---------------------------------------------------------------


def test_balanced_line_in_r1():
    assert check_balanced(fan(1, 1, [([(1,)], 1), ([(-1,)], 1)])) == []


def test_balanced_tropical_line():
    assert check_balanced(line_fan()) == []


def test_unbalanced_tropical_line():
    bad = check_balanced(line_fan((2, 1, 1)))
    assert len(bad) == 1
    assert bad[0][0] == Polyhedron.point((0, 0))


# -- divisors -------------------------------------------------------------------


def corner_weight_oracle(phi, point):
    """Lattice length of the slope jump of a single max at a point of its corner locus."""
    (c, terms), = phi.components
    vals = [b + sum(a * x for a, x in zip(cov, point)) for b, cov in terms]
    top = max(vals)
    tied = [terms[i][1] for i, v in enumerate(vals) if v == top]
    assert len(tied) >= 2
    # collinear slopes when more than two terms tie: take the extreme pair
    return max(gcd(*[int(a - b) for a, b in zip(s, t)]) for s in tied for t in tied)


def test_divisor_of_standard_max_is_line():
    phi = MaxFunction.tropical_max(2, [(0, (0, 0)), (0, (1, 0)), (0, (0, 1))])
    d = divisor(phi, WeightedComplex.space(2))
    assert d.equals(line_fan())
    for cell, w in d.weights.items():
        q = cell.interior_point()
        assert w == corner_weight_oracle(phi, q)


def test_divisor_of_linear_is_zero():
    phi = MaxFunction.linear((3, -2), 5)
    assert divisor(phi, line_fan()).is_empty()
    assert divisor(phi, WeightedComplex.space(2)).is_empty()


def test_iterated_divisor_is_origin():
    x = divisor(MaxFunction.tropical_max(2, [(0, (1, 0)), (0, (0, 0))]), WeightedComplex.space(2))
    p = divisor(MaxFunction.tropical_max(2, [(0, (0, 1)), (0, (0, 0))]), x)
    assert p.equals(WeightedComplex.origin(2))


@given(seeds, st.integers(1, 3))
def test_divisor_weights_match_corner_oracle(seed, d):
    rng = random.Random(seed)
    phi = poly(2, d, rng)
    c = divisor(phi, WeightedComplex.space(2))
    assert check_balanced(c) == []
    for cell, w in c.weights.items():
        assert w == corner_weight_oracle(phi, cell.interior_point())


@given(seeds)
def test_divisor_commutes(seed):
    rng = random.Random(seed)
    x = divisor(poly(3, rng.randint(1, 2), rng), WeightedComplex.space(3))
    f, g = poly(3, 1, rng), poly(3, rng.randint(1, 2), rng)
    assert divisor(f, divisor(g, x)).equals(divisor(g, divisor(f, x)))


@given(seeds)
def test_convex_function_gives_positive_divisor(seed):
    rng = random.Random(seed)
    phi = poly(2, rng.randint(1, 3), rng)
    assert is_convex_on(phi, WeightedComplex.space(2))
    d = divisor(phi, WeightedComplex.space(2))
    assert all(w > 0 for w in d.weights.values())
    # support = non-linearity locus: two maximal terms at every facet point
    for cell in d.facets():
        q = cell.interior_point()
        (c, terms), = phi.components
        vals = [b + sum(a * x for a, x in zip(cov, q)) for b, cov in terms]
        assert vals.count(max(vals)) >= 2


def test_convexity_examples():
    r1 = WeightedComplex.space(1)
    assert is_convex_on(MaxFunction.tropical_max(1, [(0, (1,)), (0, (0,))]), r1)
    assert not is_convex_on(MaxFunction(1, [(-1, [(0, (1,)), (0, (0,))])]), r1)


# -- star and germ ----------------------------------------------------------------


def test_star_of_facet():
    x = line_fan((1, 3, 1))
    cell = next(c for c in x.facets() if c.rays == ((-1, 0),))
    s, _ = star(x, cell)
    assert s.dim == 0 and s.degree() == 3


def test_star_of_vertex_is_fan():
    x = line_fan()
    s, q = star(x, Polyhedron.point((0, 0)))
    assert s.dim == 1 and len(s) == 3 and check_balanced(s) == []


def test_germ_of_linear_function_has_no_divisor():
    x = WeightedComplex.space(2)
    x = make_vertex(x, (0, 0))
    fan_, g = germ(MaxFunction.linear((1, 2)), x, Polyhedron.point((0, 0)))
    assert divisor(g, fan_).is_empty()


def test_germ_at_ray_of_line():
    phi = MaxFunction.tropical_max(2, [(0, (0, 0)), (0, (1, 0)), (0, (0, 1))])
    x = refine(WeightedComplex.space(2), phi)
    ray = Polyhedron([(0, 0)], [(1, 1)])
    fan_, g = germ(phi, x, ray)
    assert fan_.dim == 1
    assert divisor(g, fan_).degree() == 1


@given(seeds)
def test_locality_of_divisor_weights(seed):
    rng = random.Random(seed)
    x = curve(rng.randint(1, 2), rng)
    phi = poly(2, rng.randint(1, 2), rng)
    x = refine(x, phi)
    d = divisor(phi, x)
    for cell in x.cells():
        if cell.dim != 0:
            continue
        fan_, g = germ(phi, x, cell)
        local = divisor(g, fan_)
        assert local.degree() == d.weight(cell) if not local.is_empty() else d.weight(cell) == 0


@settings(max_examples=15)
@given(seeds)
def test_star_of_intersection_is_intersection_of_stars(seed):
    rng = random.Random(seed)
    x = curve(rng.randint(1, 2), rng)
    y, _ = random_translation(curve(rng.randint(1, 2), rng), seed=seed, against=x)
    xy = diagonal_intersection(x, y)
    for p, w in xy.weights.items():
        pt = p.points[0]
        sx, _ = star(make_vertex(x, pt), p)
        sy, _ = star(make_vertex(y, pt), p)
        assert degree0(diagonal_intersection(sx, sy)) == w


# -- morphisms -------------------------------------------------------------------


def test_push_forward_identity():
    x = line_fan((1, 1, 1))
    assert push_forward(CycleMorphism.linear([[1, 0], [0, 1]]), x).equals(x)


def test_push_forward_doubling():
    got = push_forward(CycleMorphism.linear([[2]]), WeightedComplex.space(1))
    assert got.equals(WeightedComplex.space(1, 2))


def test_push_forward_projection_of_line():
    got = push_forward(CycleMorphism.linear([[1, 0]]), line_fan())
    want = fan(1, 1, [([(1,)], 1), ([(-1,)], 1)])
    assert got.equals(want) or got.equals(WeightedComplex.space(1))


def test_pull_back_linear_and_identity():
    f = CycleMorphism.linear([[1, 2], [0, 1]])
    lin = MaxFunction.linear((1, -1))
    pb = pull_back(f, lin)
    for x in [(0, 0), (1, 3), (-2, 5)]:
        assert pb.value(x) == lin.value(f(x))
    phi = MaxFunction.tropical_max(2, [(0, (0, 0)), (1, (1, 0))])
    ident = pull_back(CycleMorphism.linear([[1, 0], [0, 1]]), phi)
    assert ident.value((Fraction(1, 3), 4)) == phi.value((Fraction(1, 3), 4))


@settings(max_examples=25)
@given(seeds)
def test_projection_formula(seed):
    rng = random.Random(seed)
    x = divisor(poly(3, rng.randint(1, 2), rng), WeightedComplex.space(3))
    rows = rng.randint(1, 2)
    m = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(rows)]
    if not any(any(r) for r in m):
        m[0][0] = 1
    f = CycleMorphism.linear(m)
    phi = poly(rows, rng.randint(1, 2), rng)
    lhs = push_forward(f, divisor(pull_back(f, phi), x))
    rhs = divisor(phi, push_forward(f, x))
    assert lhs.equals(rhs)


# -- products and intersections --------------------------------------------------------


def test_product_with_point():
    x = line_fan()
    assert product(x, WeightedComplex.space(0)).equals(x)


def test_product_of_lines():
    l1 = fan(1, 1, [([(1,)], 2), ([(-1,)], 2)])
    p = product(l1, fan(1, 1, [([(1,)], 3), ([(-1,)], 3)]))
    assert p.dim == 2 and len(p) == 4
    assert set(p.weights.values()) == {6}
    assert check_balanced(p) == []


def test_space_is_identity():
    x = line_fan()
    assert diagonal_intersection(WeightedComplex.space(2), x).equals(x)


def test_line_self_intersection():
    assert degree0(diagonal_intersection(line_fan(), line_fan())) == 1


def test_transversal_examples():
    a = line_fan()
    b = a.translate((1, 2))
    t = transversal_intersection(a, b)
    assert degree0(t) == 1
    assert t.equals(diagonal_intersection(a, b))
    r1 = WeightedComplex(2, 1, {Polyhedron([(0, 0)], (), [(1, 1)]): 1})
    r2 = WeightedComplex(2, 1, {Polyhedron([(0, 0)], (), [(1, -1)]): 1})
    assert degree0(transversal_intersection(r1, r2)) == 2


def test_transversal_rejects_overlap():
    with pytest.raises(NonTransversalError):
        transversal_intersection(line_fan(), line_fan())


@given(seeds, st.integers(1, 2), st.integers(1, 2))
def test_transversal_equals_stable(seed, d, e):
    rng = random.Random(seed)
    x = curve(d, rng)
    y, _ = random_translation(curve(e, rng), seed=seed, against=x)
    t = transversal_intersection(x, y)
    assert t.equals(diagonal_intersection(x, y))
    assert degree0(t) == d * e


@given(seeds)
def test_degree_invariant_under_translation(seed):
    rng = random.Random(seed)
    x, z = curve(rng.randint(1, 2), rng), curve(rng.randint(1, 2), rng)
    v = random_vector(rng, 2)
    assert degree0(diagonal_intersection(x.translate(v), z)) == degree0(diagonal_intersection(x, z))


def test_diagonal_ambient_mismatch():
    with pytest.raises(ValueError):
        diagonal_intersection(WeightedComplex.space(1), WeightedComplex.space(2))


def test_bezout_two_conics():
    rng = random.Random(3)
    assert degree0(diagonal_intersection(curve(2, rng), curve(2, rng))) == 4


# -- Minkowski weights ---------------------------------------------------------------------


def p2_fan():
    return SimplicialFan.from_rays_2d([(1, 1), (-1, 0), (0, -1)])


def test_fundamental_weight_is_identity():
    f = p2_fan()
    line = MinkowskiWeight(f, 1, {(0,): 1, (1,): 1, (2,): 1})
    assert fan_displacement_product(f.fundamental(), line).to_cycle().equals(line.to_cycle())


def test_line_times_line_on_p2():
    f = p2_fan()
    line = MinkowskiWeight(f, 1, {(0,): 1, (1,): 1, (2,): 1})
    got = fan_displacement_product(line, line)
    assert got.values == {(): 1}
    assert got.to_cycle().equals(diagonal_intersection(line.to_cycle(), line.to_cycle()))


def test_parallel_rulings_on_p1xp1():
    f = SimplicialFan.from_rays_2d([(1, 0), (-1, 0), (0, 1), (0, -1)])
    i = f.rays.index((1, 0)), f.rays.index((-1, 0))
    ruling = MinkowskiWeight(f, 1, {(i[0],): 1, (i[1],): 1})
    assert fan_displacement_product(ruling, ruling).values == {}


# -- recession fans, degrees, translation -----------------------------------------------------


def test_recession_fan_examples():
    bounded = WeightedComplex(2, 1, {Polyhedron([(0, 0), (1, 0)]): 1})
    assert recession_fan(bounded).is_empty()
    assert recession_fan(line_fan()).equals(line_fan())
    assert recession_fan(line_fan().translate((3, -1))).equals(line_fan())


def test_degree0_examples():
    assert degree0(WeightedComplex.empty(2, 0)) == 0
    assert degree0(WeightedComplex.origin(2, 5)) == 5
    with pytest.raises(ValueError):
        degree0(line_fan())


def test_translation_preserves_balancing_and_recession():
    x = curve(2, random.Random(1))
    y, v = random_translation(x, seed=4)
    assert check_balanced(y) == []
    assert recession_fan(y).equals(recession_fan(x))


# -- JSON -----------------------------------------------------------------------------------


@given(seeds)
def test_json_round_trip(seed):
    rng = random.Random(seed)
    x = curve(rng.randint(1, 3), rng)
    text = dumps_complex(x)
    y = loads_complex(text)
    assert y.equals(x)
    assert dumps_complex(y) == text
    assert complex_from_dict(complex_to_dict(x)).equals(x)


def test_function_round_trip():
    phi = MaxFunction.tropical_max(2, [(Fraction(1, 2), (1, 0)), (3, (0, 1)), (0, (0, 0))])
    again = function_from_dict(function_to_dict(phi))
    for p in [(0, 0), (1, 5), (Fraction(-7, 3), 2)]:
        assert again.value(p) == phi.value(p)
    rv = RayValueFunction(2, {(1, 1): Fraction(1, 3), (-1, 0): 2, (0, -1): 0})
    again = function_from_dict(function_to_dict(rv))
    assert again.values == rv.values
