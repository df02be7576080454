import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tropgw.modcurves import MarkedTree, Partition, nontrivial_partitions, psi_product
from tropgw.parmod import (
    Degree,
    NotReducible,
    ParamSpace,
    degree_factorial,
    delta_of_degree,
    h_dot_degree,
    map_equations_suite,
    projective_degree,
    psi_product_param,
    random_curve,
    split_degree,
    standard_h,
)
from tropgw.tropfan import MaxFunction, check_balanced
from cycles_local import fan

seeds = st.integers(0, 10 ** 6)


def test_projective_degree_one_fan():
    got = delta_of_degree(projective_degree(1))
    assert got.equals(fan(2, 1, [([(1, 1)], 1), ([(-1, 0)], 1), ([(0, -1)], 1)]))


def test_delta_sums_lattice_lengths():
    d = Degree.from_directions([(2, 0), (-2, 0)])
    assert delta_of_degree(d).equals(fan(2, 1, [([(1, 0)], 2), ([(-1, 0)], 2)]))
    d = Degree.from_directions([(1, 0), (1, 0), (-2, 0)])
    assert delta_of_degree(d).equals(fan(2, 1, [([(1, 0)], 2), ([(-1, 0)], 2)]))


primitive_dirs = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(any), min_size=1, max_size=5)


@given(primitive_dirs)
def test_delta_balanced(dirs):
    dirs = list(dirs) + [tuple(-sum(v[i] for v in dirs) for i in range(2))]
    if not any(dirs[-1]):
        dirs.pop()
    assert check_balanced(delta_of_degree(Degree.from_directions(dirs))) == []


def test_degree_factorial_examples():
    assert degree_factorial(projective_degree(1)) == 1
    assert degree_factorial(projective_degree(2)) == 8
    assert degree_factorial(Degree.from_directions([(1,), (1,), (1,), (-3,)])) == 6


def test_h_dot_degree_examples():
    maxx = MaxFunction.tropical_max(2, [(0, (1, 0)), (0, (0, 0))])
    assert h_dot_degree(maxx, projective_degree(1)) == 1
    assert h_dot_degree(MaxFunction.linear((2, 5)), projective_degree(3)) == 0
    for d in range(1, 4):
        assert h_dot_degree(standard_h(2), projective_degree(d)) == d


def test_degree_validation():
    with pytest.raises(ValueError):
        Degree.from_directions([(1, 0), (0, 1)])
    with pytest.raises(ValueError):
        Degree.from_directions([(0, 0), (0, 0)])
    d = projective_degree(2)
    assert Degree.from_json(d.to_json()) == d or Degree.from_json(d.to_json()).dirs == d.dirs


def test_split_degree_examples():
    d = projective_degree(2)
    one = [lab for lab in d.labels if lab.endswith(".1")]
    a, b = split_degree(d, one)
    assert sorted(a.dirs) == sorted(projective_degree(1).dirs) == sorted(b.dirs)
    with pytest.raises(NotReducible):
        split_degree(d, [d.labels[0]])
    a, b = split_degree(d, [1, 2])  # marks only
    assert len(a) == 0 and len(b) == len(d)


@pytest.mark.parametrize("marks,deg", [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2)])
def test_reducible_iff_edge_direction_zero(marks, deg):
    d = projective_degree(1) if deg == 1 else Degree.from_directions([(1, 0), (0, 1), (-1, -1), (1, 0), (-1, 0)])
    sp = ParamSpace(marks, d)
    assert len(sp.labels) <= 8
    for p in nontrivial_partitions(sp.labels):
        side = [sp.label_of[x] for x in p.side if x in sp.label_of]
        try:
            split_degree(d, side)
            reducible = True
        except NotReducible:
            reducible = False
        assert reducible == (not any(sp.edge_direction(p.side)))
        assert sp.is_reducible(p) == reducible


def explicit_space():
    return ParamSpace(2, Degree.from_directions([(1,), (-1,)]))


def test_eval_anchor_is_projection():
    sp = explicit_space()
    ev = sp.eval_map(sp.anchor)
    m = ev.matrix
    fan_dim = len(m[0]) - sp.r
    assert all(x == 0 for x in m[0][:fan_dim]) and m[0][fan_dim:] == (1,)


def test_eval_explicit_curve():
    sp = explicit_space()
    # leaves 1, 2 marks; 3 -> (1,), 4 -> (-1,)
    part = Partition.of({1, 3}, sp.labels)
    length = Fraction(7, 3)
    tree = MarkedTree.from_splits(sp.labels, [part], {part: length})
    c = sp.curve(tree, (Fraction(1, 2),))
    assert sp.eval_map(1).apply(c) == (Fraction(1, 2),)
    assert sp.eval_map(2).apply(c) == (Fraction(1, 2) - length,)
    assert sp.eval_map(2)(sp.coordinates(c)) == sp.eval_map(2).apply(c)


def test_common_vertex_gives_equal_images():
    sp = ParamSpace(3, projective_degree(1))
    rng = random.Random(2)
    for _ in range(10):
        c = random_curve(sp, rng)
        for k, l in itertools.combinations(sp.marks, 2):
            if c.tree.vertex_of_leaf(k) == c.tree.vertex_of_leaf(l):
                assert sp.eval_map(k).apply(c) == sp.eval_map(l).apply(c)


@settings(max_examples=25)
@given(seeds)
def test_anchor_independence(seed):
    rng = random.Random(seed)
    sp = ParamSpace(3, projective_degree(1))
    c = random_curve(sp, rng)
    for k in sp.marks:
        for a in sp.marks:
            other = c.reanchor(a)
            assert ParamSpace(sp.marks, sp.degree, a).eval_map(k).apply(other) == sp.eval_map(k).apply(c)
            assert sp.eval_map(k)(sp.coordinates(c)) == sp.eval_map(k).apply(c)


def test_anchor_must_be_mark():
    with pytest.raises(ValueError):
        ParamSpace(2, projective_degree(1), anchor=3)
    with pytest.raises(ValueError):
        explicit_space().eval_map(3)


def test_psi_product_param_weights():
    sp = ParamSpace(3, projective_degree(1))
    p = psi_product_param(sp, (1, 1, 0))
    abstract = psi_product(sp.labels, {k: (1 if k in (1, 2) else 0) for k in sp.labels})
    assert p.weights == abstract.weights
    assert p.dim == abstract.dim + 2
    x = p.to_complex()
    assert x.dim == p.dim and check_balanced(x) == []
    assert set(x.weights.values()) == set(abstract.weights.values())


@pytest.mark.parametrize("space", [ParamSpace(1, Degree.from_directions([(1,), (-1,)])),
                                   ParamSpace(2, projective_degree(1))], ids=["r1", "p2"])
def test_map_equations(space):
    rep = map_equations_suite(space, samples=5)
    assert rep.passed, [c.name for c in rep.failures]


def test_dilaton_factor_two_marks_three_leaves():
    sp = ParamSpace(2, projective_degree(1))
    assert len(sp.labels) - 2 == 3
