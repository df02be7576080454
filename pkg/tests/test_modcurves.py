import itertools
import random
from fractions import Fraction
from math import factorial, prod

import pytest
from hypothesis import given, settings, strategies as st

from tropgw.modcurves import (
    MarkedTree,
    Partition,
    abstract_invariant,
    boundary_divisor_weight,
    embed_moduli_fan,
    enumerate_types,
    forgetful_pushpull_suite,
    moduli_fan_suite,
    nontrivial_partitions,
    parse_tree,
    psi_divisor_weight,
    psi_product,
    psi_value,
    string_dilaton_abstract,
    v_vector,
)
from tropgw.tropfan import check_balanced, divisor, is_convex_on


def double_factorial(k):
    return prod(range(k, 0, -2)) if k > 0 else 1


def compatible(a, b, labels):
    a, b = frozenset(a), frozenset(b)
    return not (a & b) or a <= b or b <= a or a | b == labels


def brute_force_type_count(n, k):
    """Sets of k pairwise compatible non-leaf splits, each split by its side without label 1."""
    labels = frozenset(range(1, n + 1))
    rest = labels - {1}
    sides = [frozenset(c) for r in range(2, n - 1) for c in itertools.combinations(sorted(rest), r)]
    return sum(1 for combo in itertools.combinations(sides, k)
               if all(compatible(a, b, labels) for a, b in itertools.combinations(combo, 2)))


# -- types ----------------------------------------------------------------------------


def test_types_n4():
    assert len(enumerate_types(4, 1)) == 3
    assert len(enumerate_types(4, 0)) == 1
    sides = {t.splits for t in enumerate_types(4, 1)}
    assert {str(next(iter(s))) for s in sides} == {"12|34", "13|24", "14|23"}


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_trivalent_count(n):
    assert len(enumerate_types(n, n - 3)) == double_factorial(2 * n - 5)


@pytest.mark.parametrize("n,k", [(5, 1), (6, 1), (6, 2), (7, 2)])
def test_type_count_brute_force(n, k):
    assert len(enumerate_types(n, k)) == brute_force_type_count(n, k)


def test_tree_text_round_trip():
    for t in enumerate_types(6, 2):
        assert parse_tree(t.to_text()) == t


# -- coordinates ----------------------------------------------------------------------------


def test_v_vector_n4():
    labels = (1, 2, 3, 4)
    v = v_vector(Partition.of({1, 2}, labels), labels)
    pairs = list(itertools.combinations(labels, 2))
    assert dict(zip(pairs, v)) == {(1, 2): 0, (1, 3): 1, (1, 4): 1, (2, 3): 1, (2, 4): 1, (3, 4): 0}


@given(st.integers(0, 10 ** 6))
def test_four_valent_identity(seed):
    rng = random.Random(seed)
    labels = tuple(range(1, 8))
    parts = [[] for _ in range(4)]
    for i, x in enumerate(rng.sample(labels, len(labels))):
        parts[i % 4 if i < 4 else rng.randrange(4)].append(x)
    a, b, c, d = map(frozenset, parts)

    def vv(side):
        return v_vector(Partition.of(side, labels), labels)

    lhs = [sum(t) for t in zip(vv(a | b), vv(a | c), vv(a | d))]
    rhs = [sum(t) for t in zip(vv(a), vv(b), vv(c), vv(d))]
    assert lhs == rhs


def test_leaf_vectors_vanish_in_quotient():
    m = embed_moduli_fan(5)
    for k in m.labels:
        assert not any(m.project(v_vector(Partition.of([k], m.labels), m.labels)))


def test_embedding_n4_n5():
    m4 = embed_moduli_fan(4)
    x4 = m4.complex()
    assert len(x4) == 3 and x4.dim == 1 and check_balanced(x4) == []
    x5 = embed_moduli_fan(5).complex()
    assert len(x5) == 15 and len(embed_moduli_fan(5).rays) == 10
    assert set(x5.weights.values()) == {1}


@pytest.mark.parametrize("n", [4, 5, 6])
def test_embedding_balanced_and_locally_irreducible(n):
    x = embed_moduli_fan(n).complex()
    assert check_balanced(x) == []
    assert all(len(sigmas) == 3 for sigmas in x.ridges().values())


def test_embedding_limit():
    with pytest.raises(ValueError):
        embed_moduli_fan(8, max_n=7)


# -- functions ---------------------------------------------------------------------------------


def test_psi_value_examples():
    assert psi_value(6, 5, Partition.of({1, 2}, range(1, 7))) == Fraction(1, 10)
    assert psi_value(4, 3, Partition.of({1, 2}, range(1, 5))) == Fraction(1, 3)
    # leaf on the I side: the side without k plays the role of I
    assert psi_value(6, 1, Partition.of({1, 2}, range(1, 7))) == Fraction(4 * 3, 5 * 4)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_psi_functions_convex(n):
    m = embed_moduli_fan(n)
    for k in m.labels:
        assert is_convex_on(m.psi(k), m.complex())


def test_boundary_weight_examples():
    labels = range(1, 6)
    ridge = parse_tree("((1,2,3),4,5)")  # branches {1},{2},{3},{4,5}
    assert boundary_divisor_weight(Partition.of({1, 2}, labels), ridge) == 1
    assert boundary_divisor_weight(Partition.of({4, 5}, labels), ridge) == -1
    assert boundary_divisor_weight(Partition.of({1, 4}, labels), ridge) == 0
    assert psi_divisor_weight(1, ridge) == 1 and psi_divisor_weight(4, ridge) == 0


@pytest.mark.parametrize("n", [5, 6])
def test_boundary_weight_against_fan_divisor(n):
    m = embed_moduli_fan(n)
    x = m.complex()
    for part in nontrivial_partitions(m.labels):
        d = divisor(m.phi(part), x)
        got = m.weights_by_type(d)
        for ridge in enumerate_types(m.labels, n - 4):
            assert got.get(ridge, 0) == boundary_divisor_weight(part, ridge)


def test_phi_products_vanish():
    m = embed_moduli_fan(5)
    x = m.complex()
    for i, j, k in itertools.permutations(m.labels, 3):
        pij = m.phi({i, j})
        assert divisor(m.phi({i, k}), divisor(pij, x)).is_empty()
        assert divisor(m.psi(i), divisor(pij, x)).is_empty()


# -- psi-products -----------------------------------------------------------------------------


def test_psi_product_examples():
    f = psi_product(5, (2, 0, 0, 0, 0))
    assert f.dim == 0 and list(f.weights.values()) == [1]
    (t,) = f.weights
    assert t.vertex_of_leaf(1).valence == 5
    g = psi_product(5, (1, 1, 0, 0, 0))
    assert g.degree() == 2
    h = psi_product(6, (1, 0, 0, 0, 0, 0))
    assert h.dim == 2 and set(h.weights.values()) == {1}
    assert all(t.vertex_of_leaf(1).valence == 4 for t in h.weights)


def test_abstract_invariant_examples():
    assert abstract_invariant((1, 0, 0, 0)) == 1
    assert abstract_invariant((1, 1, 0, 0, 0)) == 2
    assert abstract_invariant((2, 1, 1, 0, 0, 0, 0)) == 12


def exponent_vectors(n, total):
    return [a for a in itertools.product(range(total + 1), repeat=n) if sum(a) == total]


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_closed_form(n):
    for a in exponent_vectors(n, n - 3):
        assert psi_product(n, a).degree() == factorial(n - 3) // prod(factorial(x) for x in a)


@pytest.mark.parametrize("n", [4, 5])
def test_psi_product_equals_iterated_divisor(n):
    m = embed_moduli_fan(n)
    for total in range(0, n - 3):
        for a in exponent_vectors(n, total):
            x = m.complex()
            for k, e in zip(m.labels, a):
                for _ in range(e):
                    x = divisor(m.psi(k), x)
            assert m.weights_by_type(x) == psi_product(n, a).weights


@settings(max_examples=10)
@given(st.lists(st.integers(0, 5), min_size=1, max_size=2))
def test_psi_product_equals_iterated_divisor_n6(marks):
    a = [marks.count(k) for k in range(6)]
    m = embed_moduli_fan(6)
    x = m.complex()
    for k, e in zip(m.labels, a):
        for _ in range(e):
            x = divisor(m.psi(k), x)
    assert m.weights_by_type(x) == psi_product(6, a).weights


def test_psi_product_json_round_trip():
    from tropgw.modcurves import PsiProductFan

    f = psi_product(6, (1, 1, 0, 0, 0, 0))
    g = PsiProductFan.from_json(f.to_json())
    assert g.weights == f.weights and g.exponents == f.exponents


# -- identities ---------------------------------------------------------------------------------


@pytest.mark.parametrize("n", [3, 4])
def test_forgetful_identities(n):
    rep = forgetful_pushpull_suite(n, max_n=6)
    assert rep.passed, [c.name for c in rep.failures]


def test_moduli_fan_suite_n5():
    rep = moduli_fan_suite(5, max_n=6)
    assert rep.passed, [c.name for c in rep.failures]


def test_string_dilaton_abstract():
    rep = string_dilaton_abstract(7)
    assert rep.passed, [c.name for c in rep.failures]
    # string on <tau_1 tau_0^3>: 1 = <tau_0^3>
    assert abstract_invariant((1, 0, 0, 0)) == abstract_invariant((0, 0, 0)) == 1
    # dilaton: removing tau_1 from five marks leaves four, factor 4 - 2
    assert abstract_invariant((1, 1, 0, 0, 0)) == (4 - 2) * abstract_invariant((1, 0, 0, 0))
