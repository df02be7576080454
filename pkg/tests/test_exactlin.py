from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tropgw.exactlin import (
    INFINITE,
    Sublattice,
    det,
    hermite_normal_form,
    index_of_sum,
    inverse,
    lattice_index,
    nullspace,
    primitive_vector,
    rank,
    smith_normal_form,
    solve,
)
from oracles_local import det_fraction, determinantal_divisors


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def diag(d):
    return [d[i][i] for i in range(min(len(d), len(d[0])))]


def test_snf_identity():
    u, d, v = smith_normal_form([[1, 0], [0, 1]])
    assert [list(r) for r in d] == [[1, 0], [0, 1]]


def test_snf_diag_2_3():
    _, d, _ = smith_normal_form([[2, 0], [0, 3]])
    assert diag(d) == determinantal_divisors([[2, 0], [0, 3]]) == [1, 6]


def test_snf_zero():
    _, d, _ = smith_normal_form([[0, 0], [0, 0], [0, 0]])
    assert all(x == 0 for row in d for x in row)


ints = st.integers(-9, 9)
matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(lambda c: st.lists(st.lists(ints, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_snf_factorization(m):
    u, d, v = smith_normal_form(m)
    assert [list(r) for r in matmul(matmul(u, m), v)] == [list(r) for r in d]
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    ds = diag(d)
    assert all(x >= 0 for x in ds)
    assert all(ds[i + 1] % ds[i] == 0 for i in range(len(ds) - 1) if ds[i])
    assert ds == determinantal_divisors(m)


@given(matrices)
def test_hnf_spans_same_lattice(m):
    h = hermite_normal_form(m)
    assert len(h) == rank(m)
    lat_h = Sublattice(len(m[0]), h)
    assert all(lat_h.contains(row) for row in m)
    # h rows are integer combinations of m rows: compare elementary divisors of the two spans
    if h:
        assert [x for x in determinantal_divisors(m) if x] == [x for x in determinantal_divisors([list(r) for r in h]) if x]
    for row in h:
        pivot = next(x for x in row if x)
        assert pivot > 0


def test_lattice_index_examples():
    assert lattice_index([[2, 0], [0, 3]]) == 6
    assert lattice_index([[1, 1], [0, 1]]) == 1
    assert lattice_index([[1], [1]]) is INFINITE


square = st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(ints, min_size=n, max_size=n), min_size=n, max_size=n))


@given(square)
def test_lattice_index_is_abs_det(m):
    d = det(m)
    assert d == det_fraction(m)
    if d:
        assert lattice_index(m) == abs(d)
    else:
        assert lattice_index(m) is INFINITE


@given(st.lists(st.lists(ints, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(ints, min_size=3, max_size=3))
def test_index_multiplicative_over_kernel(h1, hp):
    # h = h1 x h' : Z^3 -> Z^3 x Z, index(h) = index(h1 on ker h') * index(h')
    if not any(hp):
        return
    h = [list(r) for r in h1] + [list(hp)]
    ker = [[int(x) for x in v] for v in nullspace([hp], 3)]
    ker_lat = Sublattice.saturated(ker, 3)
    left = lattice_index(h1, ker_lat)
    right = lattice_index([hp])
    total = lattice_index(h)
    if left is INFINITE:
        assert total is INFINITE
    else:
        assert total == left * right


def test_index_of_sum_examples():
    z = lambda *g: Sublattice.from_generators(g, 2)
    assert index_of_sum(z((1, 0)), z((0, 1))) == 1
    assert index_of_sum(z((1, 1)), z((1, -1))) == 2 == determinantal_divisors([[1, 1], [1, -1]])[1]
    assert index_of_sum(z((1, 0)), z((2, 0))) is INFINITE


def test_primitive_vector_rank_one():
    big = Sublattice.saturated([(2, 4)], 2)
    v = primitive_vector(Sublattice(2, ()), big, (1, 2))
    assert v == (1, 2)


def test_primitive_vector_reduced_modulo_small():
    small = Sublattice.from_generators([(1, 0)], 2)
    v = primitive_vector(small, Sublattice.full(2), (3, 2))
    assert v == (0, 1)


def test_primitive_vector_diagonal():
    small = Sublattice.from_generators([(1, 1)], 2)
    v = primitive_vector(small, Sublattice.full(2), (1, 0))
    assert determinantal_divisors([list(v), [1, 1]]) == [1, 1]
    assert det([list(v), [1, 1]]) in (1, -1)


@given(st.lists(st.lists(ints, min_size=3, max_size=3), min_size=1, max_size=2),
       st.lists(ints, min_size=3, max_size=3))
def test_primitive_vector_generates_quotient(small_gens, direction):
    small = Sublattice.saturated(small_gens, 3)
    big = Sublattice.saturated(list(small_gens) + [direction], 3)
    if big.rank != small.rank + 1:
        return
    v = primitive_vector(small, big, direction)
    stacked = [list(r) for r in small.basis] + [list(v)]
    coords = [[int(c) for c in big.coordinates(r)] for r in stacked]
    assert determinantal_divisors(coords) == [1] * big.rank


@given(square)
def test_inverse_and_solve(m):
    if not det(m):
        return
    inv = inverse(m)
    n = len(m)
    assert matmul(m, inv) == [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    b = list(range(1, n + 1))
    x = solve(m, b)
    assert [sum(a * y for a, y in zip(row, x)) for row in m] == b


def test_nullspace_and_rank():
    m = [[1, 2, 3], [2, 4, 6]]
    assert rank(m) == 1
    ker = nullspace(m, 3)
    assert len(ker) == 2
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


def test_solve_inconsistent():
    assert solve([[1, 1], [1, 1]], [1, 2]) is None


def test_from_generators_rejects_wrong_length():
    with pytest.raises(ValueError):
        Sublattice.from_generators([(1, 2, 3)], 2)
