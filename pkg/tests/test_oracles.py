from fractions import Fraction

import pytest

from tropgw.oracles import enumerate_point_invariant, hurwitz_closed_form, kontsevich, line_cover_count
from tropgw.parmod import projective_degree


def test_kontsevich_values():
    assert [kontsevich(d) for d in range(1, 6)] == [1, 1, 12, 620, 87304]
    with pytest.raises(ValueError):
        kontsevich(0)


def test_hurwitz_closed_form_values():
    assert [hurwitz_closed_form(d) for d in range(1, 5)] == [1, Fraction(1, 2), 4, 120]


@pytest.mark.parametrize("d", [1, 2, 3])
def test_enumeration_matches_hurwitz(d):
    assert line_cover_count(d) == hurwitz_closed_form(d)


def test_enumeration_line_through_two_points():
    assert enumerate_point_invariant(projective_degree(1).dirs, [0, 0]) == 1


def test_enumeration_independent_of_points():
    dirs = projective_degree(1).dirs
    assert {enumerate_point_invariant(dirs, [0, 0], seed=s) for s in range(4)} == {1}


def test_enumeration_dimension_mismatch_is_zero():
    # tau_1(pt) pt in degree one: codimension 5 on a 4-dimensional space
    assert enumerate_point_invariant(projective_degree(1).dirs, [0]) == 0
