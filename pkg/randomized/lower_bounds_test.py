import math

import pytest

from fnspace import build_named, constant, from_matrix
from randomized.lambda_function import lambda_inv
from randomized.lower_bounds import distinct_rows, one_way_lower_bound, rnd_lower_bound_values


def test_bound_values():
    values = rnd_lower_bound_values(1024)
    assert 10 - math.log2(10) <= values["rowCountBound"] <= 10
    assert values["detSimBound"] == pytest.approx(lambda_inv(6 * 1025) - math.log2(6))
    assert values["rowCountApplicable"]


def test_repeated_rows():
    f = from_matrix([[0, 1], [0, 1]])
    values = rnd_lower_bound_values(2, f=f)
    assert not values["rowCountApplicable"]
    assert values["distinctRows"] == 1
    assert rnd_lower_bound_values(4, f=build_named("EQ", 2))["rowCountApplicable"]


def test_one_way_bound():
    assert one_way_lower_bound(build_named("EQ", 2)) == 2
    assert one_way_lower_bound(build_named("GT", 3)) == 3
    assert one_way_lower_bound(constant(2, 2, 1)) == 0
    assert distinct_rows(from_matrix([[0, 1], [1, 0]])) == 2


def test_bound_domain():
    with pytest.raises(ValueError):
        rnd_lower_bound_values(1)
    with pytest.raises(ValueError):
        rnd_lower_bound_values(8, eps=0.5)
