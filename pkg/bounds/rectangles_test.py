from fractions import Fraction

import numpy as np
import pytest

from bounds.rectangles import discrepancy_bound, max_mono_rectangle, max_weight_rectangle, maximal_rectangle_objects
from fnspace import SizeLimitExceeded, build_named, constant


def test_inner_product_rectangles():
    for n in (1, 2, 3):
        ip = build_named("IP", n)
        size0, rectangle0 = max_mono_rectangle(ip, 0)
        size1, rectangle1 = max_mono_rectangle(ip, 1)
        assert size0 == 2**n
        assert size1 == 2 ** (n - 1)
        assert rectangle0.color(ip) == 0 and rectangle0.area == size0
        assert rectangle1.color(ip) == 1 and rectangle1.area == size1


def test_equality_one_rectangles_are_cells():
    for n in (1, 2, 3):
        assert max_mono_rectangle(build_named("EQ", n), 1)[0] == 1


def test_missing_color():
    assert max_mono_rectangle(constant(1, 1, 0), 1) == (0, None)


def test_maximal_rectangles_of_equality():
    eq = build_named("EQ", 2)
    ones = maximal_rectangle_objects(eq, 1)
    assert len(ones) == 4
    assert all(rectangle.area == 1 for rectangle in ones)
    for rectangle in maximal_rectangle_objects(eq, 0):
        assert rectangle.color(eq) == 0
        assert not rectangle.rows & rectangle.cols


def test_rectangle_limit():
    with pytest.raises(SizeLimitExceeded):
        max_mono_rectangle(build_named("EQ", 3), 0, limit_bits=4)


def test_weighted_rectangle():
    weights = np.zeros((4, 4))
    weights[3, 2] = 0.5
    weights[0, 1] = 0.25
    value, rectangle = max_weight_rectangle(build_named("EQ", 2), 0, weights)
    assert value == Fraction(3, 4)
    assert rectangle.color(build_named("EQ", 2)) == 0


def test_discrepancy_on_zeros_of_inner_product():
    result = discrepancy_bound(build_named("IP", 2), "zeros")
    assert result.w0 == Fraction(4, 10)
    assert result.bound_color0 == Fraction(5, 2)
    assert result.bound_color1 is None


def test_discrepancy_on_ones_of_inner_product():
    result = discrepancy_bound(build_named("IP", 2), "ones")
    assert result.w1 == Fraction(2, 6)
    assert result.bound_color1 == 3


def test_discrepancy_of_constant():
    result = discrepancy_bound(constant(2, 2, 0), "uniform")
    assert result.bound == 1
    assert result.to_json()["bound"]["exact"] == "1"


def test_discrepancy_needs_weight():
    with pytest.raises(ValueError):
        discrepancy_bound(constant(1, 1, 0), "ones")
    with pytest.raises(ValueError):
        discrepancy_bound(constant(1, 1, 0), "heavy")
