import pytest

from classes.measures import (
    index_bit_cover,
    is_cover,
    measures_report,
    nondet_complexity,
    sigma_pi_membership,
)
from fnspace import build_named, complement, constant, rectangle_indicator
from randomized.coins import ceil_log2


def test_index_bit_cover_of_inequality():
    cover = index_bit_cover(2)
    assert len(cover) == 4
    assert is_cover(build_named("NE", 2), cover, 1)
    assert not is_cover(build_named("NE", 2), cover[:3], 1)
    assert nondet_complexity(build_named("NE", 2), 1) <= ceil_log2(len(cover)) == 2


def test_equality_needs_every_diagonal_cell():
    assert nondet_complexity(build_named("EQ", 2), 1) == 2
    assert nondet_complexity(build_named("EQ", 3), 1) == 3


def test_constant_functions():
    assert nondet_complexity(constant(2, 2, 1), 1) == 0
    assert nondet_complexity(constant(2, 2, 1), 0) == 0
    with pytest.raises(ValueError):
        nondet_complexity(constant(2, 2, 1), 2)


@pytest.mark.parametrize("name", ["EQ", "NE", "GT", "IP", "DISJ"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_depth_dominates_nondeterministic_costs(name, n):
    report = measures_report(build_named(name, n))
    assert report.ok
    assert report.exact["D"] >= report.exact["N1"]
    assert report.exact["D"] >= report.exact["N0"]
    assert report.exact["D"] == n + 1 or name == "IP"


def test_equality_report():
    report = measures_report(build_named("EQ", 2)).to_json()
    assert report["exact"] == {"D": 3, "N1": 2, "N0": 2}
    assert report["bounds"]["rankQ"] == 4
    assert report["bounds"]["randomizedFromD"] < 2
    assert report["membership"] == {"sigma0": False, "pi0": False}
    assert report["ok"]


def test_sigma_zero():
    indicator = rectangle_indicator(2, 2, [0, 1], [2])
    assert sigma_pi_membership(indicator, "sigma0")
    assert not sigma_pi_membership(indicator, "pi0")
    assert not sigma_pi_membership(build_named("EQ", 2), "sigma0")
    assert not sigma_pi_membership(constant(2, 2, 0), "sigma0")


def test_pi_zero_is_the_complement():
    indicator = rectangle_indicator(2, 2, [3], [0, 3])
    assert sigma_pi_membership(complement(indicator), "pi0")
    assert sigma_pi_membership(constant(2, 2, 0), "pi0")
    with pytest.raises(ValueError):
        sigma_pi_membership(indicator, "sigma1")
