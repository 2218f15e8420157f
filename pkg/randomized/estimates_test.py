from fractions import Fraction

import pytest

from fnspace import build_named
from randomized.equality import InnerProductEqRunner, PartitionEqRunner, PrimeEqRunner
from randomized.estimates import default_pairs, exact_error, mc_error, wilson_interval


def test_exact_inner_product():
    estimate = exact_error(InnerProductEqRunner(3), build_named("EQ", 3))
    assert estimate.mode == "exact"
    assert estimate.worst_pair_error == Fraction(1, 2)
    assert len(estimate.per_pair) == 64
    assert estimate.to_json()["worstPairError"]["exact"] == "1/2"


def test_exact_prime():
    assert exact_error(PrimeEqRunner(4), build_named("EQ", 4)).worst_pair_error == 0


def test_exact_needs_matching_sizes():
    with pytest.raises(ValueError):
        exact_error(InnerProductEqRunner(2), build_named("EQ", 3))


def test_no_trials():
    with pytest.raises(ValueError, match="no trials"):
        mc_error(InnerProductEqRunner(3), build_named("EQ", 3), trials=0, seed=1)


def test_monte_carlo_is_seeded():
    runner = PartitionEqRunner(3, 3)
    eq = build_named("EQ", 3)
    first = mc_error(runner, eq, trials=5000, seed=9)
    second = mc_error(runner, eq, trials=5000, seed=9)
    assert [pair.errors for pair in first.per_pair] == [pair.errors for pair in second.per_pair]
    assert first.to_json()["trials"] == 5000


def test_monte_carlo_inner_product():
    estimate = mc_error(InnerProductEqRunner(3), build_named("EQ", 3), trials=10000, seed=4, pairs=[(5, 3), (6, 6)])
    unequal, equal = estimate.per_pair
    assert abs(unequal.error - 0.5) < 0.03
    assert unequal.ci[0] < 0.5 < unequal.ci[1]
    assert equal.error == 0
    assert estimate.worst_pair == (5, 3)
    assert estimate.worst_upper == unequal.ci[1]


def test_monte_carlo_spans_blocks():
    estimate = mc_error(InnerProductEqRunner(2), build_named("EQ", 2), trials=10000, seed=0, pairs=[(1, 2)])
    assert estimate.per_pair[0].trials == 10000
    assert 0.45 < estimate.worst_pair_error < 0.55


def test_default_pairs():
    pairs = default_pairs(build_named("EQ", 3), seed=1)
    assert len(pairs) == 8
    assert sum(x == y for x, y in pairs) == 4
    assert pairs == default_pairs(build_named("EQ", 3), seed=1)


def test_wilson_interval():
    low, high = wilson_interval(0, 10)
    assert low == pytest.approx(0.0, abs=1e-12)
    assert 0 < high < 0.35
    low, high = wilson_interval(50, 100)
    assert low < 0.5 < high
