from fractions import Fraction

import pytest

from fnspace import build_named
from randomized.derandomize import PrivateFromPublicRunner, derandomize_public, string_count
from randomized.equality import InnerProductEqRunner, PrimeEqRunner
from randomized.estimates import exact_error


def test_string_count():
    assert string_count(4, Fraction(1, 4)) == 512
    assert string_count(4, Fraction(1, 4), c=1) == 64


def test_inner_product_strings():
    eq = build_named("EQ", 4)
    runner = InnerProductEqRunner(4)
    result = derandomize_public(eq, runner, Fraction(1, 4), seed=0)
    assert result
    assert result.t == 512
    assert len(result.strings) == 512
    assert result.worst_error <= Fraction(3, 4)
    assert result.target == Fraction(3, 4)

    private = PrivateFromPublicRunner.from_result(runner, result)
    assert private.spec.coin_model == "private"
    assert private.bits_used() == 2 + 9
    assert exact_error(private, eq).worst_pair_error == result.worst_error


def test_errorless_runner_needs_one_string():
    result = derandomize_public(build_named("EQ", 4), PrimeEqRunner(4), Fraction(1, 4), seed=0)
    assert result.ok
    assert result.t == 1


def test_failure_is_reported():
    result = derandomize_public(build_named("EQ", 2), InnerProductEqRunner(2), Fraction(1, 4), seed=0, retries=3, t=1)
    assert not result
    assert result.worst_error == 1
    assert result.attempts == 3
    assert result.to_json()["strings"] is None
    with pytest.raises(ValueError):
        PrivateFromPublicRunner.from_result(InnerProductEqRunner(2), result)


def test_parameter_checks():
    with pytest.raises(ValueError):
        derandomize_public(build_named("EQ", 9), InnerProductEqRunner(9), Fraction(1, 4), seed=0)
    with pytest.raises(ValueError):
        derandomize_public(build_named("EQ", 2), InnerProductEqRunner(2), Fraction(0), seed=0)
