from fractions import Fraction

import numpy as np
import pytest

from fnspace import build_named
from randomized.equality import (
    InnerProductEqRunner,
    PartitionEqRunner,
    PolyEqRunner,
    PrimeEqRunner,
    build_runner,
    equality_primes,
    partition_parameters,
    poly_parameters,
    primes_between,
    run_poly_eq,
    run_prime_eq,
    run_pub_innerprod_eq,
    run_pub_partition_eq,
)
from randomized.estimates import exact_error


def _unequal_errors(runner, n):
    estimate = exact_error(runner, build_named("EQ", n))
    return {pair.error for pair in estimate.per_pair if pair.truth == 0}, estimate


def test_primes():
    assert primes_between(16, 32) == [17, 19, 23, 29, 31]
    assert equality_primes(4) == (17, 19, 23, 29, 31)
    assert primes_between(0, 1) == []
    with pytest.raises(ValueError):
        equality_primes(1)


def test_inner_product_never_errs_on_equal_inputs():
    for z in range(8):
        assert run_pub_innerprod_eq(3, 5, 5, [z]) == (1, 2)


def test_inner_product_zero_string_never_detects():
    assert run_pub_innerprod_eq(3, 5, 3, [0])[0] == 1


def test_inner_product_pair_error():
    runner = InnerProductEqRunner(3)
    assert runner.pair_errors(5, np.array([3]), np.array([0])) == [Fraction(1, 2)]


def test_inner_product_error_is_one_half():
    errors, estimate = _unequal_errors(InnerProductEqRunner(6), 6)
    assert errors == {Fraction(1, 2)}
    assert estimate.worst_on_ones == 0


def test_partition_errors():
    for n, k in ((2, 2), (2, 4), (3, 2), (3, 3), (3, 4)):
        errors, estimate = _unequal_errors(PartitionEqRunner(n, k), n)
        assert errors == {Fraction(1, k)}
        assert estimate.worst_on_ones == 0


def test_partition_hash_above_exact_sizes():
    runner = PartitionEqRunner(4, 3)
    assert runner.spec.params["coins"] == "linear"
    errors, _ = _unequal_errors(runner, 4)
    assert errors == {Fraction(1, 3)}


def test_partition_bits():
    assert run_pub_partition_eq(2, 1, 1, [0, 1, 1, 0], k=2) == (1, 2)
    assert run_pub_partition_eq(2, 1, 2, [0, 1, 1, 0], k=2) == (1, 2)
    assert run_pub_partition_eq(2, 0, 2, [0, 1, 1, 0], k=2) == (0, 2)
    assert PartitionEqRunner(2, 4).bits_used() == 3
    with pytest.raises(ValueError):
        PartitionEqRunner(2, 1)


def test_prime_protocol_is_exact_at_four_bits():
    runner = PrimeEqRunner(4)
    assert exact_error(runner, build_named("EQ", 4)).worst_pair_error == 0
    assert runner.bits_used() == 11
    assert run_prime_eq(4, 9, 9, [3]) == (1, 11)


def test_prime_protocol_bound():
    for n in range(2, 9):
        runner = PrimeEqRunner(n)
        assert exact_error(runner, build_named("EQ", n)).worst_pair_error <= runner.spec.nominal_error


def test_polynomial_protocol():
    runner = PolyEqRunner(4, 8)
    assert runner.p == 11
    assert runner.bits_used() == 9
    errors, estimate = _unequal_errors(runner, 4)
    assert max(errors) <= Fraction(3, 11)
    assert estimate.worst_on_ones == 0
    twice = PolyEqRunner(4, 8, reps=2)
    assert exact_error(twice, build_named("EQ", 4)).worst_pair_error <= Fraction(3, 11) ** 2
    assert twice.bits_used() == 17


def test_polynomial_root():
    # 1 + z and 1 + z^2 agree at z = 0 and z = 1 only
    assert run_poly_eq(3, 5, 1, 0b011, 0b101, [1])[0] == 1
    assert run_poly_eq(3, 5, 1, 0b011, 0b101, [2])[0] == 0


def test_polynomial_errors_small_inputs():
    for n in range(2, 7):
        runner = PolyEqRunner(n, n)
        assert exact_error(runner, build_named("EQ", n)).worst_pair_error <= Fraction(n - 1, runner.p)


def test_polynomial_parameters():
    with pytest.raises(ValueError):
        PolyEqRunner(4, 3)
    with pytest.raises(ValueError):
        PolyEqRunner(4, 8, reps=0)
    assert poly_parameters(4, Fraction(1, 2)) == 8
    assert poly_parameters(4, Fraction(1, 4), reps=2) == 8
    assert partition_parameters(Fraction(1, 3)) == 3
    with pytest.raises(ValueError):
        partition_parameters(Fraction(3, 4))


def test_equal_inputs_accepted_for_every_coin():
    for runner in (PartitionEqRunner(2, 3), InnerProductEqRunner(3), PrimeEqRunner(3), PolyEqRunner(3, 4, 2)):
        coins = runner.coin_space().coins
        for x in range(1 << runner.n):
            assert runner.answers(x, np.array([x]), coins).all()


def test_runner_checks():
    with pytest.raises(ValueError):
        run_pub_innerprod_eq(3, 1, 2, [1, 2])
    with pytest.raises(ValueError):
        run_pub_innerprod_eq(3, 8, 2, [1])
    with pytest.raises(ValueError):
        build_runner("hash", 3)
    with pytest.raises(ValueError):
        InnerProductEqRunner(21).coin_space()
    assert build_runner("poly", 3).m == 6
