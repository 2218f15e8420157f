import pytest

from directsum.xk_equality import random_instance, xk_eq_run, xk_eq_sweep


def test_all_equal_pairs():
    xs = list(range(8))
    stats = xk_eq_run(8, 4, xs, xs, seed=3)
    assert stats.answers == [1] * 8
    assert stats.trackbacks == 0
    assert stats.round_bits == [16, 8, 4, 2]
    assert stats.total_bits == 30
    assert stats.undetected_wrong == 0


def test_doubled_costs():
    xs = list(range(4))
    stats = xk_eq_run(4, 3, xs, xs, doubled=True, seed=1)
    assert stats.round_bits == [12, 6, 3]
    assert stats.total_bits == sum(stats.round_bits) + sum(stats.trackback_bits)


def test_equal_pairs_never_reported_unequal():
    for seed in range(40):
        xs, ys = random_instance(16, 6, 8, seed)
        stats = xk_eq_run(16, 6, xs, ys, seed=seed)
        for i in range(16):
            if xs[i] == ys[i]:
                assert stats.answers[i] == 1
        assert stats.total_bits == sum(stats.round_bits) + sum(stats.trackback_bits)
        assert len(stats.answers) == 16


def test_single_unequal_pair_detection_rate():
    undetected = 0
    seeds = range(1024)
    for seed in seeds:
        stats = xk_eq_run(4, 5, [1, 2, 3, 4], [1, 2, 3, 5], seed=seed)
        undetected += stats.undetected_wrong
    # three rounds, each missing with probability 1/2
    assert abs(undetected / len(seeds) - 1 / 8) < 0.04


def test_doubled_detection_rate():
    undetected = sum(
        xk_eq_run(4, 5, [1, 2, 3, 4], [1, 2, 3, 5], doubled=True, seed=seed).undetected_wrong for seed in range(1024)
    )
    assert undetected / 1024 < 0.04


def test_cost_per_copy_is_bounded():
    for k in (64, 256):
        sweep = xk_eq_sweep(k, 16, k // 2, range(8))
        assert sweep.false_unequal == 0
        assert sweep.mean_bits_per_copy < 12


def test_one_copy():
    stats = xk_eq_run(1, 2, [3], [3])
    assert stats.answers == [1]
    assert stats.total_bits == 2


def test_argument_checks():
    with pytest.raises(ValueError):
        xk_eq_run(3, 2, [0, 1, 2], [0, 1, 2])
    with pytest.raises(ValueError):
        xk_eq_run(2, 2, [0, 4], [0, 4])
    with pytest.raises(ValueError):
        xk_eq_run(2, 2, [0], [0])
    with pytest.raises(ValueError):
        random_instance(4, 2, 5, 0)


def test_undetected_rate_is_one_over_two_k():
    xs = list(range(8))
    ys = xs[:7] + [9]
    seeds = range(2048)
    undetected = sum(xk_eq_run(8, 5, xs, ys, seed=seed).undetected_wrong for seed in seeds)
    rate = undetected / len(seeds)
    assert rate < 2 / 8
    assert abs(rate - 1 / 16) < 0.025
