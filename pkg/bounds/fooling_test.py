import pytest

from bounds.fooling import fooling_set_of, greedy_fooling_set, max_fooling_set, verify_fooling_set
from fnspace import SizeLimitExceeded, build_named, constant


def test_diagonal_fools_equality():
    check = verify_fooling_set(build_named("EQ", 2), fooling_set_of([(x, x) for x in range(4)], 1))
    assert check.ok
    assert check.bound == 4


def test_diagonal_fools_greater_or_equal():
    assert verify_fooling_set(build_named("GT", 2), fooling_set_of([(x, x) for x in range(4)], 1))


def test_complements_fool_disjointness():
    check = verify_fooling_set(build_named("DISJ", 2), fooling_set_of([(x, 3 - x) for x in range(4)], 1))
    assert check.ok
    assert check.bound == 4


def test_wrong_sets_rejected():
    eq = build_named("EQ", 2)
    check = verify_fooling_set(eq, fooling_set_of([(0, 0), (0, 1)], 1))
    assert not check.ok
    assert check.bound == 0
    assert not verify_fooling_set(eq, fooling_set_of([(1, 1), (1, 1)], 1))
    assert not verify_fooling_set(constant(1, 1, 1), fooling_set_of([(0, 0), (1, 1)], 1))


def test_masked_pairs_do_not_count():
    eq3 = build_named("EQ_alphabet", 3)
    assert verify_fooling_set(eq3, fooling_set_of([(x, x) for x in range(3)], 1))
    assert not verify_fooling_set(eq3, fooling_set_of([(x, x) for x in range(4)], 1))


def test_greedy_fooling_sets():
    assert greedy_fooling_set(build_named("EQ", 2), 1, seed=0).size == 4
    assert greedy_fooling_set(constant(2, 2, 1), 1, seed=0).size == 1
    ip_set = greedy_fooling_set(build_named("IP", 2), 1, seed=0)
    assert ip_set.size >= 2
    assert verify_fooling_set(build_named("IP", 2), ip_set)


def test_greedy_is_deterministic():
    ip = build_named("IP", 3)
    assert greedy_fooling_set(ip, 0, seed=11).pairs == greedy_fooling_set(ip, 0, seed=11).pairs


def test_maximum_fooling_set():
    assert max_fooling_set(build_named("EQ", 2), 1).size == 4
    ip = build_named("IP", 2)
    largest = max_fooling_set(ip, 1)
    assert verify_fooling_set(ip, largest)
    assert largest.size >= greedy_fooling_set(ip, 1, seed=0).size
    assert max_fooling_set(constant(1, 1, 0), 1).size == 0


def test_maximum_fooling_set_limit():
    with pytest.raises(SizeLimitExceeded):
        max_fooling_set(build_named("IP", 3), 0, limit_cells=10)
