import math

import pytest

from directsum.budget import (
    GBudget,
    ceil_log_product,
    counting_lemma_check,
    floor_log_product,
    lemma_sweep,
    prefix_allocate,
    rank_positions,
    unrank_positions,
)


def test_exact_logarithms():
    assert floor_log_product(3, 2) == 3
    assert ceil_log_product(3, 2) == 3
    assert floor_log_product(1, 3) == 1
    assert ceil_log_product(1, 3) == 2
    assert ceil_log_product(2, 3) == math.ceil(2 * math.log2(3))
    assert floor_log_product(5, 1) == ceil_log_product(5, 1) == 0
    assert ceil_log_product(0, 7) == 0


def test_counting_lemma_examples():
    assert counting_lemma_check(4, 2, 2, 0, 0, 3)
    assert counting_lemma_check(2, 1, 3, 0, 0, 3)
    assert not counting_lemma_check(2, 1, 3, 0, 0, 0)
    assert not counting_lemma_check(2, 2, 2, 1, 1, 0)
    assert counting_lemma_check(3, 2, 2, lambda k: k, lambda k: k, lambda k: k + 3)


def test_budget_table():
    budget = GBudget(6)
    assert budget.c(2) == 0
    assert budget.c(3) == 3
    assert budget.c(4) == 6
    assert all(budget.c(leaves) <= budget.c(leaves + 1) for leaves in range(1, 6))
    assert budget.g(4, 5) == 11
    assert budget.bits(2, 7) == 7
    best = GBudget(6, rule="min")
    assert best.c(4) == 3
    with pytest.raises(ValueError):
        GBudget(6, rule="mean")
    with pytest.raises(ValueError):
        budget.c(7)


def test_lemma_sweep_passes_for_every_split():
    result = lemma_sweep(GBudget(16), 16, 32)
    assert result
    assert result.checked == sum(leaves - 1 for leaves in range(2, 17)) * 32


def test_positions_ranking():
    for k in range(1, 7):
        for size in range(k + 1):
            ranks = sorted(rank_positions(unrank_positions(rank, size, k)) for rank in range(math.comb(k, size)))
            assert ranks == list(range(math.comb(k, size)))


def test_allocation_k2():
    allocation = prefix_allocate(2, 2, 2, GBudget(4))
    assert allocation
    entries = allocation.entries()
    assert len(entries) == 4
    assert allocation.verify()
    for positions, code in entries.items():
        assert allocation.decode(code + "0101") == positions


def test_allocation_k1():
    allocation = prefix_allocate(1, 2, 3, GBudget(5))
    assert len(allocation.entries()) == 2
    assert allocation.verify()


def test_allocation_larger():
    budget = GBudget(8)
    for k in (3, 5, 8):
        allocation = prefix_allocate(k, 3, 5, budget)
        assert allocation.verify()
        assert len(allocation.entries()) == 2**k


def test_undersized_budget_fails():
    allocation = prefix_allocate(3, 2, 2, GBudget(4), bits=4)
    assert not allocation
    assert allocation.failed_class is not None
    with pytest.raises(ValueError):
        allocation.encode([0])
