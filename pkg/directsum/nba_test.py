import numpy as np
import pytest

from directsum.hashing import HashFamily
from directsum.nba import (
    nba_batched,
    nba_exhaustive,
    nba_family,
    nba_interactive,
    nba_one_way,
    nba_two_round,
    random_edges,
)


def test_one_way_sends_everything():
    assert nba_one_way(4, 5) == "0101"
    assert all(len(nba_one_way(6, x)) == 6 for x in (0, 17, 63))


def test_interactive_example():
    assert nba_interactive(4, 0b1001, 0b0001, 0b1001) == (1, 3)
    assert nba_interactive(4, 0b0001, 0b0001, 0b1001) == (0, 3)


def test_interactive_exhaustive():
    for n in (1, 2, 3, 4):
        check = nba_exhaustive(n, "interactive")
        assert check.ok
        assert check.instances == (2**n) * (2**n - 1)


def test_interactive_checks():
    with pytest.raises(ValueError):
        nba_interactive(4, 3, 1, 9)
    with pytest.raises(ValueError):
        nba_interactive(4, 1, 1, 1)


def test_two_round_exhaustive():
    family = nba_family(4, seed=0)
    check = nba_exhaustive(4, "tworound", family)
    assert check.ok
    assert check.max_bits == family.index_bits + family.value_bits


def test_two_round_picks_first_separating_function():
    tables = np.array([[0, 0, 1, 2], [0, 1, 2, 3], [3, 2, 1, 0]], dtype=np.int64)
    family = HashFamily(4, 2, 4, 3, 1, 1, 0, tables=tables, verified=True)
    assert family.first_injective([0, 1]) == 1
    assert nba_two_round(2, 1, 0, 1, family) == (1, 2 + 2)


def test_batched_winners():
    family = nba_family(4, seed=0)
    edges, xs = random_edges(4, 8, seed=5)
    run = nba_batched(4, 8, edges, xs, family)
    expected = [0 if x == u else 1 for (u, _), x in zip(edges, xs)]
    assert run.winners == expected
    assert run.bits["assignment"] <= 2 * 8
    assert run.bits["total"] == run.bits["functions"] + run.bits["assignment"] + run.bits["replies"]
    assert not run.fallback


def test_batched_single_edge_matches_two_round():
    family = nba_family(4, seed=0)
    run = nba_batched(4, 1, [(3, 12)], [12], family)
    assert run.winners == [1]
    assert run.bits["total"] == nba_two_round(4, 12, 3, 12, family)[1]


def test_batched_halving_order():
    tables = np.array([[0, 0, 1, 1], [0, 1, 0, 1]], dtype=np.int64)
    family = HashFamily(4, 2, 2, 2, 1, 1, 0, tables=tables)
    run = nba_batched(2, 3, [(0, 1), (0, 2), (2, 3)], [1, 0, 3], family)
    assert run.winners == [1, 0, 1]
    assert run.functions == [1, 0]
    assert run.assignment == [1, 2, 1]
    assert run.bits["assignment"] == 4


def test_batched_fallback():
    tables = np.array([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], dtype=np.int64)
    family = HashFamily(4, 2, 2, 3, 1, 1, 0, tables=tables)
    run = nba_batched(2, 3, [(0, 1), (0, 2), (0, 3)], [1, 0, 3], family)
    assert run.fallback
    assert run.functions == [0, 1, 2]
    assert run.winners == [1, 0, 1]


def test_batched_checks():
    family = nba_family(3, seed=0)
    with pytest.raises(ValueError):
        nba_batched(3, 2, [(0, 1)], [0], family)
    with pytest.raises(ValueError):
        nba_batched(4, 1, [(0, 1)], [0], family)
