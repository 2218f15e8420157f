from fractions import Fraction

import numpy as np
import pytest

from randomized.coins import ONE_SIDED_ZERO, CoinSources, CoinSpace, RandProtocolSpec, ceil_log2, digit_rows


def test_same_seed_same_streams():
    first, second = CoinSources(7), CoinSources(7)
    assert np.array_equal(first.public.bits(64), second.public.bits(64))
    assert np.array_equal(first.private_a.integers(100, 10), second.private_a.integers(100, 10))


def test_scopes_differ():
    sources = CoinSources(7)
    assert not np.array_equal(sources.public.integers(2**30, 8), sources.private_b.integers(2**30, 8))


def test_block_seeds():
    assert np.array_equal(CoinSources([1, 2, 3]).public.bits(32), CoinSources([1, 2, 3]).public.bits(32))


def test_consumption_is_counted():
    sources = CoinSources(0)
    sources.public.bits(10)
    sources.private_a.integers(5, (3, 2))
    assert sources.consumed() == {"public": 10, "privateA": 6, "privateB": 0}
    with pytest.raises(ValueError):
        sources.get("shared")


def test_digit_rows():
    rows = digit_rows(9, 3, 2)
    assert rows.tolist()[:4] == [[0, 0], [1, 0], [2, 0], [0, 1]]
    assert CoinSpace.uniform(rows).total == 9


def test_spec_checks():
    spec = RandProtocolSpec("x", "public", ONE_SIDED_ZERO, Fraction(1, 2), 2)
    assert spec.to_json()["nominalError"]["exact"] == "1/2"
    with pytest.raises(ValueError):
        RandProtocolSpec("x", "shared", ONE_SIDED_ZERO, Fraction(1, 2), 2)
    with pytest.raises(ValueError):
        RandProtocolSpec("x", "public", "sometimes", Fraction(1, 2), 2)


def test_ceil_log2():
    assert [ceil_log2(value) for value in (1, 2, 3, 4, 5, 512)] == [0, 1, 2, 2, 3, 9]
