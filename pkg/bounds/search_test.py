import math

import pytest

from bounds.search import (
    SearchBudgetExceeded,
    cover_number,
    deterministic_complexity,
    partition_number,
    protocol_color_number,
    protocol_partition_number,
)
from fnspace import Function, SizeLimitExceeded, build_named, constant, star_fill
from protocol import answer_cost, verify


def test_deterministic_complexity_of_named_functions():
    for name in ("EQ", "GT", "DISJ"):
        for n in (1, 2):
            f = build_named(name, n)
            result = deterministic_complexity(f)
            assert result.value == n + 1
            assert verify(result.witness, f).ok
            assert answer_cost(result.witness) == result.value


def test_deterministic_complexity_eq3():
    assert deterministic_complexity(build_named("EQ", 3)).value == 4


def test_constant_costs_the_answer_bit():
    assert deterministic_complexity(constant(1, 1, 1)).value == 1
    assert deterministic_complexity(constant(1, 1, 1), count_answer_bit=False).value == 0


def test_inner_product_depth():
    assert deterministic_complexity(build_named("IP", 2)).value == 3


def test_protocol_partition_number():
    result = protocol_partition_number(build_named("EQ", 1))
    assert result.value == 4
    assert result.witness.leaves == 4
    assert protocol_partition_number(build_named("IP", 1)).value == 3
    assert protocol_partition_number(constant(1, 1, 0)).value == 1


def test_protocol_color_numbers():
    eq = build_named("EQ", 1)
    assert protocol_color_number(eq, "ones").value == 2
    assert protocol_color_number(eq, "zeros").value == 2
    assert protocol_color_number(constant(1, 1, 1), "zeros").value == 0
    with pytest.raises(ValueError):
        protocol_color_number(eq, "twos")


def test_cover_numbers():
    eq = build_named("EQ", 2)
    result = cover_number(eq, 1)
    assert result.value == 4
    assert all(rectangle.color(eq) == 1 for rectangle in result.rectangles)
    assert cover_number(eq, 0).value == 4
    assert cover_number(constant(1, 1, 0), 1).value == 0


def test_partition_numbers():
    result = partition_number(build_named("EQ", 1))
    assert (result.value, result.zeros, result.ones) == (4, 2, 2)
    ip = partition_number(build_named("IP", 1))
    assert (ip.zeros, ip.ones) == (2, 1)
    cells = set()
    for rectangle in ip.rectangles0 + ip.rectangles1:
        assert not cells & set(rectangle.cells())
        cells |= set(rectangle.cells())
    assert len(cells) == 4


def test_measures_are_ordered():
    for f in (build_named("EQ", 2), build_named("GT", 2), build_named("IP", 2)):
        cover = cover_number(f, 0).value + cover_number(f, 1).value
        partition = partition_number(f).value
        leaves = protocol_partition_number(f).value
        assert cover <= partition <= leaves


def test_size_refusals():
    with pytest.raises(SizeLimitExceeded):
        deterministic_complexity(build_named("EQ", 5))
    with pytest.raises(SizeLimitExceeded):
        partition_number(build_named("EQ", 5))
    with pytest.raises(SizeLimitExceeded):
        protocol_partition_number(build_named("GT", 4), limit_bits=6)
    with pytest.raises(ValueError):
        deterministic_complexity(Function(1, 1, lambda x, y: 2, range_bits=2))


def test_budget_refusal():
    with pytest.raises(SearchBudgetExceeded):
        deterministic_complexity(build_named("IP", 2), budget=1)


def test_partial_function():
    eq3 = build_named("EQ_alphabet", 3)
    result = deterministic_complexity(eq3)
    assert result.value == 3
    assert verify(result.witness, eq3).ok


def test_best_completion():
    eq3 = build_named("EQ_alphabet", 3)
    value, completion = star_fill(eq3).best_completion()
    assert value == 3
    assert completion.agrees_with(eq3)
    assert not completion.is_partial


@pytest.mark.parametrize("name", ["EQ", "GT"])
def test_deterministic_complexity_at_four_bits(name):
    f = build_named(name, 4)
    result = deterministic_complexity(f)
    assert result.value == 5
    assert verify(result.witness, f).ok


def test_protocol_partition_number_at_four_bits():
    eq = protocol_partition_number(build_named("EQ", 4))
    assert eq.value == 32
    assert eq.witness.leaves == 32
    assert protocol_partition_number(build_named("GT", 4)).value == 31
    assert protocol_color_number(build_named("GT", 4), "ones").value == 15


@pytest.mark.parametrize("name, leaves", [("EQ", 32), ("NE", 32), ("GT", 31), ("IP", 31), ("DISJ", 31)])
def test_measures_are_ordered_at_four_bits(name, leaves):
    f = build_named(name, 4)
    partition = partition_number(f)
    protocol = protocol_partition_number(f).value
    depth = deterministic_complexity(f).value
    assert partition.value == protocol == leaves
    assert depth == 5
    assert depth >= math.ceil(math.log2(protocol))
    cells = set()
    for rectangle in partition.rectangles0 + partition.rectangles1:
        assert not cells & set(rectangle.cells())
        cells |= set(rectangle.cells())
    assert len(cells) == 256


def test_rank_floor_prunes_the_depth_search():
    assert deterministic_complexity(build_named("EQ", 4)).nodes < 1000
