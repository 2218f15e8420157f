import numpy as np
import pytest

from bounds.rank import bareiss_rank, rank_gf2, rank_rational, rank_subadditivity
from fnspace import SizeLimitExceeded, build_named, constant
from protocol_builders import bitwise_eq, bitwise_gt, trivial_protocol


def test_inner_product_rank():
    for n in range(1, 5):
        assert rank_rational(build_named("IP", n)) == 2**n - 1


def test_equality_rank_is_full():
    for n in (1, 2, 3):
        assert rank_rational(build_named("EQ", n)) == 2**n


def test_gf2_rank():
    assert rank_gf2(build_named("IP", 2)) == 2
    assert rank_gf2(build_named("EQ", 2)) == 4
    assert rank_gf2(constant(2, 2, 0)) == 0
    assert rank_gf2(constant(2, 2, 1)) == 1


def test_bareiss_small_matrices():
    assert bareiss_rank([[1, 2], [2, 4]]) == 1
    assert bareiss_rank([[1, 2], [3, 4]]) == 2
    assert bareiss_rank([[0, 0, 1], [0, 0, 2], [1, 1, 0]]) == 2
    assert bareiss_rank([]) == 0
    assert rank_rational(np.zeros((4, 4), dtype=int)) == 0


def test_rank_refuses_wide_functions():
    with pytest.raises(SizeLimitExceeded):
        rank_rational(build_named("EQ", 7))
    assert rank_rational(build_named("EQ", 3), limit_bits=6) == 8


def test_subadditivity_on_verified_trees():
    for tree, f in (
        (bitwise_eq(2), build_named("EQ", 2)),
        (bitwise_gt(2), build_named("GT", 2)),
        (trivial_protocol(build_named("IP", 2)), build_named("IP", 2)),
    ):
        result = rank_subadditivity(tree, f)
        assert result.ok
        assert result.checked == tree.leaves - 1


def test_subadditivity_needs_a_correct_tree():
    with pytest.raises(ValueError):
        rank_subadditivity(bitwise_eq(2), build_named("NE", 2))
