import pytest

from classes.oracles import (
    OracleProtocol,
    Query,
    eq_via_disj,
    eq_via_gt,
    oracle_eval,
    self_oracle,
    verify_oracle_protocol,
)
from fnspace import build_named
from protocol import Leaf, evaluate
from protocol_builders import bitwise_eq


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_equality_with_two_gt_queries(n):
    op = eq_via_gt(n)
    check = verify_oracle_protocol(op, build_named("EQ", n))
    assert check.ok
    assert op.cost() == 2
    assert check.max_cost == 2
    assert op.queries == 2


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_equality_with_one_disj_query(n):
    op = eq_via_disj(n)
    check = verify_oracle_protocol(op, build_named("EQ", n))
    assert check.ok
    assert op.cost() == 1
    assert check.pairs == 4**n


def test_unequal_pairs_stop_after_one_gt_query():
    op = eq_via_gt(3)
    assert oracle_eval(op, 2, 5) == (0, 1)
    assert oracle_eval(op, 5, 2) == (0, 2)
    assert oracle_eval(op, 6, 6) == (1, 2)


def test_function_as_its_own_oracle():
    f = build_named("IP", 2)
    op = self_oracle(f)
    check = verify_oracle_protocol(op, f)
    assert check.ok
    assert check.max_cost == 1


def test_without_queries_evaluation_is_unchanged():
    tree = bitwise_eq(2)
    op = OracleProtocol(tree.root, 2, 2, build_named("GT", 2))
    assert op.queries == 0
    for x in range(4):
        for y in range(4):
            value, transcript = evaluate(tree, x, y)
            assert oracle_eval(op, x, y) == (value, len(transcript))


def test_wrong_protocol_is_reported():
    op = OracleProtocol(Query(lambda x: x, lambda y: y, (Leaf(0), Leaf(1))), 2, 2, build_named("GT", 2))
    check = verify_oracle_protocol(op, build_named("EQ", 2))
    assert not check.ok
    assert (1, 0) in check.wrong


def test_malformed_map():
    op = OracleProtocol(Query(lambda x: x + 4, lambda y: y, (Leaf(0), Leaf(1)), "shifted"), 2, 2, build_named("GT", 2))
    with pytest.raises(ValueError):
        oracle_eval(op, 1, 1)
    with pytest.raises(ValueError):
        Query(lambda x: x, lambda y: y, (Leaf(0),))
