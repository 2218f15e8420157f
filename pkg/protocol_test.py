import io
import math

import numpy as np
import pytest

from fnspace import build_named, constant, product_xk
from protocol import (
    A,
    B,
    Leaf,
    ProtocolTree,
    Split,
    answer_cost,
    evaluate,
    find_unnecessary,
    fluent_weights,
    mask_flags,
    metrics,
    read_tree,
    split_shallow_leaves,
    tree_matrix,
    verify,
    write_tree,
)
from protocol_builders import (
    bitwise_eq,
    bitwise_gt,
    eq5_pair_function,
    eq5_pair_protocol,
    tab24_fluent,
    tab24_pair_function,
    tab24_pair_protocol,
    tab24_protocol,
    trivial_protocol,
)


def test_evaluate_bitwise_eq():
    tree = bitwise_eq(2)
    value, transcript = evaluate(tree, 2, 2)
    assert value == 1
    assert len(transcript) == 3
    assert evaluate(tree, 2, 3)[0] == 0


def test_single_leaf():
    tree = ProtocolTree(Leaf(1), 1, 1)
    value, transcript = evaluate(tree, 0, 1)
    assert value == 1 and len(transcript) == 0
    m = metrics(tree)
    assert (m.depth, m.leaves, m.fluent_cost) == (0, 1, 0)
    assert answer_cost(tree) == 1
    assert answer_cost(tree, count_answer_bit=False) == 0


def test_malformed_split():
    tree = ProtocolTree(Split(A, 0, (Leaf(0), Leaf(1))), 1, 1)
    with pytest.raises(ValueError):
        evaluate(tree, 0, 0)
    with pytest.raises(ValueError):
        Split("C", 1, (Leaf(0), Leaf(1)))


def test_transcripts_are_prefix_free():
    tree = bitwise_gt(2)
    seen = {}
    for x in range(4):
        for y in range(4):
            _, transcript = evaluate(tree, x, y)
            seen[transcript.leaf] = transcript.as_string()
    codes = sorted(seen.values())
    for first, second in zip(codes, codes[1:]):
        assert not second.startswith(first)


def test_verify_partitions():
    result = verify(bitwise_eq(2), build_named("EQ", 2))
    assert result.ok
    assert result.leaf_rectangles == 8
    assert result.partition_ok


def test_verify_reports_violations():
    result = verify(bitwise_eq(2), build_named("NE", 2))
    assert not result.ok
    assert result.violation_count == 16


def test_builders_verify():
    for name in ("EQ", "GT", "IP", "DISJ"):
        for n in (1, 2, 3):
            f = build_named(name, n)
            assert verify(trivial_protocol(f), f).ok
    for n in (1, 2, 3):
        assert verify(bitwise_eq(n), build_named("EQ", n)).ok
        assert verify(bitwise_gt(n), build_named("GT", n)).ok


def test_trivial_protocol_depth():
    ip = build_named("IP", 2)
    assert metrics(trivial_protocol(ip)).depth == 3
    pair = product_xk(build_named("EQ", 1), 2)
    assert metrics(trivial_protocol(pair)).depth == pair.n_a + pair.range_bits


def test_metrics_bitwise_eq1():
    m = metrics(bitwise_eq(1))
    assert (m.depth, m.leaves, m.leaves0, m.leaves1) == (2, 4, 2, 2)
    assert m.fluent_cost == 2


def test_tab24_fluent():
    tree = tab24_fluent()
    m = metrics(tree)
    assert m.leaves == 20
    assert m.leaves_open == 20
    assert m.depth == 6
    assert metrics(tree, count_answer_bit=False).depth == 5
    assert m.fluent_cost == pytest.approx(4 + math.log2(5 / 4))
    assert verify(tree, build_named("TAB24"), mode="sampled", seed=3, trials=5000).ok


def test_tab24_single_copy_depth():
    tree = tab24_protocol()
    assert metrics(tree).depth == 6
    assert verify(tree, build_named("TAB24"), mode="sampled", seed=4, trials=5000).ok


def test_fluent_weights():
    for tree in (bitwise_eq(2), bitwise_gt(2), tab24_fluent()):
        weights = fluent_weights(tree)
        assert weights.worst_time == pytest.approx(math.log2(tree.leaves))
        for total in weights.reciprocal_sums().values():
            assert total == pytest.approx(1.0)
        assert metrics(tree).fluent_cost <= metrics(tree).depth


def test_tab24_pair_protocol():
    tree = tab24_pair_protocol()
    assert tree.leaves == 1600
    assert metrics(tree).depth == 11
    assert verify(tree, tab24_pair_function(), mode="sampled", seed=7, trials=20000).ok
    # both flags 0: the short branch
    x = 0
    y = 0
    assert len(evaluate(tree, x, y)[1]) == 8
    # mixed flags
    assert len(evaluate(tree, x, 1)[1]) == 11


def test_eq5_pair_protocol():
    tree = eq5_pair_protocol()
    assert metrics(tree).depth == 7
    assert verify(tree, eq5_pair_function()).ok


def test_find_unnecessary():
    assert find_unnecessary(bitwise_eq(2)) == []
    wasteful = ProtocolTree(Split(A, 0b01, (Split(A, 0b01, (Leaf(1), Leaf(0))), Leaf(0))), 1, 1)
    assert find_unnecessary(wasteful) == ["0"]


def test_split_shallow_leaves():
    for tree, f in ((bitwise_gt(2), build_named("GT", 2)), (bitwise_eq(2), build_named("EQ", 2))):
        split = split_shallow_leaves(tree)
        assert (tree_matrix(split) == tree_matrix(tree)).all()
        assert verify(split, f).ok
        depth = metrics(tree, count_answer_bit=False).depth
        assert metrics(split, count_answer_bit=False).depth == depth
        assert 2**depth >= 2 * metrics(tree).leaves1


def test_tree_serialization():
    tree = bitwise_gt(2)
    buffer = io.StringIO()
    write_tree(tree, buffer)
    loaded = read_tree(io.StringIO(buffer.getvalue()))
    assert (tree_matrix(loaded) == tree_matrix(tree)).all()
    with pytest.raises(ValueError):
        read_tree(["cctree v1 nA=1 nB=1", "S A 1", "L 0"])


def test_constant_tree_verifies():
    tree = ProtocolTree(Leaf(0), 2, 2)
    assert verify(tree, constant(2, 2, 0)).ok
    assert not verify(tree, constant(2, 2, 1)).ok
    assert B == "B"


def test_zero_flags_with_bits_above_evaluated_inputs():
    split = Split(A, 1 << 15, (Leaf(0), Leaf(1)))
    assert split.zero_flags(np.array([0, 1])).tolist() == [False, False]
    assert Split(B, 0xFFFE, (Leaf(0), Leaf(1))).zero_flags(np.array([0, 5])).tolist() == [False, True]
    assert mask_flags(0b1111_0110, 3).tolist() == [False, True, True]
