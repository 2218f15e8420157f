"""Explicit protocol trees: the trivial protocol, bitwise EQ/GT, and the TAB24 / EQ5 direct-sum exhibits."""

from __future__ import annotations

import logging
from typing import Callable, List, Sequence

try:
    from .fnspace import TAB24_A_BITS, TAB24_B_BITS, Function, build_named, product_xk
    from .protocol import A, B, MASK_DOMAIN_LIMIT, AnswerLeaf, Leaf, Node, ProtocolTree, Split, mask_of
except ImportError:
    from fnspace import TAB24_A_BITS, TAB24_B_BITS, Function, build_named, product_xk
    from protocol import A, B, MASK_DOMAIN_LIMIT, AnswerLeaf, Leaf, Node, ProtocolTree, Split, mask_of

_LOGGER = logging.getLogger(__name__)


def _bit_zero_set(domain_bits: int, key: Callable[[int], int], bit: int):
    """Zero set {v : bit ``bit`` of key(v) is 0}, as a mask when the domain is small enough."""
    size = 1 << domain_bits
    if size <= MASK_DOMAIN_LIMIT:
        return mask_of(v for v in range(size) if not (key(v) >> bit) & 1)
    return lambda v: not (key(v) >> bit) & 1


def announce(
    owner: str,
    domain_bits: int,
    key: Callable[[int], int],
    candidates: Sequence[int],
    then: Callable[[int], Node],
) -> Node:
    """
    The owner sends key(input) bit by bit, lowest bit first, skipping bits on which all remaining
    candidate values agree; ``then(value)`` builds the subtree once the value is known.
    """

    zero_sets = {}

    def build(values: List[int], bit: int) -> Node:
        if len(values) == 1:
            return then(values[0])
        while all((v >> bit) & 1 == (values[0] >> bit) & 1 for v in values):
            bit += 1
        zeros = [v for v in values if not (v >> bit) & 1]
        ones = [v for v in values if (v >> bit) & 1]
        if bit not in zero_sets:
            zero_sets[bit] = _bit_zero_set(domain_bits, key, bit)
        zero = zero_sets[bit]
        return Split(owner, zero, (build(zeros, bit + 1), build(ones, bit + 1)))

    values = sorted(set(candidates))
    if not values:
        raise ValueError("announce needs at least one candidate value")
    return build(values, 0)


def trivial_protocol(f: Function) -> ProtocolTree:
    """A sends her input, then B sends the value (only the bits not yet determined)."""
    matrix = f.matrix
    mask = f.mask

    def answer(x: int) -> Node:
        row = matrix[x]
        defined = row if mask is None else row[~mask[x]]
        values = sorted({int(v) for v in defined}) or [0]
        return announce(B, f.n_b, lambda y: int(row[y]), values, Leaf)

    tree = ProtocolTree(announce(A, f.n_a, lambda x: x, range(f.rows), answer), f.n_a, f.n_b)
    _LOGGER.info(f"Trivial protocol for {f.name}: {tree.leaves} leaves")
    return tree


def bitwise_eq(n: int) -> ProtocolTree:
    """A sends x bit by bit, B answers whether y equals it."""
    full = (1 << (1 << n)) - 1

    def answer(x: int) -> Node:
        return Split(B, full & ~(1 << x), (Leaf(0), Leaf(1)))

    return ProtocolTree(announce(A, n, lambda x: x, range(1 << n), answer), n, n)


def bitwise_gt(n: int) -> ProtocolTree:
    """A sends x bit by bit, B answers whether x >= y; the top row needs no answer split."""
    top = (1 << n) - 1

    def answer(x: int) -> Node:
        if x == top:
            return Leaf(1)
        return Split(B, mask_of(range(x + 1, 1 << n)), (Leaf(0), Leaf(1)))

    return ProtocolTree(announce(A, n, lambda x: x, range(1 << n), answer), n, n)


# -- TAB24 -----------------------------------------------------------------------------------------
# x = a (2 bits) | b (4 bits) << 2;  y = flag | block4 << 1 | block16 << 5


def _small_index(x: int) -> int:
    return x & 3


def _large_index(x: int) -> int:
    return (x >> 2) & 15


def _flag_split(then_small: Node, then_large: Node) -> Split:
    return Split(B, lambda y: not y & 1, (then_small, then_large))


def tab24_fluent() -> ProtocolTree:
    """B sends the flag, A sends the 2- or 4-bit index, B knows the answer (20 answer leaves)."""
    small = announce(A, TAB24_A_BITS, _small_index, range(4), lambda a: AnswerLeaf(B, lambda y, a=a: (y >> (1 + a)) & 1, f"y[{1 + a}]"))
    large = announce(A, TAB24_A_BITS, _large_index, range(16), lambda b: AnswerLeaf(B, lambda y, b=b: (y >> (5 + b)) & 1, f"y[{5 + b}]"))
    return ProtocolTree(_flag_split(small, large), TAB24_A_BITS, TAB24_B_BITS)


def tab24_protocol() -> ProtocolTree:
    """Single-copy TAB24 with B's answer as an explicit split: depth 5 + 1."""

    def answer(offset: int) -> Node:
        return Split(B, lambda y: not (y >> offset) & 1, (Leaf(0), Leaf(1)))

    small = announce(A, TAB24_A_BITS, _small_index, range(4), lambda a: answer(1 + a))
    large = announce(A, TAB24_A_BITS, _large_index, range(16), lambda b: answer(5 + b))
    return ProtocolTree(_flag_split(small, large), TAB24_A_BITS, TAB24_B_BITS)


def tab24_pair_protocol() -> ProtocolTree:
    """
    Two TAB24 instances at once.

    B first reports the flag pattern: ``0`` when both flags select the 16-block, ``10`` plus a
    selector bit when they are mixed, ``11`` when both select the 4-block. A then sends only the
    indices that matter and B sends both answers: 11, 11 and 8 bits respectively.
    """
    width_a, width_b = TAB24_A_BITS, TAB24_B_BITS

    def flag(y: int, copy: int) -> int:
        return (y >> (copy * width_b)) & 1

    def copy_x(x: int, copy: int) -> int:
        return (x >> (copy * width_a)) & ((1 << width_a) - 1)

    def offset(copy: int, large: bool, index: int) -> int:
        return copy * width_b + (5 if large else 1) + index

    def answers(large0: bool, index0: int, large1: bool, index1: int) -> Node:
        def second(bit0: int) -> Node:
            shift = offset(1, large1, index1)
            return Split(B, lambda y: not (y >> shift) & 1, (Leaf(bit0), Leaf(bit0 | 2)))

        shift0 = offset(0, large0, index0)
        return Split(B, lambda y: not (y >> shift0) & 1, (second(0), second(1)))

    def indices(large0: bool, large1: bool) -> Node:
        bits0 = 4 if large0 else 2

        def key(x: int) -> int:
            first = _large_index(copy_x(x, 0)) if large0 else _small_index(copy_x(x, 0))
            second = _large_index(copy_x(x, 1)) if large1 else _small_index(copy_x(x, 1))
            return first | (second << bits0)

        count = (16 if large0 else 4) * (16 if large1 else 4)
        return announce(
            A,
            2 * width_a,
            key,
            range(count),
            lambda value: answers(large0, value & ((1 << bits0) - 1), large1, value >> bits0),
        )

    mixed = Split(B, lambda y: bool(flag(y, 0)), (indices(True, False), indices(False, True)))
    rest = Split(B, lambda y: flag(y, 0) != flag(y, 1), (mixed, indices(False, False)))
    root = Split(B, lambda y: bool(flag(y, 0) and flag(y, 1)), (indices(True, True), rest))
    tree = ProtocolTree(root, 2 * width_a, 2 * width_b)
    _LOGGER.info(f"TAB24 pair protocol: {tree.leaves} leaves")
    return tree


def tab24_pair_function() -> Function:
    return product_xk(build_named("TAB24"), 2)


# -- EQ over a five-letter alphabet ------------------------------------------------------------------

EQ5_WIDTH = 3


def eq5_pair_function() -> Function:
    return product_xk(build_named("EQ_alphabet", 5), 2)


def eq5_pair_protocol() -> ProtocolTree:
    """A sends her pair as one of 25 codes (5 bits), B answers both comparisons: 5 + 2 bits."""
    low = (1 << EQ5_WIDTH) - 1

    def code(x: int) -> int:
        first, second = x & low, x >> EQ5_WIDTH
        if first >= 5 or second >= 5:
            return 0
        return first * 5 + second

    def answers(value: int) -> Node:
        first, second = divmod(value, 5)
        size = 1 << (2 * EQ5_WIDTH)
        zero_first = mask_of(y for y in range(size) if (y & low) != first)
        zero_second = mask_of(y for y in range(size) if (y >> EQ5_WIDTH) != second)
        return Split(
            B,
            zero_first,
            (
                Split(B, zero_second, (Leaf(0), Leaf(2))),
                Split(B, zero_second, (Leaf(1), Leaf(3))),
            ),
        )

    root = announce(A, 2 * EQ5_WIDTH, code, range(25), answers)
    return ProtocolTree(root, 2 * EQ5_WIDTH, 2 * EQ5_WIDTH)
