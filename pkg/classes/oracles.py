"""
Protocols with an oracle
========================

A ``Query`` node hands the pair (hx(x), hy(y)) to an oracle function g. Both players learn the
answer bit and continue in child g(hx(x), hy(y)). A query costs one bit; ``Split``, ``Leaf`` and
``AnswerLeaf`` nodes behave exactly as in ``protocol``.

Input maps are lookup tables (sequences or numpy arrays indexed by the player's own input) or
callables of that input. Tables are what exhaustive checks want; callables compose freely.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

try:
    from .. import labconfig
    from ..fnspace import Function, build_named
    from ..protocol import A, AnswerLeaf, Leaf, ProtocolTree, Split, evaluate
except ImportError:
    import labconfig
    from fnspace import Function, build_named
    from protocol import A, AnswerLeaf, Leaf, ProtocolTree, Split, evaluate

_LOGGER = logging.getLogger(__name__)

InputMap = Union[Callable[[int], int], Sequence[int], np.ndarray]


def apply_map(mapping: InputMap, value: int) -> int:
    if callable(mapping):
        return int(mapping(value))
    return int(mapping[value])


def map_table(mapping: InputMap, size: int) -> np.ndarray:
    """The map tabulated over [0, size)."""
    if callable(mapping):
        return np.fromiter((int(mapping(v)) for v in range(size)), dtype=np.int64, count=size)
    table = np.asarray(mapping, dtype=np.int64)
    if table.shape != (size,):
        raise ValueError(f"Map table has shape {table.shape}, expected ({size},)")
    return table


@dataclass(frozen=True, eq=False)
class Query:
    hx: InputMap
    hy: InputMap
    children: Tuple[object, object]
    label: str = ""

    def __post_init__(self):
        if len(self.children) != 2:
            raise ValueError(f"Query needs exactly two children, got {len(self.children)}")

    @property
    def is_leaf(self) -> bool:
        return False

    @cached_property
    def leaves(self) -> int:
        return self.children[0].leaves + self.children[1].leaves


OracleNode = Union[Leaf, AnswerLeaf, Split, Query]


def _answer_bit(count_answer_bit: Optional[bool]) -> int:
    flag = labconfig.COUNT_ANSWER_BIT if count_answer_bit is None else count_answer_bit
    return 1 if flag else 0


def _walk(node: OracleNode) -> Iterator[OracleNode]:
    stack = [node]
    while stack:
        current = stack.pop()
        yield current
        if isinstance(current, (Split, Query)):
            stack.extend(current.children)


@dataclass(frozen=True)
class OracleProtocol:
    root: OracleNode
    n_a: int
    n_b: int
    oracle: Function
    name: str = ""

    @property
    def queries(self) -> int:
        return sum(1 for node in _walk(self.root) if isinstance(node, Query))

    def cost(self, count_answer_bit: Optional[bool] = None) -> int:
        """Worst-case bits: every split and every query on the longest path."""
        answer_bit = _answer_bit(count_answer_bit)
        best = 0
        stack = [(self.root, 0)]
        while stack:
            node, depth = stack.pop()
            if isinstance(node, (Split, Query)):
                stack.extend((child, depth + 1) for child in node.children)
            else:
                best = max(best, depth + (answer_bit if isinstance(node, AnswerLeaf) else 0))
        return best

    def as_protocol(self) -> ProtocolTree:
        if self.queries:
            raise ValueError(f"{self.name or 'protocol'} asks the oracle {self.queries} times")
        return ProtocolTree(self.root, self.n_a, self.n_b)


def _query(op: OracleProtocol, node: Query, x: int, y: int) -> int:
    a, b = apply_map(node.hx, x), apply_map(node.hy, y)
    g = op.oracle
    if not (0 <= a < g.rows and 0 <= b < g.cols):
        raise ValueError(f"Malformed query {node.label!r}: ({a}, {b}) is outside the oracle's {g.rows}x{g.cols} inputs")
    if g.is_masked(a, b):
        raise ValueError(f"Query {node.label!r} lands outside the promise set of {g.name} at ({a}, {b})")
    answer = g.evaluate(a, b)
    if answer not in (0, 1):
        raise ValueError(f"Oracle {g.name} answered {answer}; queries need a Boolean oracle")
    return answer


def oracle_eval(op: OracleProtocol, x: int, y: int, count_answer_bit: Optional[bool] = None) -> Tuple[int, int]:
    """
    Runs the protocol on (x, y) and returns (value, bits). Without queries this is exactly
    ``protocol.evaluate`` and the bits are its transcript length.
    """
    if not (0 <= x < 1 << op.n_a and 0 <= y < 1 << op.n_b):
        raise ValueError(f"Input pair ({x}, {y}) outside the protocol's domains")
    if not op.queries:
        value, transcript = evaluate(op.as_protocol(), x, y, count_answer_bit)
        return value, len(transcript)
    node = op.root
    cost = 0
    while isinstance(node, (Split, Query)):
        if isinstance(node, Query):
            bit = _query(op, node, x, y)
        else:
            bit = 0 if node.sends_zero(x if node.owner == A else y) else 1
        cost += 1
        node = node.children[bit]
    if isinstance(node, AnswerLeaf):
        return int(node.answer(x if node.owner == A else y)), cost + _answer_bit(count_answer_bit)
    if isinstance(node, Leaf):
        return node.value, cost
    raise ValueError(f"Unknown node type {type(node).__name__}")


@dataclass
class OracleCheck:
    ok: bool
    pairs: int
    max_cost: int
    wrong: List[Tuple[int, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "pairs": self.pairs, "maxCost": self.max_cost, "wrong": [list(pair) for pair in self.wrong[:20]]}


def verify_oracle_protocol(op: OracleProtocol, f: Function) -> OracleCheck:
    """Exhaustive comparison with f on its defined cells."""
    if (op.n_a, op.n_b) != (f.n_a, f.n_b):
        raise ValueError(f"Protocol is {op.n_a}x{op.n_b} bits, {f.name} is {f.n_a}x{f.n_b}")
    wrong = []
    pairs = max_cost = 0
    for x in range(f.rows):
        for y in range(f.cols):
            if f.is_masked(x, y):
                continue
            value, cost = oracle_eval(op, x, y)
            pairs += 1
            max_cost = max(max_cost, cost)
            if value != f.evaluate(x, y):
                wrong.append((x, y))
    if wrong:
        _LOGGER.warning(f"{op.name}: {len(wrong)} of {pairs} pairs disagree with {f.name}")
    return OracleCheck(not wrong, pairs, max_cost, wrong)


# -- constructions -----------------------------------------------------------------------------


def complement_concat_maps(n: int) -> Tuple[Callable[[int], int], Callable[[int], int]]:
    """x -> x then not-x and y -> not-y then y (low half first): DISJ of the images is EQ of (x, y)."""
    full = (1 << n) - 1
    return (lambda x: x | ((full ^ x) << n)), (lambda y: (full ^ y) | (y << n))


def eq_via_gt(n: int) -> OracleProtocol:
    """Asks GT(x, y) and then GT(not x, not y); both answers are 1 exactly when x = y."""
    full = (1 << n) - 1
    second = Query(lambda x: full ^ x, lambda y: full ^ y, (Leaf(0), Leaf(1)), "GT(not x, not y)")
    first = Query(lambda x: x, lambda y: y, (Leaf(0), second), "GT(x, y)")
    return OracleProtocol(first, n, n, build_named("GT", n), f"EQ:{n} with GT")


def eq_via_disj(n: int) -> OracleProtocol:
    hx, hy = complement_concat_maps(n)
    root = Query(hx, hy, (Leaf(0), Leaf(1)), "DISJ(x not-x, not-y y)")
    return OracleProtocol(root, n, n, build_named("DISJ", 2 * n), f"EQ:{n} with DISJ")


def self_oracle(f: Function) -> OracleProtocol:
    """One query to f itself."""
    root = Query(lambda x: x, lambda y: y, (Leaf(0), Leaf(1)), f.name)
    return OracleProtocol(root, f.n_a, f.n_b, f, f"{f.name} with itself")


ORACLE_CONSTRUCTIONS = {"GT": eq_via_gt, "DISJ": eq_via_disj}
