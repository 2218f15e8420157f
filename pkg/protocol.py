"""
Deterministic protocol trees
============================

A tree is built from three immutable node kinds:

* ``Split`` - owned by player A or B; the owner's inputs in ``zero`` take child 0, the others child 1.
  ``zero`` is either a bitmask over the owner's full input domain or a predicate for domains too
  large for a mask.
* ``Leaf`` - a constant output.
* ``AnswerLeaf`` - the owner already knows the output and announces it; its value is a function of
  the owner's input alone. Used for fluent trees whose final answer bit is not a node.

Leaf values are not transmitted. ``count_answer_bit`` (default from labconfig) decides whether
reported costs add the final answer bit: answer leaves then cost one bit and a one-leaf tree costs 1.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, Iterator, List, Optional, TextIO, Tuple, Union

import numpy as np

try:
    from . import labconfig
    from .fnspace import Function, Rectangle
except ImportError:
    import labconfig
    from fnspace import Function, Rectangle

_LOGGER = logging.getLogger(__name__)

A = "A"
B = "B"
OWNERS = (A, B)

# Masks are materialized for serialization and path restriction up to this domain size.
MASK_DOMAIN_LIMIT = 1 << 16


def mask_flags(mask: int, size: int) -> np.ndarray:
    """Bitmask over [0, size) as a boolean array; bits at or above ``size`` are dropped."""
    mask &= (1 << size) - 1
    raw = np.frombuffer(mask.to_bytes((size + 7) // 8 or 1, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size].astype(bool)


def flags_mask(flags) -> int:
    """Boolean array as a bitmask (inverse of mask_flags)."""
    packed = np.packbits(np.asarray(flags, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def mask_of(values) -> int:
    result = 0
    for v in values:
        result |= 1 << int(v)
    return result


@dataclass(frozen=True, eq=False)
class Leaf:
    value: int

    leaves = 1

    @property
    def is_leaf(self) -> bool:
        return True


@dataclass(frozen=True, eq=False)
class AnswerLeaf:
    owner: str
    answer: Callable[[int], int]
    label: str = ""

    leaves = 1

    @property
    def is_leaf(self) -> bool:
        return True


@dataclass(frozen=True, eq=False)
class Split:
    owner: str
    zero: Union[int, Callable[[int], bool]]
    children: Tuple["Node", "Node"]

    def __post_init__(self):
        if self.owner not in OWNERS:
            raise ValueError(f"Split owner must be A or B, got {self.owner!r}")
        if len(self.children) != 2:
            raise ValueError(f"Split needs exactly two children, got {len(self.children)}")

    @property
    def is_leaf(self) -> bool:
        return False

    @cached_property
    def leaves(self) -> int:
        return self.children[0].leaves + self.children[1].leaves

    def sends_zero(self, value: int) -> bool:
        if isinstance(self.zero, int):
            return bool((self.zero >> value) & 1)
        return bool(self.zero(value))

    def zero_flags(self, values: np.ndarray) -> np.ndarray:
        """Vectorized sends_zero over an array of owner inputs."""
        if isinstance(self.zero, int):
            top = int(values.max()) + 1 if values.size else 1
            return mask_flags(self.zero, top)[values]
        return np.fromiter((bool(self.zero(int(v))) for v in values), dtype=bool, count=values.size)

    def zero_mask(self, size: int) -> int:
        if isinstance(self.zero, int):
            return self.zero & ((1 << size) - 1)
        if size > MASK_DOMAIN_LIMIT:
            raise ValueError(f"Cannot materialize a predicate split over {size} inputs")
        return flags_mask([bool(self.zero(v)) for v in range(size)])


Node = Union[Leaf, AnswerLeaf, Split]


@dataclass(frozen=True)
class ProtocolTree:
    root: Node
    n_a: int
    n_b: int

    def domain(self, owner: str) -> int:
        return 1 << (self.n_a if owner == A else self.n_b)

    @property
    def leaves(self) -> int:
        return self.root.leaves


@dataclass(frozen=True)
class Transcript:
    bits: Tuple[Tuple[str, int], ...]
    leaf: str

    def __len__(self) -> int:
        return len(self.bits)

    def as_string(self) -> str:
        return "".join(str(bit) for _, bit in self.bits)


@dataclass(frozen=True)
class Metrics:
    depth: int
    leaves: int
    leaves0: int
    leaves1: int
    leaves_open: int
    fluent_cost: float

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "leaves": self.leaves,
            "leaves0": self.leaves0,
            "leaves1": self.leaves1,
            "leavesOpen": self.leaves_open,
            "fluentCost": self.fluent_cost,
        }


def _answer_flag(count_answer_bit: Optional[bool]) -> bool:
    return labconfig.COUNT_ANSWER_BIT if count_answer_bit is None else count_answer_bit


# -- navigation ------------------------------------------------------------------------------------


def iter_nodes(node: Node, path: str = "") -> Iterator[Tuple[str, Node]]:
    """Pre-order walk yielding (path, node); the path lists the branch bits from the root."""
    stack = [(path, node)]
    while stack:
        current_path, current = stack.pop()
        yield current_path, current
        if isinstance(current, Split):
            stack.append((current_path + "1", current.children[1]))
            stack.append((current_path + "0", current.children[0]))


def node_at(node: Node, path: str) -> Node:
    for step in path:
        if not isinstance(node, Split):
            raise ValueError(f"Path {path!r} runs past a leaf")
        node = node.children[int(step)]
    return node


def replace_at(node: Node, path: str, new: Node) -> Node:
    """Returns a copy of the tree with the subtree at ``path`` replaced."""
    if not path:
        return new
    if not isinstance(node, Split):
        raise ValueError(f"Path {path!r} runs past a leaf")
    index = int(path[0])
    children = list(node.children)
    children[index] = replace_at(children[index], path[1:], new)
    return Split(node.owner, node.zero, (children[0], children[1]))


def height(node: Node, count_answer_bit: Optional[bool] = None) -> int:
    """Longest root-to-leaf path, answer leaves adding one bit when the flag is on."""
    answer_bit = 1 if _answer_flag(count_answer_bit) else 0
    best = 0
    stack = [(node, 0)]
    while stack:
        current, depth = stack.pop()
        if isinstance(current, Split):
            stack.append((current.children[0], depth + 1))
            stack.append((current.children[1], depth + 1))
        elif isinstance(current, AnswerLeaf):
            best = max(best, depth + answer_bit)
        else:
            best = max(best, depth)
    return best


# -- execution -------------------------------------------------------------------------------------


def evaluate(tree: ProtocolTree, x: int, y: int, count_answer_bit: Optional[bool] = None) -> Tuple[int, Transcript]:
    """
    Runs the protocol on (x, y).

    :return: the output and the transcript; bit j is 0 iff the speaker's input is in the zero set
    """
    if not (0 <= x < (1 << tree.n_a) and 0 <= y < (1 << tree.n_b)):
        raise ValueError(f"Input pair ({x}, {y}) outside the tree's domains")
    node = tree.root
    bits: List[Tuple[str, int]] = []
    path = ""
    while isinstance(node, Split):
        if isinstance(node.zero, int) and (node.zero == 0 or node.zero == (1 << tree.domain(node.owner)) - 1):
            raise ValueError(f"Malformed split at {path!r}: its zero set is empty or the whole domain")
        bit = 0 if node.sends_zero(x if node.owner == A else y) else 1
        bits.append((node.owner, bit))
        path += str(bit)
        node = node.children[bit]
    if isinstance(node, AnswerLeaf):
        value = int(node.answer(x if node.owner == A else y))
        if _answer_flag(count_answer_bit):
            bits.append((node.owner, value))
        return value, Transcript(tuple(bits), path)
    if isinstance(node, Leaf):
        return node.value, Transcript(tuple(bits), path)
    raise ValueError(f"Unknown node type {type(node).__name__} at {path!r}")


@dataclass
class LeafRegion:
    path: str
    rows: np.ndarray
    cols: np.ndarray
    node: Node

    @property
    def area(self) -> int:
        return int(self.rows.size * self.cols.size)

    def rectangle(self) -> Rectangle:
        return Rectangle.of(self.rows, self.cols)


def regions(tree: ProtocolTree, include_internal: bool = False) -> Iterator[LeafRegion]:
    """Walks the tree carrying the path-restricted row and column sets of every node."""
    stack = [("", tree.root, np.arange(1 << tree.n_a), np.arange(1 << tree.n_b))]
    while stack:
        path, node, rows, cols = stack.pop()
        if isinstance(node, Split):
            if include_internal:
                yield LeafRegion(path, rows, cols, node)
            if node.owner == A:
                flags = node.zero_flags(rows)
                stack.append((path + "1", node.children[1], rows[~flags], cols))
                stack.append((path + "0", node.children[0], rows[flags], cols))
            else:
                flags = node.zero_flags(cols)
                stack.append((path + "1", node.children[1], rows, cols[~flags]))
                stack.append((path + "0", node.children[0], rows, cols[flags]))
        else:
            yield LeafRegion(path, rows, cols, node)


def leaf_rectangles(tree: ProtocolTree) -> List[LeafRegion]:
    """The (possibly empty) rectangle of inputs reaching each leaf, in pre-order."""
    return list(regions(tree))


def _region_values(region: LeafRegion) -> np.ndarray:
    node = region.node
    if isinstance(node, Leaf):
        return np.full((region.rows.size, region.cols.size), node.value, dtype=np.int64)
    if node.owner == A:
        answers = np.array([node.answer(int(r)) for r in region.rows], dtype=np.int64)
        return np.repeat(answers[:, None], region.cols.size, axis=1)
    answers = np.array([node.answer(int(c)) for c in region.cols], dtype=np.int64)
    return np.repeat(answers[None, :], region.rows.size, axis=0)


def tree_matrix(tree: ProtocolTree) -> np.ndarray:
    """The full value matrix computed by the tree (small domains only)."""
    values = np.zeros((1 << tree.n_a, 1 << tree.n_b), dtype=np.int64)
    for region in regions(tree):
        if region.area:
            values[np.ix_(region.rows, region.cols)] = _region_values(region)
    return values


@dataclass
class VerificationResult:
    ok: bool
    mode: str
    checked: int
    violation_count: int
    violations: List[Tuple[int, int]] = field(default_factory=list)
    leaf_rectangles: int = 0
    partition_ok: bool = True

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "mode": self.mode,
            "checked": self.checked,
            "violationCount": self.violation_count,
            "violations": [list(pair) for pair in self.violations[:20]],
            "leafRectangles": self.leaf_rectangles,
            "partitionOk": self.partition_ok,
        }


MAX_REPORTED_VIOLATIONS = 1000


def verify(
    tree: ProtocolTree,
    f: Function,
    mode: str = "auto",
    seed: int = 0,
    trials: Optional[int] = None,
) -> VerificationResult:
    """
    Checks the tree against f on every pair (``exhaustive``) or on seeded random pairs (``sampled``).

    Masked cells of a partial function are never violations. Exhaustive mode also checks that the
    leaf rectangles partition the matrix.
    """
    if (tree.n_a, tree.n_b) != (f.n_a, f.n_b):
        raise ValueError(f"Tree dimensions {tree.n_a}x{tree.n_b} do not match {f!r}")
    if mode == "auto":
        mode = "exhaustive" if f.is_dense else "sampled"
    if mode == "exhaustive":
        return _verify_exhaustive(tree, f)
    if mode == "sampled":
        return _verify_sampled(tree, f, seed, trials or labconfig.VERIFY_SAMPLES)
    raise ValueError(f"Unknown verification mode {mode!r}")


def _verify_exhaustive(tree: ProtocolTree, f: Function) -> VerificationResult:
    matrix, mask = f.matrix, f.mask
    covered = 0
    rectangles = 0
    violation_count = 0
    violations: List[Tuple[int, int]] = []
    for region in regions(tree):
        if not region.area:
            continue
        rectangles += 1
        covered += region.area
        block = matrix[np.ix_(region.rows, region.cols)]
        wrong = block != _region_values(region)
        if mask is not None:
            wrong &= ~mask[np.ix_(region.rows, region.cols)]
        if wrong.any():
            hits = np.argwhere(wrong)
            violation_count += len(hits)
            for r, c in hits[: max(0, MAX_REPORTED_VIOLATIONS - len(violations))]:
                violations.append((int(region.rows[r]), int(region.cols[c])))
    partition_ok = covered == f.cells
    ok = violation_count == 0 and partition_ok
    _LOGGER.debug(f"Exhaustive verification against {f.name}: {violation_count} violations, {rectangles} rectangles")
    return VerificationResult(ok, "exhaustive", f.cells, violation_count, sorted(violations), rectangles, partition_ok)


def _verify_sampled(tree: ProtocolTree, f: Function, seed: int, trials: int) -> VerificationResult:
    rng = np.random.default_rng(seed)
    xs = rng.integers(0, f.rows, size=trials, dtype=np.int64)
    ys = rng.integers(0, f.cols, size=trials, dtype=np.int64)
    violations: List[Tuple[int, int]] = []
    violation_count = 0
    for x, y in zip(xs.tolist(), ys.tolist()):
        if f.is_masked(x, y):
            continue
        value, _ = evaluate(tree, x, y)
        if value != f.evaluate(x, y):
            violation_count += 1
            if len(violations) < MAX_REPORTED_VIOLATIONS:
                violations.append((x, y))
    _LOGGER.debug(f"Sampled verification against {f.name}: {trials} pairs, {violation_count} violations")
    return VerificationResult(violation_count == 0, "sampled", trials, violation_count, violations)


# -- measures -------------------------------------------------------------------------------------


def metrics(tree: ProtocolTree, count_answer_bit: Optional[bool] = None) -> Metrics:
    counts = {0: 0, 1: 0}
    open_leaves = 0
    for _, node in iter_nodes(tree.root):
        if isinstance(node, Leaf):
            counts[node.value] = counts.get(node.value, 0) + 1
        elif isinstance(node, AnswerLeaf):
            open_leaves += 1
    leaves = tree.root.leaves
    return Metrics(
        depth=height(tree.root, count_answer_bit),
        leaves=leaves,
        leaves0=counts[0],
        leaves1=counts[1],
        leaves_open=open_leaves,
        fluent_cost=math.log2(leaves),
    )


def answer_cost(tree: ProtocolTree, count_answer_bit: Optional[bool] = None) -> int:
    """Worst-case communication; with the answer bit counted even a constant tree costs one bit."""
    depth = height(tree.root, count_answer_bit)
    if _answer_flag(count_answer_bit):
        return max(depth, 1)
    return depth


@dataclass(frozen=True)
class FluentWeights:
    edges: Dict[str, Tuple[float, float]]
    worst_time: float

    def reciprocal_sums(self) -> Dict[str, float]:
        """Per node: 2^-t0 + 2^-t1, which is 1 for every node."""
        return {path: 2.0 ** -t0 + 2.0 ** -t1 for path, (t0, t1) in self.edges.items()}


def fluent_weights(tree: ProtocolTree) -> FluentWeights:
    """
    Edge times log2((a+b)/a) and log2((a+b)/b) with a, b the children's leaf counts.

    Along any path the times telescope to log2(leaves / 1), so every leaf is reached at time
    log2(leaves).
    """
    edges: Dict[str, Tuple[float, float]] = {}
    worst = 0.0
    stack = [("", tree.root, 0.0)]
    while stack:
        path, node, elapsed = stack.pop()
        if isinstance(node, Split):
            a, b = node.children[0].leaves, node.children[1].leaves
            total = a + b
            t0, t1 = math.log2(total / a), math.log2(total / b)
            edges[path] = (t0, t1)
            stack.append((path + "0", node.children[0], elapsed + t0))
            stack.append((path + "1", node.children[1], elapsed + t1))
        else:
            worst = max(worst, elapsed)
    return FluentWeights(edges, worst)


# -- structural checks and test transformations ------------------------------------------------------


def find_unnecessary(tree: ProtocolTree) -> List[str]:
    """Paths of splits that send all of the owner's path-restricted inputs the same way."""
    found = []
    for region in regions(tree, include_internal=True):
        node = region.node
        if not isinstance(node, Split):
            continue
        values = region.rows if node.owner == A else region.cols
        flags = node.zero_flags(values)
        if values.size and (flags.all() or not flags.any()):
            found.append(region.path)
    return found


def _owner_mask(values: np.ndarray) -> int:
    return mask_of(values.tolist())


def split_shallow_leaves(tree: ProtocolTree) -> ProtocolTree:
    """
    Replaces every constant leaf above the bottom level by a split that keeps the leaf on child 0
    and hangs an unreachable leaf of the opposite value on child 1. Values are unchanged.
    """
    depth = height(tree.root, count_answer_bit=False)
    root = tree.root
    full_rows = (1 << tree.n_a) - 1
    for region in list(regions(tree)):
        node = region.node
        if not isinstance(node, Leaf) or len(region.path) >= depth or not region.area:
            continue
        row_mask = _owner_mask(region.rows)
        if row_mask != full_rows:
            owner, zero = A, row_mask
        else:
            owner, zero = B, _owner_mask(region.cols)
        replacement = Split(owner, zero, (Leaf(node.value), Leaf(1 - node.value)))
        root = replace_at(root, region.path, replacement)
    return ProtocolTree(root, tree.n_a, tree.n_b)


# -- serialization --------------------------------------------------------------------------------


def write_tree(tree: ProtocolTree, stream: TextIO) -> None:
    """Pre-order lines: ``S <owner> <hex>``, ``L <value>``, ``R <owner> <hex of inputs answering 1>``."""
    stream.write(f"cctree v1 nA={tree.n_a} nB={tree.n_b}\n")
    for _, node in iter_nodes(tree.root):
        if isinstance(node, Split):
            stream.write(f"S {node.owner} {node.zero_mask(tree.domain(node.owner)):x}\n")
        elif isinstance(node, Leaf):
            stream.write(f"L {node.value}\n")
        else:
            size = tree.domain(node.owner)
            if size > MASK_DOMAIN_LIMIT:
                raise ValueError(f"Cannot serialize an answer leaf over {size} inputs")
            ones = mask_of(v for v in range(size) if node.answer(v))
            stream.write(f"R {node.owner} {ones:x}\n")


def _answer_from_mask(mask: int) -> Callable[[int], int]:
    return lambda value: (mask >> value) & 1


def read_tree(stream) -> ProtocolTree:
    lines = [line.split() for line in stream if line.strip()]
    if not lines or lines[0][:2] != ["cctree", "v1"]:
        raise ValueError("Missing 'cctree v1' header")
    fields = dict(item.split("=") for item in lines[0][2:])
    n_a, n_b = int(fields["nA"]), int(fields["nB"])
    position = 1

    def parse() -> Node:
        nonlocal position
        if position >= len(lines):
            raise ValueError("Tree file ends inside a split")
        parts = lines[position]
        position += 1
        if parts[0] == "L":
            return Leaf(int(parts[1]))
        if parts[0] == "R":
            return AnswerLeaf(parts[1], _answer_from_mask(int(parts[2], 16)))
        if parts[0] == "S":
            zero = int(parts[2], 16)
            child0 = parse()
            child1 = parse()
            return Split(parts[1], zero, (child0, child1))
        raise ValueError(f"Unknown tree line {' '.join(parts)!r}")

    root = parse()
    if position != len(lines):
        raise ValueError(f"Trailing lines after the tree ({len(lines) - position})")
    return ProtocolTree(root, n_a, n_b)
