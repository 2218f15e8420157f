"""
Tree rewriting
==============

Structural transformations of mask-based protocol trees:

* ``find_centroid`` / ``balance_depth`` - rebuild any tree with L leaves into one of depth at most
  3 * ceil(log2 L); both players announce whether their input is consistent with the path to the
  centroid, then the centroid's owner speaks.
* ``remove_unnecessary`` - the local merges that never add leaves: splits that send every
  path-restricted input one way, two equal sibling leaves, a same-owner child hanging a leaf of the
  same value, and the one-skip merge through a node of the other player.
* ``pushdown_normalize`` - pushes leaves of one value down the tree (through own nodes by switching,
  through the other player's nodes by duplication) as long as (leaves, magnitude sum) strictly
  decreases lexicographically and neither leaf count nor depth grows.

All rewrites need constant leaves and integer zero masks; predicate splits are materialized when the
domain is small enough.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

try:
    from .fnspace import Function
    from .protocol import (
        A,
        B,
        MASK_DOMAIN_LIMIT,
        AnswerLeaf,
        Leaf,
        Node,
        ProtocolTree,
        Split,
        height,
        iter_nodes,
        node_at,
        replace_at,
        verify,
    )
except ImportError:
    from fnspace import Function
    from protocol import (
        A,
        B,
        MASK_DOMAIN_LIMIT,
        AnswerLeaf,
        Leaf,
        Node,
        ProtocolTree,
        Split,
        height,
        iter_nodes,
        node_at,
        replace_at,
        verify,
    )

_LOGGER = logging.getLogger(__name__)

UNNECESSARY = "unnecessary"
MERGE_LEAVES = "merge-leaves"
MERGE_OWN = "merge-own"
MERGE_SKIP = "merge-skip"
REMOVE_UNNECESSARY = "remove-unnecessary"
PUSH_OWN = "push-own"
PUSH_OWN_DEEP = "push-own-deep"
PUSH_OTHER = "push-other"
PUSH_OTHER_DEEP = "push-other-deep"
LIFT = "lift"


@dataclass(frozen=True)
class _Domain:
    full_a: int
    full_b: int

    @classmethod
    def of(cls, tree: ProtocolTree) -> "_Domain":
        return cls((1 << (1 << tree.n_a)) - 1, (1 << (1 << tree.n_b)) - 1)

    def full(self, owner: str) -> int:
        return self.full_a if owner == A else self.full_b


def _materialize(tree: ProtocolTree) -> ProtocolTree:
    """Copy of the tree whose splits all carry integer masks."""
    for owner in (A, B):
        if tree.domain(owner) > MASK_DOMAIN_LIMIT:
            raise ValueError(f"Rewrites need mask splits; player {owner}'s domain has {tree.domain(owner)} inputs")

    def convert(node: Node) -> Node:
        if isinstance(node, AnswerLeaf):
            raise ValueError(f"Rewrites need constant leaves, found answer leaf {node.label!r}")
        if isinstance(node, Leaf):
            return node
        zero = node.zero_mask(tree.domain(node.owner))
        return Split(node.owner, zero, (convert(node.children[0]), convert(node.children[1])))

    return ProtocolTree(convert(tree.root), tree.n_a, tree.n_b)


def _side_set(node: Split, side: int, domain: _Domain) -> int:
    return node.zero if side == 0 else domain.full(node.owner) & ~node.zero


def _make_split(owner: str, zero: int, child0: Node, child1: Node, domain: _Domain) -> Node:
    """Split, collapsed to the only live child when the mask is empty or the whole domain."""
    zero &= domain.full(owner)
    if zero == 0:
        return child1
    if zero == domain.full(owner):
        return child0
    return Split(owner, zero, (child0, child1))


def _leaf_value(node: Node) -> Optional[int]:
    return node.value if isinstance(node, Leaf) else None


# -- measures ---------------------------------------------------------------------------------------


def leaf_counts(node: Node) -> Dict[int, int]:
    counts = {0: 0, 1: 0}
    for _, current in iter_nodes(node):
        if isinstance(current, Leaf):
            counts[current.value] = counts.get(current.value, 0) + 1
    return counts


def magnitude_sum(node: Node, value: int = 0) -> int:
    """Sum over ``value``-leaves of the number of leaves under the leaf's father."""
    total = 0
    for _, current in iter_nodes(node):
        if isinstance(current, Split):
            for child in current.children:
                if _leaf_value(child) == value:
                    total += current.leaves
    return total


def _measure(node: Node, value: int) -> Tuple[int, int]:
    return node.leaves, magnitude_sum(node, value)


# -- centroid depth balancing ------------------------------------------------------------------------


def find_centroid(tree: ProtocolTree) -> str:
    """
    Path of the node whose removal leaves components of at most half the leaves: walk down while
    some child holds more than half of all leaves.
    """
    root = tree.root
    if not isinstance(root, Split):
        raise ValueError("A single-leaf tree has no centroid")
    total = root.leaves
    node, path = root, ""
    while isinstance(node, Split):
        for index, child in enumerate(node.children):
            if child.leaves * 2 > total:
                node, path = child, path + str(index)
                break
        else:
            break
    return path


def _path_sets(node: Node, path: str, rows: int, cols: int, domain: _Domain) -> Tuple[int, int]:
    """Full-domain row and column sets of the inputs that follow ``path`` from ``node``."""
    for step in path:
        side = int(step)
        if node.owner == A:
            rows &= _side_set(node, side, domain)
        else:
            cols &= _side_set(node, side, domain)
        node = node.children[side]
    return rows, cols


def _restrict(node: Node, rows: int, cols: int) -> Node:
    """Drops splits that send every input of the rectangle rows x cols the same way."""
    if not isinstance(node, Split):
        return node
    own = rows if node.owner == A else cols
    zero = node.zero & own
    if zero == own:
        return _restrict(node.children[0], rows, cols)
    if zero == 0:
        return _restrict(node.children[1], rows, cols)
    if node.owner == A:
        children = (_restrict(node.children[0], zero, cols), _restrict(node.children[1], own & ~zero, cols))
    else:
        children = (_restrict(node.children[0], rows, zero), _restrict(node.children[1], rows, own & ~zero))
    return Split(node.owner, node.zero, children)


def _balance_below(node: Node, rows: int, cols: int, domain: _Domain) -> Node:
    """The node's own bit, then each child balanced on its part of the rectangle."""
    if not isinstance(node, Split):
        return node
    own = rows if node.owner == A else cols
    zero = node.zero & own
    if zero in (0, own):
        return _balance(node.children[0 if zero == own else 1], rows, cols, domain)
    if node.owner == A:
        children = (_balance(node.children[0], zero, cols, domain), _balance(node.children[1], own & ~zero, cols, domain))
    else:
        children = (_balance(node.children[0], rows, zero, domain), _balance(node.children[1], rows, own & ~zero, domain))
    return Split(node.owner, node.zero, children)


def _balance(node: Node, rows: int, cols: int, domain: _Domain) -> Node:
    node = _restrict(node, rows, cols)
    if not isinstance(node, Split):
        return node
    centre = find_centroid(ProtocolTree(node, 0, 0))
    target = node_at(node, centre)
    path_rows, path_cols = _path_sets(node, centre, domain.full_a, domain.full_b, domain)
    inner_rows, inner_cols = rows & path_rows, cols & path_cols

    if not centre:
        return _balance_below(node, rows, cols, domain)

    # the tree with the centroid's subtree cut out: its parent is replaced by the sibling
    parent_path, side = centre[:-1], int(centre[-1])
    sibling = node_at(node, parent_path).children[1 - side]
    rest = replace_at(node, parent_path, sibling)
    if not inner_rows or not inner_cols:
        return _balance(rest, rows, cols, domain)

    inside = _balance_below(target, inner_rows, inner_cols, domain)
    if cols & ~path_cols:
        inside = Split(B, domain.full_b & ~path_cols, (_balance(rest, inner_rows, cols & ~path_cols, domain), inside))
    if rows & ~path_rows:
        inside = Split(A, domain.full_a & ~path_rows, (_balance(rest, rows & ~path_rows, cols, domain), inside))
    return inside


def balance_depth(tree: ProtocolTree, f: Function) -> ProtocolTree:
    """
    Rebuilds a verified tree with L leaves into an equivalent tree of depth at most 3 * ceil(log2 L).

    At every level A says whether her input allows the path to the centroid, B does the same, and
    inside the centroid's rectangle its owner sends the centroid's own bit; each of the three
    remaining pieces has at most half of the leaves.
    """
    if not verify(tree, f).ok:
        raise ValueError(f"The tree does not compute {f.name}; refusing to balance it")
    tree = _materialize(tree)
    domain = _Domain.of(tree)
    root = _balance(tree.root, domain.full_a, domain.full_b, domain)
    balanced = ProtocolTree(root, tree.n_a, tree.n_b)
    _LOGGER.debug(
        f"Balanced {tree.leaves} leaves: depth {height(tree.root, False)} -> {height(root, False)}"
    )
    return balanced


# -- unnecessary-node removal -------------------------------------------------------------------------


def _merge_own(node: Split, own: int, domain: _Domain) -> Optional[Node]:
    """A leaf beside a same-owner child that hangs a leaf of the same value: one split suffices."""
    for side in (0, 1):
        value = _leaf_value(node.children[side])
        other = node.children[1 - side]
        if value is None or not isinstance(other, Split) or other.owner != node.owner:
            continue
        for inner in (0, 1):
            if _leaf_value(other.children[inner]) != value:
                continue
            union = _side_set(node, side, domain) | _side_set(other, inner, domain)
            return _restricted_split(node.owner, union, own, Leaf(value), other.children[1 - inner])
    return None


def _merge_skip(node: Split, own: int, domain: _Domain) -> Optional[Node]:
    """
    v hangs a c-leaf, its child w (other player) hangs a c-leaf, and w's child u (v's owner) hangs a
    c-leaf too: v's owner announces both leaf sets at once and w speaks afterwards.
    """
    for side in (0, 1):
        value = _leaf_value(node.children[side])
        middle = node.children[1 - side]
        if value is None or not isinstance(middle, Split) or middle.owner == node.owner:
            continue
        for middle_side in (0, 1):
            lower = middle.children[1 - middle_side]
            if _leaf_value(middle.children[middle_side]) != value:
                continue
            if not isinstance(lower, Split) or lower.owner != node.owner:
                continue
            for lower_side in (0, 1):
                if _leaf_value(lower.children[lower_side]) != value:
                    continue
                rest = lower.children[1 - lower_side]
                pair = (Leaf(value), rest) if middle_side == 0 else (rest, Leaf(value))
                union = _side_set(node, side, domain) | _side_set(lower, lower_side, domain)
                return _restricted_split(node.owner, union, own, Leaf(value), Split(middle.owner, middle.zero, pair))
    return None


def _restricted_split(owner: str, zero: int, own: int, child0: Node, child1: Node) -> Node:
    if zero & own == own:
        return child0
    if zero & own == 0:
        return child1
    return Split(owner, zero, (child0, child1))


def _simplify(node: Node, rows: int, cols: int, domain: _Domain, path: str, steps: List[Tuple[str, str]]) -> Node:
    if not isinstance(node, Split):
        return node
    own = rows if node.owner == A else cols
    zero = node.zero & own
    if zero == own or zero == 0:
        steps.append((UNNECESSARY, path))
        return _simplify(node.children[0 if zero == own else 1], rows, cols, domain, path, steps)
    if node.owner == A:
        children = (
            _simplify(node.children[0], zero, cols, domain, path + "0", steps),
            _simplify(node.children[1], own & ~zero, cols, domain, path + "1", steps),
        )
    else:
        children = (
            _simplify(node.children[0], rows, zero, domain, path + "0", steps),
            _simplify(node.children[1], rows, own & ~zero, domain, path + "1", steps),
        )
    current: Node = Split(node.owner, node.zero, children)
    while isinstance(current, Split):
        first, second = (_leaf_value(child) for child in current.children)
        if first is not None and first == second:
            steps.append((MERGE_LEAVES, path))
            current = Leaf(first)
            continue
        merged = _merge_own(current, own, domain)
        if merged is not None:
            steps.append((MERGE_OWN, path))
            current = merged
            continue
        merged = _merge_skip(current, own, domain)
        if merged is not None:
            steps.append((MERGE_SKIP, path))
            current = merged
            continue
        break
    return current


def _simplify_root(root: Node, domain: _Domain, steps: Optional[List[Tuple[str, str]]] = None) -> Node:
    steps = [] if steps is None else steps
    while True:
        found: List[Tuple[str, str]] = []
        root = _simplify(root, domain.full_a, domain.full_b, domain, "", found)
        steps.extend(found)
        if not found:
            return root


def remove_unnecessary(tree: ProtocolTree) -> ProtocolTree:
    """
    Applies the leaf-saving merges until none is left. Values are preserved on every input and the
    leaf count never grows.
    """
    tree = _materialize(tree)
    steps: List[Tuple[str, str]] = []
    root = _simplify_root(tree.root, _Domain.of(tree), steps)
    if steps:
        _LOGGER.debug(f"Removed unnecessary nodes: {tree.leaves} -> {root.leaves} leaves in {len(steps)} merges")
    return ProtocolTree(root, tree.n_a, tree.n_b)


# -- push-down normalization ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    path: str
    before: Tuple[int, int]
    after: Tuple[int, int]

    def to_json(self) -> dict:
        return {"rule": self.rule, "path": self.path, "before": list(self.before), "after": list(self.after)}


@dataclass
class RewriteTrace:
    value: int
    before: Tuple[int, int]
    after: Tuple[int, int]
    steps: List[RewriteStep] = field(default_factory=list)

    @property
    def monotone(self) -> bool:
        return all(step.after < step.before for step in self.steps)

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "before": list(self.before),
            "after": list(self.after),
            "monotone": self.monotone,
            "steps": [step.to_json() for step in self.steps],
        }


def _push(owner: str, leaf_set: int, leaf: Leaf, below: Node, domain: _Domain) -> Node:
    """Equivalent of Split(owner, leaf_set, (leaf, below)) with the leaf moved as deep as it goes."""
    return _push_counted(owner, leaf_set, leaf, below, domain)[0]


def _push_counted(owner: str, leaf_set: int, leaf: Leaf, below: Node, domain: _Domain) -> Tuple[Node, int]:
    """
    The pushed subtree and the number of leaf copies that survive in it. A copy stops next to a
    leaf, or above a same-owner node hanging a leaf of its value (the merge removes it there).
    Through a same-owner node the copy follows the side where fewer copies survive.
    """
    if not isinstance(below, Split):
        survivors = 0 if _leaf_value(below) == leaf.value else 1
        return _make_split(owner, leaf_set, leaf, below, domain), survivors
    if below.owner == owner:
        if any(_leaf_value(child) == leaf.value for child in below.children):
            return _make_split(owner, leaf_set, leaf, below, domain), 0
        zero = below.zero
        deeper1, count1 = _push_counted(owner, leaf_set, leaf, below.children[1], domain)
        deeper0, count0 = _push_counted(owner, leaf_set, leaf, below.children[0], domain)
        if (count1, below.children[1].leaves) <= (count0, below.children[0].leaves):
            return _make_split(owner, zero & ~leaf_set, below.children[0], deeper1, domain), count1
        return _make_split(owner, zero | leaf_set, deeper0, below.children[1], domain), count0
    first, count0 = _push_counted(owner, leaf_set, leaf, below.children[0], domain)
    second, count1 = _push_counted(owner, leaf_set, leaf, below.children[1], domain)
    return Split(below.owner, below.zero, (first, second)), count0 + count1


def _is_twist(node: Node, value: int) -> bool:
    """A ``value``-leaf beside a node of the other player whose children are a ``value``-leaf and a leaf of the other value."""
    if not isinstance(node, Split):
        return False
    for side in (0, 1):
        other = node.children[1 - side]
        if _leaf_value(node.children[side]) != value or not isinstance(other, Split) or other.owner == node.owner:
            continue
        values = sorted(_leaf_value(child) for child in other.children if isinstance(child, Leaf))
        if len(values) == 2 and values == sorted((value, 1 - value)):
            return True
    return False


def count_twists(tree: ProtocolTree, value: int = 0) -> int:
    return sum(1 for _, node in iter_nodes(tree.root) if _is_twist(node, value))


def _switch_twist(node: Split, value: int, domain: _Domain) -> Split:
    """The same twist with the two players' nodes exchanged."""
    side = 0 if _leaf_value(node.children[0]) == value else 1
    lower = node.children[1 - side]
    lower_side = 0 if _leaf_value(lower.children[0]) == value else 1
    upper_set = _side_set(node, side, domain)
    lower_set = _side_set(lower, lower_side, domain)
    inner = Split(node.owner, upper_set, (Leaf(value), Leaf(1 - value)))
    return Split(lower.owner, lower_set, (Leaf(value), inner))


def _push_candidates(node: Split, value: int, domain: _Domain) -> List[Tuple[str, Node]]:
    candidates: List[Tuple[str, Node]] = []
    if _is_twist(node, value):
        return candidates
    for side in (0, 1):
        other = node.children[1 - side]
        if _leaf_value(node.children[side]) != value or not isinstance(other, Split):
            continue
        leaf_set = _side_set(node, side, domain)
        leaf = Leaf(value)
        owner = node.owner
        if other.owner == owner:
            zero = other.zero
            keep1 = _make_split(owner, zero & ~leaf_set, other.children[0], _make_split(owner, leaf_set, leaf, other.children[1], domain), domain)
            keep0 = _make_split(owner, zero | leaf_set, _make_split(owner, leaf_set, leaf, other.children[0], domain), other.children[1], domain)
            candidates.append((PUSH_OWN, keep1))
            candidates.append((PUSH_OWN, keep0))
            candidates.append((PUSH_OWN_DEEP, _push(owner, leaf_set, leaf, other, domain)))
        else:
            shallow = Split(
                other.owner,
                other.zero,
                tuple(_make_split(owner, leaf_set, leaf, child, domain) for child in other.children),
            )
            candidates.append((PUSH_OTHER, shallow))
            candidates.append((PUSH_OTHER_DEEP, _push(owner, leaf_set, leaf, other, domain)))
    return candidates


def _lift_candidates(node: Split, value: int, domain: _Domain) -> List[Tuple[str, Node]]:
    """
    A ``value``-leaf hanging one level below a same-owner node is moved up to that node and pushed
    into the node's other subtree, where it may meet a leaf of its own value.
    """
    candidates: List[Tuple[str, Node]] = []
    for side in (0, 1):
        child = node.children[side]
        if not isinstance(child, Split):
            continue
        if child.owner != node.owner and _is_twist(child, value):
            child = _switch_twist(child, value, domain)
        if child.owner != node.owner:
            continue
        for inner in (0, 1):
            if _leaf_value(child.children[inner]) != value:
                continue
            lifted = _side_set(child, inner, domain) & _side_set(node, side, domain)
            rest = child.children[1 - inner]
            far = node.children[1 - side]
            pushed = _push(node.owner, lifted, Leaf(value), far, domain)
            if side == 0:
                candidate = _make_split(node.owner, node.zero & ~lifted, rest, pushed, domain)
            else:
                candidate = _make_split(node.owner, node.zero | lifted, pushed, rest, domain)
            candidates.append((LIFT, candidate))
    return candidates


def _acceptable(old: Node, new: Node, value: int) -> bool:
    if _measure(new, value) >= _measure(old, value):
        return False
    old_counts, new_counts = leaf_counts(old), leaf_counts(new)
    if any(new_counts.get(v, 0) > old_counts.get(v, 0) for v in (0, 1)):
        return False
    return height(new, False) <= height(old, False)


def _normalize_root(root: Node, domain: _Domain, value: int, trace: RewriteTrace) -> Node:
    while True:
        applied = False
        for path, node in iter_nodes(root):
            if not isinstance(node, Split):
                continue
            for rule, candidate in _push_candidates(node, value, domain) + _lift_candidates(node, value, domain):
                rewritten = _simplify_root(replace_at(root, path, candidate), domain)
                if _acceptable(root, rewritten, value):
                    step = RewriteStep(rule, path, _measure(root, value), _measure(rewritten, value))
                    trace.steps.append(step)
                    _LOGGER.debug(f"{rule} at {path!r}: {step.before} -> {step.after}")
                    root = rewritten
                    applied = True
                    break
            if applied:
                break
        if not applied:
            return root


def pushdown_normalize(
    tree: ProtocolTree, f: Optional[Function] = None, value: int = 0
) -> Tuple[ProtocolTree, RewriteTrace]:
    """
    Removes unnecessary nodes, then pushes ``value``-leaves down until no rewrite is an improvement.

    A rewrite is kept only when it strictly decreases (leaves, magnitude sum) lexicographically and
    increases neither leaf count nor depth. Pushing through the other player's node duplicates the
    leaf; the duplicate is only kept when the copies get eliminated. Twists are left alone.

    :param f: when given, the input must compute f and so must the result
    :param value: 0 for the normal form, 1 for the dual
    """
    if f is not None and not verify(tree, f).ok:
        raise ValueError(f"The tree does not compute {f.name}; refusing to normalize it")
    tree = _materialize(tree)
    domain = _Domain.of(tree)
    start = _measure(tree.root, value)
    trace = RewriteTrace(value, start, start)
    root = _simplify_root(tree.root, domain)
    if root is not tree.root and _measure(root, value) != start:
        trace.steps.append(RewriteStep(REMOVE_UNNECESSARY, "", start, _measure(root, value)))
    root = _normalize_root(root, domain, value, trace)
    trace.after = _measure(root, value)
    result = ProtocolTree(root, tree.n_a, tree.n_b)
    if f is not None and not verify(result, f).ok:
        raise RuntimeError(f"Normalization changed the values of the tree for {f.name}")
    _LOGGER.debug(f"Normalized ({value}-leaves): {trace.before} -> {trace.after} in {len(trace.steps)} steps")
    return result, trace


# -- result balancing report ----------------------------------------------------------------------------


@dataclass
class BalanceReport:
    leaves: int
    leaves0: int
    leaves1: int
    a0: int
    a1: int
    b0: int
    b1: int
    twists: int
    dual_leaves0: int
    dual_leaves1: int
    checks: Dict[str, Optional[bool]]

    @property
    def ok(self) -> bool:
        return all(check is not False for check in self.checks.values())

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "leaves": self.leaves,
            "leaves0": self.leaves0,
            "leaves1": self.leaves1,
            "a0": self.a0,
            "a1": self.a1,
            "b0": self.b0,
            "b1": self.b1,
            "twists": self.twists,
            "dualLeaves0": self.dual_leaves0,
            "dualLeaves1": self.dual_leaves1,
            "checks": self.checks,
            "ok": self.ok,
        }


def _owner_counts(root: Node) -> Dict[Tuple[str, int], int]:
    counts = {(owner, v): 0 for owner in (A, B) for v in (0, 1)}
    for _, node in iter_nodes(root):
        if isinstance(node, Split):
            for child in node.children:
                if isinstance(child, Leaf):
                    counts[(node.owner, child.value)] += 1
    return counts


def _ratio_checks(prefix: str, many: int, few: int, leaves: int) -> Dict[str, Optional[bool]]:
    constant = many == 0 or few == 0
    return {
        f"{prefix}FourMinusTwo": None if constant else many <= 4 * few - 2,
        f"{prefix}Double": None if constant else many <= 2 * few,
        f"{prefix}ThreeHalves": None if leaves < 5 else many <= math.ceil(3 * few / 2),
    }


def result_balance_report(tree: ProtocolTree) -> BalanceReport:
    """
    Leaf bookkeeping of a normalized tree: per-owner leaf counts, twists and the ratio checks
    L0 <= 4 L1 - 2, L0 <= 2 L1 (nonconstant trees) and L0 <= ceil(3/2 L1) (five leaves or more), plus
    the same checks with 0 and 1 swapped on the dual normal form.
    """
    tree = _materialize(tree)
    counts = leaf_counts(tree.root)
    owners = _owner_counts(tree.root)
    dual, _ = pushdown_normalize(tree, value=1)
    dual_counts = leaf_counts(dual.root)
    checks = _ratio_checks("zeros", counts[0], counts[1], tree.leaves)
    checks.update(_ratio_checks("ones", dual_counts[1], dual_counts[0], dual.leaves))
    if tree.leaves == 4 and counts[0] and counts[1]:
        _LOGGER.warning(
            f"Four-leaf tree with L0={counts[0]}, L1={counts[1]}: the 3/2 ratio is not asserted below five leaves"
        )
    return BalanceReport(
        leaves=tree.leaves,
        leaves0=counts[0],
        leaves1=counts[1],
        a0=owners[(A, 0)],
        a1=owners[(A, 1)],
        b0=owners[(B, 0)],
        b1=owners[(B, 1)],
        twists=count_twists(tree),
        dual_leaves0=dual_counts[0],
        dual_leaves1=dual_counts[1],
        checks=checks,
    )
