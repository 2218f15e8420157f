"""Seeded random protocol trees for the rewriting checks."""

from __future__ import annotations

import logging
from typing import Iterator, List, Tuple

import numpy as np

try:
    from .fnspace import Function, from_matrix
    from .protocol import A, B, Leaf, Node, ProtocolTree, Split, mask_of, tree_matrix
except ImportError:
    from fnspace import Function, from_matrix
    from protocol import A, B, Leaf, Node, ProtocolTree, Split, mask_of, tree_matrix

_LOGGER = logging.getLogger(__name__)

CORPUS_INPUT_BITS = 4
LEAF_CLASSES = tuple(range(4, 65))


def _split_options(leaves: int, rows: int, cols: int) -> List[Tuple[str, int, int]]:
    """(owner, leaves on side 0, inputs on side 0) choices that leave room for both subtrees."""
    options = []
    for owner, size, other in ((A, rows, cols), (B, cols, rows)):
        for size0 in range(1, size):
            for leaves0 in range(1, leaves):
                if leaves0 <= size0 * other and leaves - leaves0 <= (size - size0) * other:
                    options.append((owner, leaves0, size0))
    return options


def random_tree(leaves: int, seed: int, input_bits: int = CORPUS_INPUT_BITS) -> ProtocolTree:
    """
    A random tree with exactly ``leaves`` leaves over input_bits x input_bits inputs. Every split
    divides the inputs still possible on its path, so no node is trivially unnecessary; leaf values
    are fair coin flips.
    """
    side = 1 << input_bits
    if not 1 <= leaves <= side * side:
        raise ValueError(f"Cannot place {leaves} leaves in a {side}x{side} matrix")
    rng = np.random.default_rng([seed, leaves])

    def grow(count: int, rows: List[int], cols: List[int]) -> Node:
        if count == 1:
            return Leaf(int(rng.integers(2)))
        options = _split_options(count, len(rows), len(cols))
        owner, count0, size0 = options[int(rng.integers(len(options)))]
        values = rows if owner == A else cols
        order = rng.permutation(len(values))
        zero = [values[i] for i in order[:size0]]
        rest = [values[i] for i in order[size0:]]
        if owner == A:
            children = (grow(count0, sorted(zero), cols), grow(count - count0, sorted(rest), cols))
        else:
            children = (grow(count0, rows, sorted(zero)), grow(count - count0, rows, sorted(rest)))
        return Split(owner, mask_of(zero), children)

    everything = list(range(side))
    return ProtocolTree(grow(leaves, everything, everything), input_bits, input_bits)


def tree_function(tree: ProtocolTree) -> Function:
    """The function a tree computes, as a dense matrix."""
    return from_matrix(tree_matrix(tree), name=f"tree:{tree.leaves}")


def corpus(per_class: int, classes=LEAF_CLASSES, seed: int = 0) -> Iterator[Tuple[ProtocolTree, Function]]:
    """``per_class`` seeded trees for every leaf count in ``classes``, each with its function."""
    for leaves in classes:
        for index in range(per_class):
            tree = random_tree(leaves, seed * 1_000_003 + index)
            yield tree, tree_function(tree)
    _LOGGER.debug(f"Corpus of {per_class} trees for {len(tuple(classes))} leaf classes generated")
