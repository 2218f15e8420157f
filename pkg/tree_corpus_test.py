import io

import pytest

from protocol import Leaf, verify, write_tree
from tree_corpus import CORPUS_INPUT_BITS, LEAF_CLASSES, corpus, random_tree, tree_function


@pytest.mark.parametrize("leaves", [1, 4, 17, 64])
def test_random_tree_leaf_count(leaves):
    tree = random_tree(leaves, seed=3)
    assert tree.leaves == leaves
    assert (tree.n_a, tree.n_b) == (CORPUS_INPUT_BITS, CORPUS_INPUT_BITS)


def _text(tree):
    stream = io.StringIO()
    write_tree(tree, stream)
    return stream.getvalue()


def test_random_tree_is_seeded():
    assert _text(random_tree(12, seed=5)) == _text(random_tree(12, seed=5))
    assert _text(random_tree(12, seed=5)) != _text(random_tree(12, seed=6))


def test_single_leaf_tree():
    assert isinstance(random_tree(1, seed=0).root, Leaf)


def test_too_many_leaves():
    with pytest.raises(ValueError):
        random_tree(257, seed=0)


def test_tree_computes_its_function():
    tree = random_tree(20, seed=1)
    assert verify(tree, tree_function(tree)).ok


def test_corpus_covers_classes():
    trees = list(corpus(2, classes=(4, 8), seed=1))
    assert [tree.leaves for tree, _ in trees] == [4, 4, 8, 8]
    assert all(verify(tree, f).ok for tree, f in trees)
    assert LEAF_CLASSES[0] == 4 and LEAF_CLASSES[-1] == 64
