"""Shared test utilities: tree audits and randomized dataset builders."""

from __future__ import annotations

import numpy as np

from ranksvm.ostree import BLACK, RED, OSTree
from ranksvm.sparse import SparseMatrix


def audit_tree(tree: OSTree) -> None:
    """Full structural audit: BST order, size recurrence, red-black rules,
    height bound, and consistency of the total/distinct counters."""
    nil = tree._nil
    root = tree._root
    assert nil.size == 0 and nil.color is BLACK

    def walk(node, lo, hi):
        """returns (total multiplicity, node count, black height, height)"""
        if node is nil:
            return 0, 0, 1, 0
        assert lo < node.key < hi, "BST order violated (distinct keys collapse to one node)"
        assert node.nodesize >= 1
        lt, lc, lbh, lh = walk(node.left, lo, node.key)
        rt, rc, rbh, rh = walk(node.right, node.key, hi)
        assert node.size == lt + rt + node.nodesize, "size recurrence violated"
        assert lbh == rbh, "unequal black heights"
        if node.color is RED:
            assert node.left.color is BLACK and node.right.color is BLACK, "red-red violation"
        if node.left is not nil:
            assert node.left.parent is node
        if node.right is not nil:
            assert node.right.parent is node
        bh = lbh + (1 if node.color is BLACK else 0)
        return lt + rt + node.nodesize, lc + rc + 1, bh, 1 + max(lh, rh)

    assert root.color is BLACK
    total, distinct, _, height = walk(root, float("-inf"), float("inf"))
    assert total == tree.total
    assert distinct == tree.distinct
    assert height <= 2 * np.log2(distinct + 1) + 1e-9, f"height {height} exceeds bound"


def sorted_array_counts(keys, k):
    """(count smaller, count larger) oracle via sorted array binary search."""
    arr = np.sort(np.asarray(keys, dtype=np.float64))
    return int(np.searchsorted(arr, k, side="left")), int(arr.size - np.searchsorted(arr, k, side="right"))


def random_instance(rng, m, n, *, sparse=False, y_regime="distinct", w_regime="random"):
    """One randomized (X, y, w) triple covering the stress regimes used in tests."""
    if sparse:
        dense = rng.standard_normal((n, m)) * (rng.random((n, m)) < 0.3)
    else:
        dense = rng.standard_normal((n, m))
    X = SparseMatrix.from_dense(dense)

    if y_regime == "distinct":
        y = rng.permutation(m).astype(np.float64) + rng.random(m) * 0.5
    elif y_regime == "tied":
        y = rng.integers(0, max(2, m // 3), size=m).astype(np.float64)
    elif y_regime == "two-level":
        y = rng.integers(0, 2, size=m).astype(np.float64)
        if y.min() == y.max():  # force both levels present
            y[0] = 1.0 - y[0]
    else:
        raise ValueError(y_regime)

    if w_regime == "zero":
        w = np.zeros(n)
    elif w_regime == "random":
        w = rng.standard_normal(n)
    elif w_regime == "kink":
        # scale a random direction so that some preference pair sits exactly
        # on the hinge boundary 1 + p_i - p_j = 0
        w = rng.standard_normal(n)
        p = X.tdot(w)
        for _ in range(20):
            i, j = rng.integers(0, m, size=2)
            if y[i] < y[j] and p[j] != p[i]:
                w = w / (p[j] - p[i])
                break
    else:
        raise ValueError(w_regime)
    return X, y, w
