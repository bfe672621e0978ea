"""Order statistics tree: a red-black tree augmented with subtree sizes.

Each node stores one distinct key together with a multiplicity counter
(``nodesize``), so the tree holds a multiset of real keys in at most ``r``
nodes, where ``r`` is the number of distinct keys.  The ``size`` attribute of
a node is the total multiplicity stored in its subtree::

    size(x) = size(left(x)) + size(right(x)) + nodesize(x)

which makes rank counting queries (how many inserted keys are strictly
smaller / larger than a given value) answerable in O(log r) by a single
root-to-leaf walk.  Only insertion and the two counting queries are
supported; the training loop builds a fresh tree per sweep and never
deletes.
"""

from __future__ import annotations

import math

RED = True
BLACK = False


class _Node:
    __slots__ = ("key", "nodesize", "size", "color", "left", "right", "parent")

    def __init__(self, key, nil):
        self.key = key
        self.nodesize = 1
        self.size = 1
        self.color = RED
        self.left = nil
        self.right = nil
        self.parent = nil


class OSTree:
    """Duplicate-collapsing order statistics tree over finite float keys."""

    __slots__ = ("_nil", "_root", "total", "distinct")

    def __init__(self):
        nil = _Node.__new__(_Node)
        nil.key = None
        nil.nodesize = 0
        nil.size = 0
        nil.color = BLACK
        nil.left = nil.right = nil.parent = nil
        self._nil = nil
        self._root = nil
        #: number of inserted keys, counted with multiplicity
        self.total = 0
        #: number of nodes (distinct keys)
        self.distinct = 0

    def __len__(self):
        return self.total

    def insert(self, key: float) -> None:
        """Insert ``key`` into the multiset.

        A repeated key only bumps the multiplicity of its existing node, so
        the node count stays bounded by the number of distinct keys.
        """
        if not math.isfinite(key):
            raise ValueError(f"tree keys must be finite, got {key!r}")
        nil = self._nil
        parent = nil
        cur = self._root
        # the insert always lands, so subtree sizes can be bumped on the way
        # down; rotations in the fixup repair sizes locally
        while cur is not nil:
            cur.size += 1
            parent = cur
            ck = cur.key
            if key < ck:
                cur = cur.left
            elif key > ck:
                cur = cur.right
            else:
                cur.nodesize += 1
                self.total += 1
                return
        node = _Node(key, nil)
        node.parent = parent
        if parent is nil:
            self._root = node
        elif key < parent.key:
            parent.left = node
        else:
            parent.right = node
        self.total += 1
        self.distinct += 1
        self._insert_fixup(node)

    def count_smaller(self, k: float) -> int:
        """Number of inserted keys strictly smaller than ``k`` (with multiplicity)."""
        if not math.isfinite(k):
            raise ValueError(f"query key must be finite, got {k!r}")
        nil = self._nil
        x = self._root
        count = 0
        while x is not nil:
            if x.key < k:
                count += x.left.size + x.nodesize
                x = x.right
            else:
                x = x.left
        return count

    def count_larger(self, k: float) -> int:
        """Number of inserted keys strictly larger than ``k`` (with multiplicity)."""
        if not math.isfinite(k):
            raise ValueError(f"query key must be finite, got {k!r}")
        nil = self._nil
        x = self._root
        count = 0
        while x is not nil:
            if x.key > k:
                count += x.right.size + x.nodesize
                x = x.left
            else:
                x = x.right
        return count

    def multiplicity(self, k: float) -> int:
        """How many times ``k`` has been inserted."""
        if not math.isfinite(k):
            raise ValueError(f"query key must be finite, got {k!r}")
        nil = self._nil
        x = self._root
        while x is not nil:
            if k < x.key:
                x = x.left
            elif k > x.key:
                x = x.right
            else:
                return x.nodesize
        return 0

    # -- red-black machinery -------------------------------------------------

    def _rotate_left(self, x):
        nil = self._nil
        y = x.right
        x.right = y.left
        if y.left is not nil:
            y.left.parent = x
        y.parent = x.parent
        if x.parent is nil:
            self._root = y
        elif x is x.parent.left:
            x.parent.left = y
        else:
            x.parent.right = y
        y.left = x
        x.parent = y
        # rotation keeps the subtree's total size at y; recompute x bottom-up
        y.size = x.size
        x.size = x.left.size + x.right.size + x.nodesize

    def _rotate_right(self, x):
        nil = self._nil
        y = x.left
        x.left = y.right
        if y.right is not nil:
            y.right.parent = x
        y.parent = x.parent
        if x.parent is nil:
            self._root = y
        elif x is x.parent.right:
            x.parent.right = y
        else:
            x.parent.left = y
        y.right = x
        x.parent = y
        y.size = x.size
        x.size = x.left.size + x.right.size + x.nodesize

    def _insert_fixup(self, z):
        while z.parent.color is RED:
            gp = z.parent.parent
            if z.parent is gp.left:
                uncle = gp.right
                if uncle.color is RED:
                    z.parent.color = BLACK
                    uncle.color = BLACK
                    gp.color = RED
                    z = gp
                else:
                    if z is z.parent.right:
                        z = z.parent
                        self._rotate_left(z)
                    z.parent.color = BLACK
                    z.parent.parent.color = RED
                    self._rotate_right(z.parent.parent)
            else:
                uncle = gp.left
                if uncle.color is RED:
                    z.parent.color = BLACK
                    uncle.color = BLACK
                    gp.color = RED
                    z = gp
                else:
                    if z is z.parent.left:
                        z = z.parent
                        self._rotate_right(z)
                    z.parent.color = BLACK
                    z.parent.parent.color = RED
                    self._rotate_left(z.parent.parent)
        self._root.color = BLACK
