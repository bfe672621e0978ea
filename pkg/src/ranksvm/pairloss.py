"""Pairwise hinge loss and subgradient for linear ranking SVMs.

The empirical risk is the average hinge loss over all preference pairs,

    R(w) = (1/N) * sum_{y_i < y_j} max(0, 1 + w.x_i - w.x_j),

with N the number of pairs with y_i < y_j.  The naive evaluation is
O(m^2 * s); the fast path here runs in O(ms + m log m) by sorting the
predicted scores once and computing, with two order-statistics-tree sweeps,
the per-example frequencies

    c_i = |{j : y_i < y_j  and  p_i > p_j - 1}|
    d_i = |{j : y_i > y_j  and  p_i < p_j + 1}|

from which the loss is sum_i ((c_i - d_i) p_i + c_i) / N and a subgradient
is X (c - d) / N.  The naive double-loop evaluation is kept as an
independent correctness oracle.

Pairs sitting exactly on the hinge kink (1 + p_i - p_j == 0) contribute
nothing: the strict comparisons above exclude them, and the brute-force
oracle uses the same strict condition, so the two paths select the identical
subgradient.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDataError
from .ostree import OSTree
from .sparse import SparseMatrix


@dataclass
class FrequencyVectors:
    """Margin-violation counts per example, from below (c) and above (d)."""

    c: np.ndarray
    d: np.ndarray


@dataclass
class RiskEvaluation:
    """Loss value, a subgradient, and the pair count it was normalized by."""

    loss: float
    subgradient: np.ndarray
    pair_count: int


def count_preference_pairs(y) -> int:
    """Number of (i, j) pairs with y_i < y_j, computed by sorting.

    Raises :class:`DegenerateDataError` when every score is tied (N = 0),
    since the normalization 1/N is then undefined.
    """
    y = np.asarray(y, dtype=np.float64)
    m = y.shape[0]
    if m < 2:
        raise DegenerateDataError(f"need at least 2 examples, got {m}")
    ys = np.sort(y)
    # subtract within-tie pairs from the full pair count
    boundaries = np.flatnonzero(np.diff(ys) != 0)
    group_sizes = np.diff(np.concatenate(([0], boundaries + 1, [m])))
    ties = int(np.sum(group_sizes * (group_sizes - 1) // 2))
    n_pairs = m * (m - 1) // 2 - ties
    if n_pairs == 0:
        raise DegenerateDataError("all utility scores are equal: no preference pairs")
    return n_pairs


def compute_frequencies(p, y) -> FrequencyVectors:
    """Frequencies (c, d) via the two sorted sweeps with order statistics trees.

    Forward sweep (ascending predicted score): before querying example i,
    every example j with p_i > p_j - 1 has had its true score inserted, so
    counting strictly larger true scores in the tree yields c_i.  The
    backward sweep is symmetric and yields d_i.
    """
    p = np.asarray(p, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if p.shape != y.shape or p.ndim != 1:
        raise ValueError(f"score/utility length mismatch: {p.shape} vs {y.shape}")
    if not (np.all(np.isfinite(p)) and np.all(np.isfinite(y))):
        raise ValueError("scores and utilities must be finite")
    m = p.shape[0]
    c = np.zeros(m, dtype=np.int64)
    d = np.zeros(m, dtype=np.int64)
    if m < 2:
        return FrequencyVectors(c, d)
    order = np.argsort(p, kind="stable").tolist()
    pl = p.tolist()
    yl = y.tolist()

    tree = OSTree()
    j = 0
    for i in range(m):
        oi = order[i]
        pi = pl[oi]
        while j < m and pi > pl[order[j]] - 1.0:
            tree.insert(yl[order[j]])
            j += 1
        c[oi] = tree.count_larger(yl[oi])

    tree = OSTree()
    j = m - 1
    for i in range(m - 1, -1, -1):
        oi = order[i]
        pi = pl[oi]
        # guard written as p_inserted > p_query - 1 (not p_query < p_inserted + 1)
        # so both sweeps evaluate the identical float predicate per pair and
        # agree exactly about pairs sitting on the hinge kink
        while j >= 0 and pl[order[j]] > pi - 1.0:
            tree.insert(yl[order[j]])
            j -= 1
        d[oi] = tree.count_smaller(yl[oi])
    return FrequencyVectors(c, d)


def loss_and_subgradient(X: SparseMatrix, y, w, n_pairs: int) -> RiskEvaluation:
    """O(ms + m log m) evaluation of the pairwise hinge risk and a subgradient."""
    w = np.asarray(w, dtype=np.float64)
    if not np.all(np.isfinite(w)):
        raise ValueError("weight vector must be finite")
    y = np.asarray(y, dtype=np.float64)
    if y.shape[0] != X.m:
        raise ValueError(f"X has {X.m} examples but y has {y.shape[0]}")
    p = X.tdot(w)
    freq = compute_frequencies(p, y)
    g = (freq.c - freq.d).astype(np.float64)
    loss = float(g.dot(p) + freq.c.sum()) / n_pairs
    subgradient = X.dot(g) / n_pairs
    return RiskEvaluation(loss, subgradient, n_pairs)


def _pair_scan(p, y):
    """Explicit double loop over all pairs: returns (c, d, hinge loss sum).

    This is the O(m^2) evaluation that the fast path exists to avoid; it is
    retained, deliberately naive, as the correctness oracle and as the
    quadratic baseline for scaling benchmarks.
    """
    m = len(p)
    pl = list(p)
    yl = list(y)
    c = [0] * m
    d = [0] * m
    loss_sum = 0.0
    for i in range(m):
        yi = yl[i]
        pi = pl[i]
        ci = 0
        for j in range(m):
            if yi < yl[j]:
                pj1 = pl[j] - 1.0
                if pi > pj1:
                    ci += 1
                    d[j] += 1
                    loss_sum += pi - pj1
        c[i] = ci
    return c, d, loss_sum


def brute_force_frequencies(p, y) -> FrequencyVectors:
    """Frequencies (c, d) by explicit pair enumeration (oracle path)."""
    p = np.asarray(p, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if p.shape != y.shape or p.ndim != 1:
        raise ValueError(f"score/utility length mismatch: {p.shape} vs {y.shape}")
    c, d, _ = _pair_scan(p.tolist(), y.tolist())
    return FrequencyVectors(np.asarray(c, dtype=np.int64), np.asarray(d, dtype=np.int64))


def brute_force_loss_and_subgradient(X: SparseMatrix, y, w, n_pairs: int) -> RiskEvaluation:
    """O(m^2) oracle: direct hinge sum over all preference pairs."""
    w = np.asarray(w, dtype=np.float64)
    if not np.all(np.isfinite(w)):
        raise ValueError("weight vector must be finite")
    y = np.asarray(y, dtype=np.float64)
    if y.shape[0] != X.m:
        raise ValueError(f"X has {X.m} examples but y has {y.shape[0]}")
    p = X.tdot(w)
    c, d, loss_sum = _pair_scan(p.tolist(), y.tolist())
    g = np.asarray(c, dtype=np.float64) - np.asarray(d, dtype=np.float64)
    subgradient = X.dot(g) / n_pairs
    return RiskEvaluation(loss_sum / n_pairs, subgradient, n_pairs)


def group_partition(y, qids):
    """Split examples by query group, ascending by group label.

    Returns a list of (label, index array, N_g) with N_g = 0 for groups in
    which every utility score is tied (those groups carry no preference
    pairs and are skipped by the averaged loss).
    """
    y = np.asarray(y, dtype=np.float64)
    qids = np.asarray(qids)
    if qids.shape[0] != y.shape[0]:
        raise ValueError(f"qid length {qids.shape[0]} does not match {y.shape[0]} examples")
    groups = []
    for label in np.unique(qids):
        idx = np.flatnonzero(qids == label)
        try:
            n_g = count_preference_pairs(y[idx]) if idx.size >= 2 else 0
        except DegenerateDataError:
            n_g = 0
        groups.append((label, idx, n_g))
    return groups


def grouped_loss_and_subgradient(
    X: SparseMatrix, y, qids, w, backend: str = "tree", groups=None
) -> RiskEvaluation:
    """Unweighted average of the per-group risk evaluations.

    Groups without preference pairs are skipped; if every group is
    degenerate the loss is undefined and :class:`DegenerateDataError` is
    raised.  The reported pair count is the sum of the per-group counts.
    ``groups`` may carry a precomputed :func:`group_partition` result so the
    training loop only pays the partitioning cost once.
    """
    evaluate = loss_and_subgradient if backend == "tree" else brute_force_loss_and_subgradient
    if backend not in ("tree", "brute"):
        raise ValueError(f"unknown backend {backend!r}")
    y = np.asarray(y, dtype=np.float64)
    if groups is None:
        groups = group_partition(y, qids)
    active = [(idx, n_g) for _, idx, n_g in groups if n_g >= 1]
    if not active:
        raise DegenerateDataError("every query group has tied utility scores")
    loss = 0.0
    subgradient = np.zeros(X.n)
    total_pairs = 0
    for idx, n_g in active:
        ev = evaluate(X.columns(idx), y[idx], w, n_g)
        loss += ev.loss
        subgradient += ev.subgradient
        total_pairs += n_g
    r = len(active)
    return RiskEvaluation(loss / r, subgradient / r, total_pairs)
