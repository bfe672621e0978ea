"""Prediction and ranking-quality measurement.

The pairwise ranking error is the fraction of preference pairs that the
predicted scores order the wrong way round:

    error = |{(i, j) : y_i < y_j  and  f_i > f_j}| / N.

The comparison on predictions is strict, so tied predictions count as
correct; because that silently flatters constant predictors, the number of
preference pairs with tied predictions is reported alongside.  For
query-grouped data the error is the unweighted mean of the per-group
errors.  The swapped-pair count is computed in O(m log m) with the same
order statistics tree used during training, with the naive O(m^2) count
kept as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDataError
from .ostree import OSTree
from .pairloss import count_preference_pairs, group_partition
from .sparse import SparseMatrix


@dataclass
class RankingErrorReport:
    """Pairwise ranking error with its constituent counts."""

    error: float
    swapped: int
    tied_predictions: int
    n_pairs: int


def predict(X: SparseMatrix, w) -> np.ndarray:
    """Predicted utility scores X^T w."""
    return X.tdot(w)


def _swapped_and_tied(scores, y):
    """(swapped, tied) pair counts via one ascending sweep over the scores.

    Examples are processed in blocks of equal predicted score: each example
    is first checked against the tree of strictly lower-scored examples
    (inserted keys are true scores, so strictly larger keys mark swapped
    pairs), then the preference pairs inside the tied block are tallied,
    then the block is inserted.
    """
    m = len(scores)
    order = np.argsort(scores, kind="stable")
    sl = np.asarray(scores, dtype=np.float64)
    yl = y.tolist()
    tree = OSTree()
    swapped = 0
    tied = 0
    start = 0
    order_l = order.tolist()
    while start < m:
        end = start
        block_score = sl[order_l[start]]
        while end < m and sl[order_l[end]] == block_score:
            end += 1
        block = [yl[order_l[k]] for k in range(start, end)]
        for yv in block:
            swapped += tree.count_larger(yv)
        # preference pairs entirely inside a tied-score block
        t = end - start
        if t > 1:
            _, counts = np.unique(np.asarray(block), return_counts=True)
            tied += t * (t - 1) // 2 - int(np.sum(counts * (counts - 1) // 2))
        for yv in block:
            tree.insert(yv)
        start = end
    return swapped, tied


def _swapped_and_tied_brute(scores, y):
    """O(m^2) oracle for the swapped/tied pair counts."""
    m = len(scores)
    swapped = 0
    tied = 0
    sl = list(scores)
    yl = list(y)
    for i in range(m):
        for j in range(m):
            if yl[i] < yl[j]:
                if sl[i] > sl[j]:
                    swapped += 1
                elif sl[i] == sl[j]:
                    tied += 1
    return swapped, tied


def pairwise_ranking_error(scores, y, method: str = "tree") -> RankingErrorReport:
    """Fraction of swapped preference pairs under the predicted scores."""
    if method not in ("tree", "brute"):
        raise ValueError(f"unknown method {method!r}")
    scores = np.asarray(scores, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if scores.shape != y.shape or scores.ndim != 1:
        raise ValueError(f"score/utility length mismatch: {scores.shape} vs {y.shape}")
    n_pairs = count_preference_pairs(y)
    counter = _swapped_and_tied if method == "tree" else _swapped_and_tied_brute
    swapped, tied = counter(scores, y)
    return RankingErrorReport(swapped / n_pairs, swapped, tied, n_pairs)


def grouped_ranking_error(scores, y, qids, method: str = "tree") -> RankingErrorReport:
    """Mean per-group ranking error over groups that have preference pairs.

    The returned counts (swapped, tied, pairs) are summed over the used
    groups; the error field is the unweighted mean of the per-group errors,
    which is not in general swapped / n_pairs.
    """
    scores = np.asarray(scores, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    groups = group_partition(y, qids)
    active = [(idx, n_g) for _, idx, n_g in groups if n_g >= 1]
    if not active:
        raise DegenerateDataError("every query group has tied utility scores")
    counter = _swapped_and_tied if method == "tree" else _swapped_and_tied_brute
    error_sum = 0.0
    swapped = tied = total = 0
    for idx, n_g in active:
        sw, ti = counter(scores[idx], y[idx])
        error_sum += sw / n_g
        swapped += sw
        tied += ti
        total += n_g
    return RankingErrorReport(error_sum / len(active), swapped, tied, total)
