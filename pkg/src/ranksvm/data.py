"""Dataset ingestion, validation, and synthetic data generation.

Input format is the svmlight text format with optional query ids::

    <target> [qid:<int>] <index>:<value> ...  # comment

Targets are real-valued utility scores, feature indices are 1-based and
strictly increasing within a line.  The feature dimension is inferred as
the largest index seen unless an explicit ``dims`` override is given (the
override is what keeps train and test files in the same index space).
"""

from __future__ import annotations

import io
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateDataError, SvmlightParseError
from .pairloss import count_preference_pairs, group_partition
from .sparse import SparseMatrix


@dataclass
class Dataset:
    """Feature matrix (columns = examples), utility scores, optional query ids."""

    X: SparseMatrix
    y: np.ndarray
    qid: np.ndarray | None = None
    #: preference pair count, filled in by validate(); for grouped data this
    #: is the sum over nondegenerate groups
    n_pairs: int | None = None
    #: group_partition() result cached by validate() when qid is present
    groups: list = field(default=None, repr=False)

    @property
    def m(self) -> int:
        return self.X.m

    @property
    def n(self) -> int:
        return self.X.n


def validate(dataset: Dataset) -> Dataset:
    """Check consistency and cache the preference-pair count(s).

    Degenerate query groups (all scores tied) are skipped with a warning;
    a dataset with no usable pairs anywhere raises
    :class:`DegenerateDataError`.
    """
    X, y = dataset.X, np.asarray(dataset.y, dtype=np.float64)
    if y.ndim != 1 or y.shape[0] != X.m:
        raise ValueError(f"X has {X.m} examples but y has shape {y.shape}")
    if X.m == 0:
        raise DegenerateDataError("empty dataset")
    if not np.all(np.isfinite(y)):
        raise ValueError("utility scores must be finite")
    dataset.y = y
    if dataset.qid is None:
        dataset.n_pairs = count_preference_pairs(y)
        dataset.groups = None
    else:
        groups = group_partition(y, dataset.qid)
        for label, _, n_g in groups:
            if n_g == 0:
                warnings.warn(
                    f"query group {label!r} has no preference pairs and will be skipped",
                    stacklevel=2,
                )
        total = sum(n_g for _, _, n_g in groups)
        if total == 0:
            raise DegenerateDataError("every query group has tied utility scores")
        dataset.n_pairs = total
        dataset.groups = groups
    return dataset


def parse_svmlight(source, dims: int | None = None) -> Dataset:
    """Parse svmlight text into a Dataset.

    ``source`` may be a file-like object, an iterable of lines, or a string
    holding the text itself (use :func:`load_svmlight` for paths).
    """
    stream = io.StringIO(source) if isinstance(source, str) else source

    targets: list[float] = []
    qids: list[int] = []
    saw_qid = False
    rows: list[int] = []
    cols: list[int] = []
    vals: list[float] = []
    max_index = 0
    m = 0
    for lineno, raw in enumerate(stream, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            target = float(tokens[0])
        except ValueError:
            raise SvmlightParseError(f"malformed target {tokens[0]!r}", lineno) from None
        if not np.isfinite(target):
            raise SvmlightParseError(f"non-finite target {tokens[0]!r}", lineno)
        feats = tokens[1:]
        qid = None
        if feats and feats[0].startswith("qid:"):
            try:
                qid = int(feats[0][4:])
            except ValueError:
                raise SvmlightParseError(f"malformed qid token {feats[0]!r}", lineno) from None
            feats = feats[1:]
        if m == 0:
            saw_qid = qid is not None
        elif (qid is not None) != saw_qid:
            raise SvmlightParseError("inconsistent qid presence across lines", lineno)
        prev_index = 0
        for tok in feats:
            idx_s, _, val_s = tok.partition(":")
            try:
                index = int(idx_s)
                value = float(val_s)
            except ValueError:
                raise SvmlightParseError(f"malformed feature token {tok!r}", lineno) from None
            if index < 1:
                raise SvmlightParseError(f"feature indices are 1-based, got {index}", lineno)
            if index <= prev_index:
                raise SvmlightParseError(
                    f"feature indices must be strictly increasing ({index} after {prev_index})",
                    lineno,
                )
            if not np.isfinite(value):
                raise SvmlightParseError(f"non-finite feature value in {tok!r}", lineno)
            prev_index = index
            rows.append(index - 1)
            cols.append(m)
            vals.append(value)
            if index > max_index:
                max_index = index
        targets.append(target)
        if qid is not None:
            qids.append(qid)
        m += 1
    if hasattr(stream, "close") and stream is not source:
        stream.close()

    n = max_index if dims is None else dims
    if dims is not None and max_index > dims:
        raise SvmlightParseError(
            f"feature index {max_index} exceeds declared dimension {dims}", 0
        )
    X = SparseMatrix.from_coo(rows, cols, vals, shape=(n, m))
    qid_arr = np.asarray(qids, dtype=np.int64) if saw_qid else None
    return Dataset(X=X, y=np.asarray(targets, dtype=np.float64), qid=qid_arr)


def load_svmlight(path, dims: int | None = None) -> Dataset:
    """Parse an svmlight file from disk."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_svmlight(fh, dims=dims)


def write_svmlight(dataset: Dataset, stream) -> None:
    """Write a Dataset in svmlight format; floats use repr so re-parsing is exact."""
    close = False
    if isinstance(stream, str):
        stream = open(stream, "w", encoding="utf-8")
        close = True
    rows, cols, vals = dataset.X.entries()
    per_example: list[list[str]] = [[] for _ in range(dataset.X.m)]
    for r, c, v in zip(rows, cols, vals):
        per_example[int(c)].append(f"{int(r) + 1}:{float(v)!r}")
    for i in range(dataset.X.m):
        parts = [repr(float(dataset.y[i]))]
        if dataset.qid is not None:
            parts.append(f"qid:{int(dataset.qid[i])}")
        parts.extend(per_example[i])
        stream.write(" ".join(parts) + "\n")
    if close:
        stream.close()


def generate_synthetic(
    kind: str,
    m: int,
    n: int,
    sparsity: float = 1.0,
    seed: int = 0,
    noise: float = 0.0,
) -> Dataset:
    """Deterministic synthetic datasets shaped like the two benchmark regimes.

    ``dense-regression``: dense standard-normal features with utility scores
    from a hidden linear model plus optional gaussian noise (low-dimensional,
    regression-style scores).

    ``sparse-similarity``: nonnegative sparse features with expected
    ``sparsity * n`` nonzeros per example; a random target example is drawn
    and removed, and each utility score is the dot product with the target.
    A handful of always-present features guarantees continuous scores, so
    nearly all scores are distinct (the r ~ m stress regime).
    """
    if m < 2 or n < 1:
        raise ValueError(f"need m >= 2 and n >= 1, got m={m}, n={n}")
    if not 0.0 < sparsity <= 1.0:
        raise ValueError(f"sparsity must be in (0, 1], got {sparsity}")
    rng = np.random.default_rng(seed)

    if kind == "dense-regression":
        X = rng.standard_normal((n, m))
        v = rng.standard_normal(n)
        y = v.dot(X)
        if noise:
            y = y + noise * rng.standard_normal(m)
        return Dataset(X=SparseMatrix.from_dense(X), y=y)

    if kind == "sparse-similarity":
        target_nnz = sparsity * n
        # a small dense block keeps dot products continuous-valued even when
        # the random tails of two examples never overlap
        k0 = max(1, min(8, int(target_nnz // 2), n))
        tail_features = n - k0
        p_tail = min(1.0, (target_nnz - k0) / tail_features) if tail_features else 0.0
        p_tail = max(p_tail, 0.0)
        rows: list[np.ndarray] = []
        cols: list[np.ndarray] = []
        vals: list[np.ndarray] = []
        total = m + 1
        for j in range(total):
            count = rng.binomial(tail_features, p_tail) if p_tail > 0 else 0
            tail_idx = rng.choice(tail_features, size=count, replace=False) + k0
            idx = np.concatenate((np.arange(k0), np.sort(tail_idx)))
            rows.append(idx)
            cols.append(np.full(idx.size, j, dtype=np.int64))
            vals.append(rng.random(idx.size))
        X_full = SparseMatrix.from_coo(
            np.concatenate(rows), np.concatenate(cols), np.concatenate(vals), shape=(n, total)
        )
        target_col = int(rng.integers(total))
        target = X_full.column(target_col)
        y_full = X_full.tdot(target)
        keep = np.setdiff1d(np.arange(total), [target_col])
        return Dataset(X=X_full.columns(keep), y=y_full[keep])

    raise ValueError(f"unknown synthetic dataset kind {kind!r}")
