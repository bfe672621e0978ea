"""Dual-view sparse feature matrix.

The feature matrix is n x m with one *column* per example.  Score
computation (p = X^T w) wants fast column access while the subgradient
product X (c - d) wants fast row access, so by default both a CSC and a CSR
copy are kept.  The memory-constrained single-view mode keeps only the CSC
copy and pays the slower row product.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp


class SparseMatrix:
    """n x m sparse matrix with columns as examples, stored as CSC (+ CSR)."""

    def __init__(self, matrix, dual_view: bool = True):
        csc = sp.csc_matrix(matrix)
        if not np.all(np.isfinite(csc.data)):
            raise ValueError("matrix entries must be finite")
        csc.sum_duplicates()
        csc.sort_indices()
        self._csc = csc
        self._csr = csc.tocsr() if dual_view else None
        self.dual_view = dual_view

    @classmethod
    def from_dense(cls, array, dual_view: bool = True) -> "SparseMatrix":
        return cls(sp.csc_matrix(np.asarray(array, dtype=np.float64)), dual_view)

    @classmethod
    def from_coo(cls, rows, cols, values, shape, dual_view: bool = True) -> "SparseMatrix":
        coo = sp.coo_matrix((values, (rows, cols)), shape=shape, dtype=np.float64)
        return cls(coo, dual_view)

    @property
    def n(self) -> int:
        return self._csc.shape[0]

    @property
    def m(self) -> int:
        return self._csc.shape[1]

    @property
    def nnz(self) -> int:
        return self._csc.nnz

    def tdot(self, w: np.ndarray) -> np.ndarray:
        """Column-view product X^T w, the vector of predicted scores (length m)."""
        w = np.asarray(w, dtype=np.float64)
        if w.shape != (self.n,):
            raise ValueError(f"weight vector has length {w.shape}, expected ({self.n},)")
        return self._csc.T.dot(w)

    def dot(self, v: np.ndarray) -> np.ndarray:
        """Row-view product X v (length n); used for the subgradient combination."""
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.m,):
            raise ValueError(f"vector has length {v.shape}, expected ({self.m},)")
        if self._csr is not None:
            return self._csr.dot(v)
        return self._csc.dot(v)

    def columns(self, idx) -> "SparseMatrix":
        """Submatrix of the selected example columns (same feature space)."""
        return SparseMatrix(self._csc[:, np.asarray(idx)], dual_view=self.dual_view)

    def column(self, j: int) -> np.ndarray:
        """Single example as a dense length-n vector."""
        return self._csc[:, [j]].toarray().ravel()

    def toarray(self) -> np.ndarray:
        return self._csc.toarray()

    def entries(self):
        """(row, col, value) triplets in column-major order, for serialization."""
        coo = self._csc.tocoo()
        order = np.lexsort((coo.row, coo.col))
        return coo.row[order], coo.col[order], coo.data[order]
