"""Bundle-method optimizer for the regularized ranking risk.

The objective J(w) = R(w) + lambda * ||w||^2 is minimized by iteratively
building a piecewise-linear lower bound of the risk out of cutting planes
(a_t, b_t) anchored at the iterates, with

    a_t = subgradient of R at w_{t-1}
    b_t = R(w_{t-1}) - <w_{t-1}, a_t>,

and solving at every step the model problem

    min_w  max_i { <w, a_i> + b_i } + lambda * ||w||^2

through its dual: maximize  alpha.b - alpha.G.alpha / (4 lambda)  over the
simplex, with G the Gram matrix of the plane normals, and primal recovery
w = -sum_i alpha_i a_i / (2 lambda).  The dual is solved by pairwise
coordinate exchange (SMO style): repeatedly move weight from the plane with
the smallest dual gradient onto the one with the largest, with an exact 1-d
line step, until the duality gap vanishes.

The gap eps_t = J(w_b) - J_t(w_t) between the best observed objective and
the model optimum certifies suboptimality and drives termination.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import pairloss
from .data import Dataset, validate
from .errors import SolverFailureError


@dataclass
class CuttingPlane:
    """Affine global lower bound <w, a> + b <= R(w)."""

    a: np.ndarray
    b: float


@dataclass
class TraceRow:
    """One optimizer iteration: objective values, certified gap, wall time."""

    iteration: int
    J_wt: float
    Jt_wt: float
    J_wb: float
    eps_t: float
    seconds: float


@dataclass
class RankModel:
    """Learned weight vector plus training metadata."""

    w: np.ndarray
    lam: float
    epsilon: float
    converged: bool
    iterations: int
    trace: list[TraceRow] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.w.shape[0]


class CuttingPlaneModel:
    """Accumulated planes, their Gram matrix, and the last dual weights.

    ``include_zero_plane`` seeds the model with the plane (0, 0), a valid
    lower bound because the risk is nonnegative; it keeps the model bound
    nonnegative and stabilizes the first iterations.
    """

    def __init__(self, n: int, include_zero_plane: bool = False):
        self.n = n
        self.planes: list[CuttingPlane] = []
        self.gram = np.zeros((0, 0))
        self.alpha = np.zeros(0)
        if include_zero_plane:
            self.add_plane(np.zeros(n), 0.0)

    @property
    def t(self) -> int:
        return len(self.planes)

    def add_plane(self, a: np.ndarray, b: float) -> None:
        a = np.asarray(a, dtype=np.float64)
        if a.shape != (self.n,):
            raise ValueError(f"plane normal has shape {a.shape}, expected ({self.n},)")
        cross = np.array([p.a.dot(a) for p in self.planes])
        t = self.t
        gram = np.empty((t + 1, t + 1))
        gram[:t, :t] = self.gram
        gram[t, :t] = cross
        gram[:t, t] = cross
        gram[t, t] = a.dot(a)
        self.gram = gram
        self.planes.append(CuttingPlane(a, float(b)))
        self.alpha = np.concatenate((self.alpha, [0.0]))

    def offsets(self) -> np.ndarray:
        return np.array([p.b for p in self.planes])

    def combine(self, alpha: np.ndarray) -> np.ndarray:
        """Convex combination of the plane normals, sum_i alpha_i a_i."""
        w = np.zeros(self.n)
        for weight, plane in zip(alpha, self.planes):
            if weight != 0.0:
                w += weight * plane.a
        return w


def solve_model(
    model: CuttingPlaneModel,
    lam: float,
    gap_tol: float = 1e-12,
    max_steps: int = 100_000,
):
    """Minimize the cutting-plane model objective; returns (w_t, J_t value).

    The dual objective D(alpha) = alpha.b - alpha.G.alpha / (4 lambda) is
    maximized over the simplex by SMO-style pairwise weight exchange; its
    duality gap max_i g_i - alpha.g (with g the dual gradient) is driven
    below ``gap_tol * max(1, |D|)``.
    """
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    t = model.t
    if t < 1:
        raise ValueError("model holds no cutting planes")
    b = model.offsets()
    G = model.gram
    alpha = model.alpha.copy()
    s = alpha.sum()
    if s <= 0:
        alpha = np.zeros(t)
        alpha[int(np.argmax(b))] = 1.0
    else:
        alpha /= s

    q = G.dot(alpha)
    inv2lam = 1.0 / (2.0 * lam)
    for _ in range(max_steps):
        g = b - inv2lam * q
        dual = alpha.dot(b) - alpha.dot(q) / (4.0 * lam)
        gap = g.max() - alpha.dot(g)
        if gap <= gap_tol * max(1.0, abs(dual)):
            break
        u = int(np.argmax(g))
        positive = np.flatnonzero(alpha > 0)
        v = int(positive[np.argmin(g[positive])])
        if u == v:
            break
        kappa = inv2lam * (G[u, u] - 2.0 * G[u, v] + G[v, v])
        if kappa > 0:
            step = min((g[u] - g[v]) / kappa, alpha[v])
        else:
            step = alpha[v]
        if step <= 0:
            break
        alpha[u] += step
        alpha[v] -= step
        q += step * (G[:, u] - G[:, v])
    else:
        g = b - inv2lam * q
        dual = alpha.dot(b) - alpha.dot(q) / (4.0 * lam)
        gap = g.max() - alpha.dot(g)
        if gap > gap_tol * max(1.0, abs(dual)):
            raise SolverFailureError(
                f"dual QP did not converge in {max_steps} steps (gap {gap:.3e})", gap=gap
            )

    model.alpha = alpha
    w = -inv2lam * model.combine(alpha)
    dual = alpha.dot(b) - alpha.dot(q) / (4.0 * lam)
    return w, float(dual)


def _make_risk(data: Dataset, backend: str):
    """Risk evaluator closure honoring query grouping and the chosen backend."""
    if backend not in ("tree", "brute"):
        raise ValueError(f"unknown backend {backend!r}")
    if data.qid is not None:
        groups = data.groups

        def risk(w):
            return pairloss.grouped_loss_and_subgradient(
                data.X, data.y, data.qid, w, backend=backend, groups=groups
            )

    else:
        n_pairs = data.n_pairs
        evaluate = (
            pairloss.loss_and_subgradient
            if backend == "tree"
            else pairloss.brute_force_loss_and_subgradient
        )

        def risk(w):
            return evaluate(data.X, data.y, w, n_pairs)

    return risk


def objective(data: Dataset, w, lam: float, backend: str = "tree") -> float:
    """Regularized risk J(w) = R(w) + lambda * ||w||^2."""
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if data.n_pairs is None:
        validate(data)
    w = np.asarray(w, dtype=np.float64)
    return _make_risk(data, backend)(w).loss + lam * float(w.dot(w))


def train(
    data: Dataset,
    lam: float,
    epsilon: float = 1e-3,
    w0=None,
    max_iters: int = 1000,
    backend: str = "tree",
) -> RankModel:
    """Bundle-method training loop; returns the best iterate seen.

    Every iteration cuts a new plane at the previous iterate, re-solves the
    model problem, evaluates the true objective at the new iterate (this
    evaluation also supplies the next plane), keeps the best iterate, and
    stops once the certified gap drops below ``epsilon``.  Failure to
    converge within ``max_iters`` is reported through the ``converged``
    flag, not raised; the trace carries the residual gap.
    """
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if data.n_pairs is None:
        validate(data)
    n = data.n
    w_prev = np.zeros(n) if w0 is None else np.asarray(w0, dtype=np.float64).copy()
    if w_prev.shape != (n,):
        raise ValueError(f"w0 has shape {w_prev.shape}, expected ({n},)")

    risk = _make_risk(data, backend)
    evaluation = risk(w_prev)
    w_b = w_prev.copy()
    J_b = evaluation.loss + lam * float(w_prev.dot(w_prev))

    model = CuttingPlaneModel(n, include_zero_plane=True)
    trace: list[TraceRow] = []
    converged = False
    for t in range(1, max_iters + 1):
        tic = time.perf_counter()
        a_t = evaluation.subgradient
        b_t = evaluation.loss - float(w_prev.dot(a_t))
        model.add_plane(a_t, b_t)
        # Solve the model problem tighter than the documented 1e-12 floor so
        # inner-QP slack does not accumulate across bundle iterations.
        w_t, Jt_wt = solve_model(model, lam, gap_tol=1e-14)
        evaluation = risk(w_t)
        J_wt = evaluation.loss + lam * float(w_t.dot(w_t))
        if J_wt < J_b:
            J_b = J_wt
            w_b = w_t.copy()
        eps_t = J_b - Jt_wt
        trace.append(TraceRow(t, J_wt, Jt_wt, J_b, eps_t, time.perf_counter() - tic))
        w_prev = w_t
        if eps_t < epsilon:
            converged = True
            break

    return RankModel(
        w=w_b,
        lam=lam,
        epsilon=epsilon,
        converged=converged,
        iterations=len(trace),
        trace=trace,
    )
