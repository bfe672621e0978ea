"""Acceptance suite: one test per release criterion, each printing PASS/FAIL.

Run with ``pytest tests/test_acceptance.py -v -s``.
"""

import contextlib

import numpy as np
import pytest
from scipy import stats

import ranksvm as rs
from ranksvm.cli import run_benchmark

from helpers import audit_tree, random_instance, sorted_array_counts


@contextlib.contextmanager
def criterion(num, name):
    try:
        yield
    except BaseException:
        print(f"[criterion {num:2d}] {name}: FAIL")
        raise
    print(f"[criterion {num:2d}] {name}: PASS")


def _instances(rng, total_per_m=(90, 60, 60, 22)):
    """Randomized (X, y, w, N) instances spanning the stress regimes."""
    sizes = (2, 10, 100, 1000)
    y_regimes = ("distinct", "tied", "two-level")
    w_regimes = ("zero", "random", "kink")
    out = []
    for m, count in zip(sizes, total_per_m):
        n = 5 if m <= 100 else 8
        for k in range(count):
            X, y, w = random_instance(
                rng,
                m,
                n,
                sparse=k % 2 == 0,
                y_regime=y_regimes[k % 3],
                w_regime=w_regimes[(k // 3) % 3],
            )
            try:
                n_pairs = rs.count_preference_pairs(y)
            except rs.DegenerateDataError:
                continue
            out.append((X, y, w, n_pairs))
    return out


def test_criterion_1_oracle_equivalence():
    with criterion(1, "oracle equivalence tree vs brute"):
        rng = np.random.default_rng(1001)
        instances = _instances(rng)
        assert len(instances) >= 200
        for X, y, w, n_pairs in instances:
            fast = rs.loss_and_subgradient(X, y, w, n_pairs)
            brute = rs.brute_force_loss_and_subgradient(X, y, w, n_pairs)
            assert fast.loss == pytest.approx(brute.loss, rel=1e-9, abs=1e-12)
            np.testing.assert_allclose(
                fast.subgradient, brute.subgradient, rtol=1e-9, atol=1e-12
            )
            p = X.tdot(w)
            ff = rs.compute_frequencies(p, y)
            fb = rs.brute_force_frequencies(p, y)
            assert ff.c.tolist() == fb.c.tolist()
            assert ff.d.tolist() == fb.d.tolist()


def test_criterion_2_loss_identity():
    with criterion(2, "frequency-form loss equals direct pair sum"):
        rng = np.random.default_rng(1002)
        for X, y, w, n_pairs in _instances(rng, total_per_m=(40, 40, 40, 10)):
            p = X.tdot(w)
            freq = rs.compute_frequencies(p, y)
            identity = float((freq.c - freq.d).dot(p) + freq.c.sum()) / n_pairs
            direct = rs.brute_force_loss_and_subgradient(X, y, w, n_pairs).loss
            assert identity == pytest.approx(direct, rel=1e-9, abs=1e-12)


def test_criterion_3_gradient_check():
    with criterion(3, "finite differences match subgradient"):
        rng = np.random.default_rng(1003)
        checked = 0
        while checked < 50:
            m, n = int(rng.integers(5, 30)), int(rng.integers(2, 6))
            X, y, w = random_instance(rng, m, n)
            try:
                n_pairs = rs.count_preference_pairs(y)
            except rs.DegenerateDataError:
                continue
            p = X.tdot(w)
            margins = [
                1 + p[i] - p[j] for i in range(m) for j in range(m) if y[i] < y[j]
            ]
            if min(abs(v) for v in margins) < 1e-3:
                continue
            grad = rs.loss_and_subgradient(X, y, w, n_pairs).subgradient
            h = 1e-6
            for k in range(n):
                e = np.zeros(n)
                e[k] = h
                fd = (
                    rs.loss_and_subgradient(X, y, w + e, n_pairs).loss
                    - rs.loss_and_subgradient(X, y, w - e, n_pairs).loss
                ) / (2 * h)
                assert fd == pytest.approx(grad[k], rel=1e-4, abs=1e-6)
            checked += 1


def test_criterion_4_bmrm_invariants():
    with criterion(4, "bundle optimizer invariants and backend agreement"):
        rng = np.random.default_rng(1004)
        lambdas = (1e-3, 1e-1, 10.0)
        for run in range(20):
            m = int(rng.integers(20, 301)) if run % 2 else int(rng.integers(300, 501))
            n = int(rng.integers(3, 9))
            y_regime = ("distinct", "tied")[run % 2]
            X, y, _ = random_instance(rng, m, n, y_regime=y_regime)
            ds = rs.validate(rs.Dataset(X, y))
            lam = lambdas[run % 3]
            mt = rs.train(ds, lam=lam, epsilon=1e-3, max_iters=1000)
            assert mt.converged, f"run {run}: no convergence within 1000 iterations"
            Jt = [row.Jt_wt for row in mt.trace]
            Jb = [row.J_wb for row in mt.trace]
            assert all(b >= a - 1e-9 for a, b in zip(Jt, Jt[1:]))
            assert all(b <= a + 1e-9 for a, b in zip(Jb, Jb[1:]))
            assert all(row.eps_t >= -1e-9 for row in mt.trace)
            mb = rs.train(ds, lam=lam, epsilon=1e-3, max_iters=1000, backend="brute")
            np.testing.assert_allclose(mt.w, mb.w, rtol=1e-9, atol=1e-12)


def test_criterion_5_one_dimensional_global_optimum():
    with criterion(5, "1-d optimum matches dense grid search"):
        cases = [
            ([0.0, 0.5, 2.0], [1.0, 2.0, 3.0], 0.1),
            ([1.0, -1.0], [0.0, 1.0], 0.5),
            ([0.0, 1.0, 2.0, 3.0], [4.0, 3.0, 2.0, 1.0], 0.2),
            ([-2.0, 0.0, 0.5, 1.0, 3.0], [1.0, 1.0, 2.0, 3.0, 3.0], 0.05),
            ([0.3, 0.1, 0.4, 0.15], [1.0, 2.0, 3.0, 4.0], 1.0),
        ]
        for x_row, y, lam in cases:
            ds = rs.validate(
                rs.Dataset(rs.SparseMatrix.from_dense([x_row]), np.asarray(y))
            )
            model = rs.train(ds, lam=lam, epsilon=1e-4)
            ws = np.arange(-10.0, 10.0, 1e-4)
            J = lam * ws**2
            for i in range(len(y)):
                for j in range(len(y)):
                    if y[i] < y[j]:
                        J += np.maximum(0.0, 1.0 + ws * x_row[i] - ws * x_row[j]) / ds.n_pairs
            assert rs.objective(ds, model.w, lam) == pytest.approx(J.min(), abs=1e-3)


def test_criterion_6_scaling_slopes():
    with criterion(6, "log-log scaling: tree <= 1.3, brute >= 1.8, 10x at 8192"):
        kw = dict(kind="sparse-similarity", n=50000, sparsity=0.001, repeats=2, seed=77)
        tree_rows, tree_slopes = run_benchmark(
            [2**k for k in range(12, 18)], ["tree"], **kw
        )
        brute_rows, brute_slopes = run_benchmark(
            [2**k for k in range(10, 14)], ["brute"], **kw
        )
        print(f"  tree slope = {tree_slopes['tree']:.3f}, "
              f"brute slope = {brute_slopes['brute']:.3f}")
        assert tree_slopes["tree"] <= 1.3
        assert brute_slopes["brute"] >= 1.8
        tree_8192 = next(r[2] for r in tree_rows if r[0] == 8192)
        brute_8192 = next(r[2] for r in brute_rows if r[0] == 8192)
        print(f"  at m=8192: tree {tree_8192:.3f}s, brute {brute_8192:.3f}s "
              f"(x{brute_8192 / tree_8192:.1f})")
        assert brute_8192 >= 10 * tree_8192


def test_criterion_7_bipartite_auc_consistency():
    with criterion(7, "two-level ranking error equals 1 - AUC exactly"):
        rng = np.random.default_rng(1007)
        done = 0
        while done < 50:
            m = int(rng.integers(4, 150))
            y = rng.integers(0, 2, size=m).astype(float)
            if y.min() == y.max():
                continue
            scores = rng.standard_normal(m)
            assert len(np.unique(scores)) == m  # tie-free predictions
            report = rs.pairwise_ranking_error(scores, y)
            n1 = int(y.sum())
            n0 = m - n1
            ranks = stats.rankdata(scores)
            wilcoxon_auc = (ranks[y == 1].sum() - n1 * (n1 + 1) / 2) / (n0 * n1)
            assert report.swapped == round((1 - wilcoxon_auc) * n0 * n1)
            assert report.error == pytest.approx(1 - wilcoxon_auc, abs=1e-12)
            done += 1


def test_criterion_8_grouped_correctness():
    with criterion(8, "grouped loss/subgradient/error equal per-group brute means"):
        rng = np.random.default_rng(1008)
        done = 0
        while done < 25:
            m = int(rng.integers(10, 80))
            n = int(rng.integers(2, 6))
            X, y, w = random_instance(rng, m, n, y_regime="tied")
            qids = rng.integers(0, 4, size=m)
            groups = rs.group_partition(y, qids)
            active = [(idx, n_g) for _, idx, n_g in groups if n_g >= 1]
            if not active:
                continue
            losses, grads, errors = [], [], []
            scores = X.tdot(w)
            for idx, n_g in active:
                ev = rs.brute_force_loss_and_subgradient(X.columns(idx), y[idx], w, n_g)
                losses.append(ev.loss)
                grads.append(ev.subgradient)
                errors.append(
                    rs.pairwise_ranking_error(scores[idx], y[idx], method="brute").error
                )
            got = rs.grouped_loss_and_subgradient(X, y, qids, w)
            assert got.loss == pytest.approx(np.mean(losses), rel=1e-9, abs=1e-12)
            np.testing.assert_allclose(
                got.subgradient, np.mean(grads, axis=0), rtol=1e-9, atol=1e-12
            )
            rep = rs.grouped_ranking_error(scores, y, qids)
            assert rep.error == pytest.approx(np.mean(errors), rel=1e-9, abs=1e-12)
            done += 1


def test_criterion_9_tree_structural_audit():
    with criterion(9, "100k insertions with structural audits and count oracle"):
        rng = np.random.default_rng(1009)
        tree = rs.OSTree()
        keys = []
        # duplicate-heavy stream mixed with continuous keys
        pool = np.concatenate(
            [
                rng.integers(-300, 300, size=60_000).astype(float),
                np.round(rng.standard_normal(20_000), 2),
                rng.standard_normal(20_000),
            ]
        )
        rng.shuffle(pool)
        for i, k in enumerate(pool.tolist(), start=1):
            tree.insert(k)
            keys.append(k)
            if i % 5000 == 0:
                audit_tree(tree)
                for q in rng.uniform(-350, 350, size=20):
                    smaller, larger = sorted_array_counts(keys, q)
                    assert tree.count_smaller(q) == smaller
                    assert tree.count_larger(q) == larger
        assert tree.total == 100_000
        audit_tree(tree)
        for q in np.unique(rng.choice(pool, size=200)):
            smaller, larger = sorted_array_counts(keys, q)
            assert tree.count_smaller(float(q)) == smaller
            assert tree.count_larger(float(q)) == larger


def test_criterion_10_end_to_end_generalization():
    with criterion(10, "noise-free regression generalization error <= 0.02"):
        # single generator call so train and test share the hidden scorer
        full = rs.generate_synthetic("dense-regression", 3000, 8, seed=5)
        train_idx = np.arange(2000)
        test_idx = np.arange(2000, 3000)
        train_ds = rs.validate(
            rs.Dataset(full.X.columns(train_idx), full.y[train_idx])
        )
        model = rs.train(train_ds, lam=1e-3, epsilon=1e-3)
        assert model.converged
        scores = rs.predict(full.X.columns(test_idx), model.w)
        report = rs.pairwise_ranking_error(scores, full.y[test_idx])
        print(f"  test ranking error = {report.error:.5f}")
        assert report.error <= 0.02
