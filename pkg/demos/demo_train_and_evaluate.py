"""Generate a synthetic ranking problem, train, and inspect the result.

Run:  python3 demos/demo_train_and_evaluate.py
"""

import numpy as np

import ranksvm as rs


def main():
    # A noise-free regression task: scores are a hidden linear function of
    # the features, so a linear ranker can order it almost perfectly.
    full = rs.generate_synthetic("dense-regression", m=3000, n=8, seed=5)
    train_idx = np.arange(2000)
    test_idx = np.arange(2000, 3000)
    train = rs.validate(rs.Dataset(full.X.columns(train_idx), full.y[train_idx]))
    print(f"training on m={train.m} examples, n={train.n} features, "
          f"N={train.n_pairs} preference pairs")

    model = rs.train(train, lam=1e-3, epsilon=1e-3)
    print(f"converged={model.converged} after {model.iterations} iterations")
    print("\niter   J(w_t)      J_t(w_t)    J(w_b)      eps_t")
    for row in model.trace[:5] + ["..."] + model.trace[-3:]:
        if row == "...":
            print("  ...")
            continue
        print(f"{row.iteration:4d}  {row.J_wt:.6f}  {row.Jt_wt:10.6f}  "
              f"{row.J_wb:.6f}  {row.eps_t:.2e}")

    # Held-out evaluation: fraction of misordered preference pairs.
    scores = rs.predict(full.X.columns(test_idx), model.w)
    report = rs.pairwise_ranking_error(scores, full.y[test_idx])
    print(f"\ntest ranking error = {report.error:.5f} "
          f"({report.swapped} of {report.n_pairs} pairs swapped, "
          f"{report.tied_predictions} tied)")


if __name__ == "__main__":
    main()
