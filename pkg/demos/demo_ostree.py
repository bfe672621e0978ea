"""The order-statistics tree, and how rank queries compute the pair loss.

Run:  python3 demos/demo_ostree.py
"""

import numpy as np

import ranksvm as rs


def main():
    # The tree stores a multiset of keys and answers, in O(log r) time for
    # r distinct keys, how many stored keys are smaller/larger than a query.
    tree = rs.OSTree()
    for k in [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0]:
        tree.insert(k)
    print(f"inserted {tree.total} keys ({tree.distinct} distinct)")
    for q in (1.0, 4.5):
        print(f"  count_smaller({q}) = {tree.count_smaller(q)}, "
              f"count_larger({q}) = {tree.count_larger(q)}")

    # For ranking, the same queries count hinge violations: example i with
    # label below j's is violated when p_i > p_j - 1.  Sweeping the examples
    # in prediction order and querying the tree yields, for every example,
    # how many pairs it violates -- without touching the pairs one by one.
    rng = np.random.default_rng(0)
    ds = rs.validate(rs.generate_synthetic("dense-regression", m=8, n=3, seed=1))
    w = rng.standard_normal(ds.n)
    p = ds.X.tdot(w)
    freq = rs.compute_frequencies(p, ds.y)
    print(f"\npredictions p = {np.round(p, 3)}")
    print(f"violation counts c = {freq.c}, d = {freq.d}")
    loss = float((freq.c - freq.d).dot(p) + freq.c.sum()) / ds.n_pairs
    brute = rs.brute_force_loss_and_subgradient(ds.X, ds.y, w, ds.n_pairs)
    print(f"loss via counts     = {loss:.10f}")
    print(f"loss via pair sweep = {brute.loss:.10f}")


if __name__ == "__main__":
    main()
