"""Measure how loss/subgradient evaluation time scales with m.

The tree backend sorts once and answers rank queries against an
order-statistics tree, so its cost grows roughly linearly in the number of
examples; the brute-force backend enumerates every preference pair and
grows quadratically.  This script times both on sparse synthetic data and
fits log-log slopes.

Run:  python3 demos/demo_scaling_benchmark.py
"""

from ranksvm.cli import run_benchmark


def main():
    kw = dict(kind="sparse-similarity", n=50000, sparsity=0.001,
              repeats=2, seed=77)
    print("backend      m     mean_s")
    tree_rows, tree_slopes = run_benchmark([2**k for k in range(12, 16)],
                                           ["tree"], **kw)
    brute_rows, brute_slopes = run_benchmark([2**k for k in range(10, 14)],
                                             ["brute"], **kw)
    for m, bk, mean_s, _ in tree_rows + brute_rows:
        print(f"{bk:6s} {m:7d}   {mean_s:8.4f}")
    print(f"\nfitted log-log slopes: tree={tree_slopes['tree']:.2f} "
          f"(~linear), brute={brute_slopes['brute']:.2f} (~quadratic)")
    tree_8192 = next(r[2] for r in tree_rows if r[0] == 8192)
    brute_8192 = next(r[2] for r in brute_rows if r[0] == 8192)
    print(f"at m=8192 the tree backend is {brute_8192 / tree_8192:.0f}x faster")


if __name__ == "__main__":
    main()
