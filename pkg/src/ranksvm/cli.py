"""Command-line front end.

Subcommands: ``train``, ``predict``, ``eval``, ``generate``, ``bench``.
Outputs are CSV-first (training traces with columns
``iter,J_wt,Jt_wt,J_wb,eps_t,seconds`` and benchmark tables with columns
``m,backend,mean_s,stdev_s``) so figures can be regenerated with any
plotting tool.

Exit status: 0 success (including unconverged with warning), 1 usage
error, 2 data error, 3 solver failure.
"""

from __future__ import annotations

import argparse
import csv
import statistics
import sys
import time

import numpy as np

from . import bmrm, data, evaluate, model_io, pairloss
from .errors import DegenerateDataError, SolverFailureError, SvmlightParseError

TRACE_HEADER = ["iter", "J_wt", "Jt_wt", "J_wb", "eps_t", "seconds"]
BENCH_HEADER = ["m", "backend", "mean_s", "stdev_s"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; route through our own codes
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="ranksvm", description="Linear RankSVM toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", parents=[], help="train a ranking model")
    p_train.add_argument("--data", required=True, help="svmlight training file")
    p_train.add_argument("--lambda", dest="lam", type=float, default=None)
    p_train.add_argument("--C", dest="C", type=float, default=None,
                         help="alternative regularization; converted via C = 1/(lambda*N)")
    p_train.add_argument("--epsilon", type=float, default=1e-3)
    p_train.add_argument("--max-iters", type=int, default=1000)
    p_train.add_argument("--backend", choices=["tree", "brute"], default="tree")
    p_train.add_argument("--model-out", default=None)
    p_train.add_argument("--trace-out", default=None)
    p_train.add_argument("--dims", type=int, default=None)

    p_predict = sub.add_parser("predict", help="write one predicted score per line")
    p_predict.add_argument("--data", required=True)
    p_predict.add_argument("--model", required=True)
    p_predict.add_argument("--out", default=None, help="default: stdout")
    p_predict.add_argument("--dims", type=int, default=None)

    p_eval = sub.add_parser("eval", help="pairwise ranking error of a model on a dataset")
    p_eval.add_argument("--data", required=True)
    p_eval.add_argument("--model", required=True)
    p_eval.add_argument("--csv-out", default=None)
    p_eval.add_argument("--dims", type=int, default=None)

    p_gen = sub.add_parser("generate", help="write a synthetic svmlight dataset")
    p_gen.add_argument("--kind", choices=["dense-regression", "sparse-similarity"],
                       required=True)
    p_gen.add_argument("--m", type=int, required=True)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--sparsity", type=float, default=1.0)
    p_gen.add_argument("--noise", type=float, default=0.0)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True)

    p_bench = sub.add_parser("bench", help="time the subgradient backends over growing m")
    p_bench.add_argument("--sizes", required=True,
                         help="comma-separated training set sizes, e.g. 4096,8192")
    p_bench.add_argument("--backend", choices=["tree", "brute", "both"], default="both")
    p_bench.add_argument("--repeats", type=int, default=3)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--kind", choices=["dense-regression", "sparse-similarity"],
                         default="sparse-similarity")
    p_bench.add_argument("--n", type=int, default=50000)
    p_bench.add_argument("--sparsity", type=float, default=0.001)
    p_bench.add_argument("--out", default=None, help="CSV output path (default: stdout)")

    return parser


def _load(path, dims):
    dataset = data.load_svmlight(path, dims=dims)
    return data.validate(dataset)


def cmd_train(args) -> int:
    if args.lam is not None and args.C is not None:
        raise UsageError("--lambda and --C are mutually exclusive")
    if args.epsilon <= 0:
        raise UsageError("--epsilon must be > 0")
    if args.max_iters < 1:
        raise UsageError("--max-iters must be >= 1")
    dataset = _load(args.data, args.dims)
    if args.C is not None:
        if args.C <= 0:
            raise UsageError("--C must be > 0")
        lam = 1.0 / (args.C * dataset.n_pairs)
    elif args.lam is not None:
        if args.lam <= 0:
            raise UsageError("--lambda must be > 0")
        lam = args.lam
    else:
        lam = 1e-1
    model = bmrm.train(
        dataset,
        lam=lam,
        epsilon=args.epsilon,
        max_iters=args.max_iters,
        backend=args.backend,
    )
    if args.model_out:
        model_io.save_model(model, args.model_out)
    if args.trace_out:
        with open(args.trace_out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(TRACE_HEADER)
            for row in model.trace:
                writer.writerow(
                    [row.iteration, repr(row.J_wt), repr(row.Jt_wt),
                     repr(row.J_wb), repr(row.eps_t), repr(row.seconds)]
                )
    final = model.trace[-1]
    print(f"J(w_b) = {final.J_wb:.10g}")
    print(f"eps_t = {final.eps_t:.10g}")
    print(f"iterations = {model.iterations}")
    if not model.converged:
        print(
            f"warning: not converged within {args.max_iters} iterations "
            f"(gap {final.eps_t:.3e} >= epsilon {args.epsilon:g})",
            file=sys.stderr,
        )
    return 0


def _scores_for(args):
    model = model_io.load_model(args.model)
    dataset = data.load_svmlight(args.data, dims=args.dims)
    if dataset.n != model.n:
        raise DegenerateDataError(
            f"feature dimension mismatch: model has n={model.n}, data has n={dataset.n} "
            f"(use --dims to fix the index space)"
        )
    return dataset, evaluate.predict(dataset.X, model.w)


def cmd_predict(args) -> int:
    _, scores = _scores_for(args)
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        for s in scores:
            out.write(f"{float(s)!r}\n")
    finally:
        if args.out:
            out.close()
    return 0


def cmd_eval(args) -> int:
    dataset, scores = _scores_for(args)
    if dataset.qid is not None:
        report = evaluate.grouped_ranking_error(scores, dataset.y, dataset.qid)
        print(f"per-query mean error = {report.error:.10g}")
    else:
        report = evaluate.pairwise_ranking_error(scores, dataset.y)
        print(f"error = {report.error:.10g}")
    print(f"swapped = {report.swapped}")
    print(f"N = {report.n_pairs}")
    print(f"tied_predictions = {report.tied_predictions}")
    if args.csv_out:
        with open(args.csv_out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["error", "swapped", "N", "tied_predictions"])
            writer.writerow([repr(report.error), report.swapped,
                             report.n_pairs, report.tied_predictions])
    return 0


def cmd_generate(args) -> int:
    if args.m < 2 or args.n < 1:
        raise UsageError("need --m >= 2 and --n >= 1")
    if not 0.0 < args.sparsity <= 1.0:
        raise UsageError("--sparsity must be in (0, 1]")
    dataset = data.generate_synthetic(
        args.kind, args.m, args.n, sparsity=args.sparsity, seed=args.seed, noise=args.noise
    )
    data.write_svmlight(dataset, args.out)
    print(f"wrote {dataset.m} examples, {dataset.n} features, nnz={dataset.X.nnz} to {args.out}")
    return 0


def run_benchmark(sizes, backends, kind, n, sparsity, repeats, seed):
    """Time one loss/subgradient call per backend over growing m.

    Returns (rows, slopes): CSV rows [m, backend, mean_s, stdev_s] and the
    fitted log-log slope of mean time versus m per backend.
    """
    rows = []
    times: dict[str, list[tuple[int, float]]] = {bk: [] for bk in backends}
    rng = np.random.default_rng(seed)
    for m in sizes:
        dataset = data.validate(
            data.generate_synthetic(kind, m, n, sparsity=sparsity, seed=seed + m)
        )
        w = rng.standard_normal(dataset.n)
        for bk in backends:
            fn = (
                pairloss.loss_and_subgradient
                if bk == "tree"
                else pairloss.brute_force_loss_and_subgradient
            )
            samples = []
            for _ in range(repeats):
                tic = time.perf_counter()
                fn(dataset.X, dataset.y, w, dataset.n_pairs)
                samples.append(time.perf_counter() - tic)
            mean_s = statistics.fmean(samples)
            stdev_s = statistics.stdev(samples) if len(samples) > 1 else 0.0
            rows.append([m, bk, mean_s, stdev_s])
            times[bk].append((m, mean_s))
    slopes = {}
    for bk, points in times.items():
        if len(points) >= 2:
            ms = np.log([p[0] for p in points])
            ts = np.log([p[1] for p in points])
            slopes[bk] = float(np.polyfit(ms, ts, 1)[0])
    return rows, slopes


def cmd_bench(args) -> int:
    try:
        sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"invalid --sizes list {args.sizes!r}") from None
    if not sizes or any(m < 2 for m in sizes):
        raise UsageError("--sizes must list integers >= 2")
    if args.repeats < 1:
        raise UsageError("--repeats must be >= 1")
    backends = ["tree", "brute"] if args.backend == "both" else [args.backend]
    rows, slopes = run_benchmark(
        sizes, backends, args.kind, args.n, args.sparsity, args.repeats, args.seed
    )
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(BENCH_HEADER)
        for m, bk, mean_s, stdev_s in rows:
            writer.writerow([m, bk, repr(mean_s), repr(stdev_s)])
    finally:
        if args.out:
            out.close()
    for bk, slope in slopes.items():
        print(f"slope[{bk}] = {slope:.4f}", file=sys.stderr)
    return 0


_COMMANDS = {
    "train": cmd_train,
    "predict": cmd_predict,
    "eval": cmd_eval,
    "generate": cmd_generate,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (SvmlightParseError, DegenerateDataError, OSError, ValueError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except SolverFailureError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 3


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
