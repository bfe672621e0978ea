"""Versioned text serialization of trained models.

Format (one header line, then key/value lines, then the weights)::

    ranksvm-model 1
    n 8
    lambda 0.1
    epsilon 0.001
    converged true
    iterations 12
    weights dense
    0.25 -1.5 ... (n values)

or, when the weight vector is mostly zero::

    weights sparse 3
    0:0.25 5:-1.5 7:2.0

Floats are written with repr, so load(save(model)) reproduces the weight
vector bitwise.
"""

from __future__ import annotations

import numpy as np

from .bmrm import RankModel

FORMAT_VERSION = 1


def save_model(model: RankModel, path) -> None:
    w = np.asarray(model.w, dtype=np.float64)
    nonzero = np.flatnonzero(w)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"ranksvm-model {FORMAT_VERSION}\n")
        fh.write(f"n {w.shape[0]}\n")
        fh.write(f"lambda {model.lam!r}\n")
        fh.write(f"epsilon {model.epsilon!r}\n")
        fh.write(f"converged {'true' if model.converged else 'false'}\n")
        fh.write(f"iterations {model.iterations}\n")
        if 2 * nonzero.size < w.shape[0]:
            fh.write(f"weights sparse {nonzero.size}\n")
            fh.write(" ".join(f"{int(i)}:{float(w[i])!r}" for i in nonzero) + "\n")
        else:
            fh.write("weights dense\n")
            fh.write(" ".join(repr(v) for v in w.tolist()) + "\n")


def load_model(path) -> RankModel:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh]
    if not lines or not lines[0].startswith("ranksvm-model "):
        raise ValueError(f"{path}: not a ranksvm model file")
    version = int(lines[0].split()[1])
    if version != FORMAT_VERSION:
        raise ValueError(f"{path}: unsupported model format version {version}")
    fields = {}
    weights_at = None
    for k, line in enumerate(lines[1:], start=1):
        key, _, value = line.partition(" ")
        if key == "weights":
            weights_at = k
            break
        fields[key] = value
    if weights_at is None or weights_at + 1 >= len(lines) + 1:
        raise ValueError(f"{path}: missing weights section")
    n = int(fields["n"])
    spec = lines[weights_at].split()
    payload = lines[weights_at + 1].split() if weights_at + 1 < len(lines) else []
    w = np.zeros(n)
    if spec[1] == "dense":
        if len(payload) != n:
            raise ValueError(f"{path}: expected {n} weights, found {len(payload)}")
        w[:] = [float(tok) for tok in payload]
    elif spec[1] == "sparse":
        expected = int(spec[2])
        if len(payload) != expected:
            raise ValueError(f"{path}: expected {expected} weight entries, found {len(payload)}")
        for tok in payload:
            idx_s, _, val_s = tok.partition(":")
            w[int(idx_s)] = float(val_s)
    else:
        raise ValueError(f"{path}: unknown weights encoding {spec[1]!r}")
    return RankModel(
        w=w,
        lam=float(fields["lambda"]),
        epsilon=float(fields["epsilon"]),
        converged=fields["converged"] == "true",
        iterations=int(fields["iterations"]),
        trace=[],
    )
