"""Compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--json]

Each row times one kernel on both backends (best of N) and checks that the
outputs agree before reporting the speedup.
"""
from __future__ import annotations

import argparse
import json
import timeit

import numpy as np

from hombricks import _kernels, fixture, GF, enumerate_reps
from hombricks.census import _action_matrices, _gl, _layout
from hombricks.linalg import enumerate_combinations


def _cases(rng: np.random.Generator):
    p = 3
    dense = rng.integers(0, p, size=(80, 120), dtype=np.int64)
    small = rng.integers(0, p, size=(20000, 4, 4), dtype=np.int64)
    A = fixture("kron", GF(p))
    dims = (2, 2)
    groups = [_gl(d, p, 1 << 20) for d in dims]
    actions = _action_matrices(A, dims, groups)
    _, n = _layout(A, dims)
    weights = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
    points = enumerate_combinations(p, n)
    sample = points[rng.integers(0, len(points), size=200)]
    return [
        ("rref_modp 80x120 F_3", lambda: _kernels.rref_modp(dense, p)[0]),
        ("batch_rank_modp 20000 x (4x4) F_3", lambda: _kernels.batch_rank_modp(small, p)),
        ("orbit_indices Kronecker (2,2) F_3, 200 points",
         lambda: [_kernels.orbit_indices(x, actions, weights, p) for x in sample]),
        ("orbit_min_index Kronecker (2,2) F_3, 200 points",
         lambda: _kernels.orbit_min_index(sample, actions, weights, p)),
        ("enumerate_reps Kronecker (2,2) F_3 end to end",
         lambda: [c.code for c in enumerate_reps(A, dims, name_classes=False).classes]),
    ]


def _same(a, b) -> bool:
    if isinstance(a, list):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    return bool(np.array_equal(np.asarray(a), np.asarray(b)))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true", help="print machine-readable rows")
    args = ap.parse_args(argv)

    backends = _kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the numpy fallback is available")
    original = _kernels.BACKEND
    rows = []
    try:
        for name, fn in _cases(np.random.default_rng(args.seed)):
            row = {"kernel": name}
            outputs = {}
            for b in backends:
                _kernels.set_backend(b)
                outputs[b] = fn()
                row[b] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
            if len(outputs) == 2 and not _same(outputs["cython"], outputs["python"]):
                raise SystemExit(f"backends disagree on {name}")
            if "cython" in row:
                row["speedup"] = row["python"] / row["cython"]
            rows.append(row)
    finally:
        _kernels.set_backend(original)

    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    width = max(len(r["kernel"]) for r in rows)
    print(f"{'kernel':<{width}}  {'python s':>10}  {'cython s':>10}  {'speedup':>8}")
    for r in rows:
        cy = f"{r['cython']:10.4f}" if "cython" in r else f"{'-':>10}"
        sp = f"{r['speedup']:7.1f}x" if "speedup" in r else f"{'-':>8}"
        print(f"{r['kernel']:<{width}}  {r['python']:10.4f}  {cy}  {sp}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
