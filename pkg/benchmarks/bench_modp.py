"""Benchmark the mod-p row reduction kernels: numba JIT vs pure numpy.

These kernels carry every graded computation in the package (syzygy
kernels, Hom spaces, Macaulay ranks, determinant interpolation).

Usage:
    python benchmarks/bench_modp.py --sizes 50,100,200,400 --reps 5
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ulrichmf import modp


def bench_backend(backend: str, sizes, reps: int, p: int, rng) -> dict:
    modp.set_backend(backend)
    modp.warm_up()
    out = {}
    for n in sizes:
        a = rng.integers(0, p, size=(n, n), dtype=np.int64)
        best = float("inf")
        for _ in range(reps):
            start = time.perf_counter()
            _, piv = modp.rref(a, p)
            best = min(best, time.perf_counter() - start)
        out[n] = (best, len(piv))
    modp.set_backend(None)
    return out


def main() -> None:
    parser = argparse.ArgumentParser(description="mod-p RREF backend comparison")
    parser.add_argument("--sizes", default="50,100,200,400")
    parser.add_argument("--reps", type=int, default=5)
    parser.add_argument("--prime", type=int, default=10009)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(args.seed)
    backends = ["numpy"] + (["numba"] if modp.HAVE_NUMBA else [])
    if not modp.HAVE_NUMBA:
        print("numba not importable: benchmarking the numpy fallback only")

    results = {b: bench_backend(b, sizes, args.reps, args.prime, rng) for b in backends}

    print(f"mod-p RREF, p = {args.prime}, best of {args.reps} reps")
    header = f"{'n':>6}" + "".join(f"{b:>14}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for n in sizes:
        row = f"{n:>6}"
        for b in backends:
            row += f"{results[b][n][0] * 1e3:>12.2f}ms"
        if len(backends) == 2:
            row += f"{results['numpy'][n][0] / results['numba'][n][0]:>9.1f}x"
        print(row)
    ranks = {b: [results[b][n][1] for n in sizes] for b in backends}
    assert len({tuple(v) for v in ranks.values()}) == 1, "backends disagree on ranks"


if __name__ == "__main__":
    main()
