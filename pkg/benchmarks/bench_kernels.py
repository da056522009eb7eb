"""Time the kernel backends against each other.

Usage: python benchmarks/bench_kernels.py [--sigma-n 2000000] [--disc-q 10000000000]

Runs each kernel under every available backend, checks the results
agree, and prints a small table.  The numba rows include a warmup call
so compilation time is not charged to the measurement.
"""

import argparse
import os
import time

from latvol import kernels
from latvol.hnf import count_exact_reference


def _timed(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return out, best


def run(name, fn, *args):
    results = {}
    backends = ["python", "numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
    for b in backends:
        os.environ["LATVOL_BACKEND"] = b
        if b == "numba":
            fn(*args)  # warmup: trigger compilation
        out, dt = _timed(fn, *args)
        results[b] = (out, dt)
        print(f"{name:>14}  {b:>7}  {dt * 1000:10.2f} ms")
    base = None
    for b, (out, _) in results.items():
        summary = out if isinstance(out, int) else int(out[-1])
        if base is None:
            base = summary
        elif summary != base:
            raise SystemExit(f"backend mismatch in {name}: {b} disagrees")
    print()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sigma-n", type=int, default=2_000_000)
    ap.add_argument("--disc-q", type=int, default=10_000_000_000)
    ap.add_argument("--count-t", type=int, default=100_000)
    args = ap.parse_args()

    saved = os.environ.get("LATVOL_BACKEND")
    try:
        run("sigma_cumsum", kernels.sigma_cumsum, args.sigma_n)
        run("disc_count", kernels.disc_count, args.disc_q)
        if kernels.HAVE_NUMBA:
            os.environ["LATVOL_BACKEND"] = "numba"
            kernels.count_dp(2, args.count_t)  # warmup
            out, dt = _timed(kernels.count_dp, 2, args.count_t)
            print(f"{'count_dp':>14}  {'numba':>7}  {dt * 1000:10.2f} ms")
            out2, dt2 = _timed(count_exact_reference, 2, args.count_t)
            print(f"{'count_dp':>14}  {'bigint':>7}  {dt2 * 1000:10.2f} ms")
            if out != out2:
                raise SystemExit("count_dp disagrees with the exact reference")
    finally:
        if saved is None:
            os.environ.pop("LATVOL_BACKEND", None)
        else:
            os.environ["LATVOL_BACKEND"] = saved


if __name__ == "__main__":
    main()
