"""Time the compiled and numpy KDE kernels on the same inputs.

    python benchmarks/bench_kde.py [--grid 512] [--repeat 5] [--threads 1 4]
"""
import argparse
import math
import time

import numpy as np

from nettrust._backend import IMPLEMENTATIONS


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=int, default=512)
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 100, 1000, 10000])
    ap.add_argument("--threads", type=int, nargs="+", default=[1, 4])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    grid = np.linspace(0.0, 1.0, args.grid)
    names = sorted(IMPLEMENTATIONS)
    print(f"{'samples':>8} {'threads':>7} " + " ".join(f"{n + ' ms':>12}" for n in names)
          + f" {'speedup':>8} {'max |diff|':>11}")
    for n in args.sizes:
        samples = rng.random(n)
        h = 0.5 / math.sqrt(n)
        for threads in args.threads:
            timings, outputs = {}, {}
            for name in names:
                kde = IMPLEMENTATIONS[name]
                outputs[name] = kde(grid, samples, h, threads)
                timings[name] = best_of(lambda: kde(grid, samples, h, threads), args.repeat)
            speed = (timings["python"] / timings["cython"]) if "cython" in timings else float("nan")
            diff = max(float(np.max(np.abs(outputs[a] - outputs[names[0]]))) for a in names)
            print(f"{n:>8} {threads:>7} " + " ".join(f"{1e3 * timings[k]:>12.3f}" for k in names)
                  + f" {speed:>8.1f} {diff:>11.2e}")


if __name__ == "__main__":
    main()
