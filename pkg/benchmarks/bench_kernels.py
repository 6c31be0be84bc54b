"""Compare the compiled and numpy kernel backends on representative workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload runs on every available backend; results must agree exactly,
and the best-of-N wall time is reported.
"""
import argparse
import time

import numpy as np

from quartic_pairs import kernels
from quartic_pairs.counting import box_values, split_columns
from quartic_pairs.forms import counterexample_pair
from quartic_pairs.smooth_sums import smooth_set


def count_workload(backend):
    pair = counterexample_pair(10)
    cols = pair.columns()
    left, right = split_columns(cols)
    vals, wts = box_values(20)
    tl = kernels.weighted_sum_table([cols[j] for j in left], vals, wts, backend=backend)
    tr = kernels.weighted_sum_table([cols[j] for j in right], vals, wts, backend=backend)
    return kernels.join(tl, tr, backend=backend)


def sums_workload(backend):
    S = smooth_set(150, 150)
    u, c = kernels.sum_multiplicities(S.fourth_powers(), 3, backend=backend)
    return int(c.sum()), len(u)


def autocorr_workload(backend):
    S = smooth_set(20, 20)
    u, c = kernels.sum_multiplicities(S.fourth_powers(), 3, backend=backend)
    out = kernels.autocorrelation(u, c, 3 * 20**4, backend=backend)
    return int(np.asarray(out, dtype=np.int64).sum())


WORKLOADS = {
    "count N(20), s=10 pair": count_workload,
    "3-fold sums over A(150, 150)": sums_workload,
    "psi autocorrelation, A(20, 20)": autocorr_workload,
}


def best_of(fn, backend, repeat):
    times, result = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(backend)
        times.append(time.perf_counter() - t0)
    return min(times), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)} (default {kernels.BACKEND})")
    print(f"{'workload':34s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup")
    for name, fn in WORKLOADS.items():
        row, results = [], set()
        for b in backends:
            t, res = best_of(fn, b, args.repeat)
            row.append(t)
            results.add(res)
        if len(results) != 1:
            raise SystemExit(f"backends disagree on {name}: {results}")
        speed = f"{row[-1] / row[0]:10.2f}x" if len(row) == 2 else ""
        print(f"{name:34s}" + "".join(f"{t:11.4f}s" for t in row) + speed)


if __name__ == "__main__":
    main()
