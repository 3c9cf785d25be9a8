"""Compare the compiled and numpy outcome-table kernels.

    python benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import time

import numpy as np

from orci import kernel

CASES = [
    (1.0, 5, 6),
    (1.0, 12, 10),
    (1.0, 60, 70),
    (1e-6, 60, 70),
    (1e6, 60, 70),
    (0.3, 200, 200),
]


def best_of(func, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        func()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if kernel._compiled is None:
        print("compiled kernel not built; only the numpy backend is available")
    print(f"{'r':>8} {'n_a':>5} {'n_b':>5} {'python ms':>10} {'cython ms':>10} {'speedup':>8} {'max |diff|':>11}")
    for r, n_a, n_b in CASES:
        t_py = best_of(lambda: kernel.outcome_table(r, n_a, n_b, backend="python"), args.repeat)
        if kernel._compiled is None:
            print(f"{r:>8g} {n_a:>5} {n_b:>5} {t_py * 1e3:>10.2f}")
            continue
        t_c = best_of(lambda: kernel.outcome_table(r, n_a, n_b, backend="cython"), args.repeat)
        diff = np.abs(kernel.outcome_table(r, n_a, n_b, backend="python")
                      - kernel.outcome_table(r, n_a, n_b, backend="cython")).max()
        print(f"{r:>8g} {n_a:>5} {n_b:>5} {t_py * 1e3:>10.2f} {t_c * 1e3:>10.2f} {t_py / t_c:>7.1f}x {diff:>11.1e}")


if __name__ == "__main__":
    main()
