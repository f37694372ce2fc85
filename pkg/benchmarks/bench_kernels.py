"""Compare the compiled kernel core against the pure numpy fallback.

Run:  python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from pslab._kernels import _fallback

try:
    from pslab._kernels import _core
except ImportError:
    _core = None


def timeit(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_pair_accumulate(n_items=20000):
    rng = np.random.default_rng(0)
    floors = np.unique(rng.integers(1, 10**6, size=n_items)).astype(np.int64)
    weights = rng.uniform(0.5, 3.0, size=len(floors))
    return (floors, weights, 10**6), "pair_accumulate"


def bench_expsum(n_items=200000):
    rng = np.random.default_rng(1)
    ks = np.sort(rng.integers(1, 10**7, size=n_items)).astype(np.int64)
    ws = rng.uniform(0.5, 3.0, size=n_items)
    return (ks, ws, 0.1234567), "expsum_int_phase"


def bench_grid(n_items=2000):
    rng = np.random.default_rng(2)
    ks = np.sort(rng.integers(1, 10**5, size=n_items)).astype(np.int64)
    ws = rng.uniform(0.5, 3.0, size=n_items)
    return (ks, ws, 0.01, 1e-5, 20000, 4), "grid_abs_power_sum"


def bench_sinc(n_items=500000):
    rng = np.random.default_rng(3)
    wsum = np.zeros(n_items)
    idx = rng.integers(0, n_items, size=n_items // 4)
    wsum[idx] = rng.uniform(0.0, 2.0, size=len(idx))
    return (wsum, n_items // 2, 1e-4), "sinc_kernel_sum"


def main():
    if _core is None:
        print("compiled core unavailable; timing fallback only")
    print(f"{'kernel':<22}{'compiled (s)':>14}{'pure (s)':>12}{'speedup':>10}")
    for maker in (bench_pair_accumulate, bench_expsum, bench_grid, bench_sinc):
        args, name = maker()
        t_pure, ref = timeit(getattr(_fallback, name), *args)
        if _core is None:
            print(f"{name:<22}{'-':>14}{t_pure:>12.4f}{'-':>10}")
            continue
        t_core, got = timeit(getattr(_core, name), *args)
        if name == "pair_accumulate":
            assert np.array_equal(ref[0], got[0])
        else:
            assert abs(complex(got) - complex(ref)) <= 1e-9 * max(1.0, abs(complex(ref)))
        print(f"{name:<22}{t_core:>14.4f}{t_pure:>12.4f}{t_pure / t_core:>10.1f}x")


if __name__ == "__main__":
    main()
