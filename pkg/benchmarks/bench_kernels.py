"""Compare the numba and numpy GF(p) kernels, and time a full Betti computation with each.

    python benchmarks/bench_kernels.py [--sizes 50 100 200 400] [--repeat 3] [--end-to-end]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from koszulreg._kernels import HAVE_NUMBA, rank_mod_p, rref_mod_p

P = 32003


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def kernels(sizes, repeat, density):
    rng = np.random.default_rng(0)
    print(f"{'n':>6} {'kernel':>6} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for n in sizes:
        A = rng.integers(0, P, size=(n, n), dtype=np.int64)
        A[rng.random((n, n)) > density] = 0
        # make it rank deficient so elimination does some bookkeeping
        A[n // 2] = (A[0] + A[1]) % P
        for name, fn in (("rank", rank_mod_p), ("rref", rref_mod_p)):
            fn(A[:4, :4], P, use_numba=True)  # compile outside the timing
            t_np = _time(lambda: fn(A, P, use_numba=False), repeat)
            t_nb = _time(lambda: fn(A, P, use_numba=True), repeat)
            print(f"{n:>6} {name:>6} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>8.1f}")


def end_to_end(example):
    print(f"\nend to end: reproduce {example}")
    for flag in ("1", "0"):
        env = dict(os.environ, KOSZULREG_NUMBA=flag)
        t = time.perf_counter()
        r = subprocess.run([sys.executable, "-m", "koszulreg.cli", "reproduce", "-q", example],
                           env=env, capture_output=True, text=True)
        dt = time.perf_counter() - t
        status = r.stdout.strip().splitlines()[-1] if r.stdout else r.stderr.strip()
        print(f"  KOSZULREG_NUMBA={flag}: {dt:7.2f}s  {status}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--density", type=float, default=0.3)
    ap.add_argument("--end-to-end", action="store_true")
    ap.add_argument("--example", default="e1")
    a = ap.parse_args()
    if not HAVE_NUMBA:
        sys.exit("numba is disabled or missing; nothing to compare")
    kernels(a.sizes, a.repeat, a.density)
    if a.end_to_end:
        end_to_end(a.example)


if __name__ == "__main__":
    main()
