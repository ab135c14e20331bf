#!/usr/bin/env python3
"""Time the numba Gray-code kernels against the pure-numpy block scans.

Usage: python benchmarks/bench_kernels.py [-n VARS] [-m CLAUSES] [--repeat R]

Runs both backends on the same random 3-SAT instance and reports wall time
and assignments/second.  The active package default is whatever
SATSCHEME_KERNEL selects; this script times both implementations directly.
"""

import argparse
import random
import time

import numpy as np

from satscheme import kernels
from satscheme.pseudo_boolean import pb_coefficients
from satscheme.scheme_core import Scheme


def random_3sat(rng: random.Random, n: int, m: int) -> Scheme:
    rows = []
    for _ in range(m):
        row = [0] * n
        for c in rng.sample(range(n), 3):
            row[c] = rng.choice((1, -1))
        rows.append(row)
    return Scheme.from_rows(rows, n=n)


def time_call(fn, *args, repeat: int = 3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("-n", type=int, default=20, help="variables (scan is 2**n steps)")
    ap.add_argument("-m", type=int, default=60, help="clauses")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = random.Random(42)
    s = random_3sat(rng, args.n, args.m)
    fmat = np.ascontiguousarray(s.cells)
    total = 1 << args.n
    print(f"instance: n={args.n}, m={args.m}, {total} assignments; best of {args.repeat}")

    rows = []
    if kernels.HAS_NUMBA:
        kernels._assignment_scan_numba(fmat[:2, :2].copy(), False)  # compile
        t, res_nb = time_call(kernels._assignment_scan_numba, fmat, False, repeat=args.repeat)
        rows.append(("assignment_scan", "numba", t, res_nb[:2]))
    t, res_np = time_call(kernels._assignment_scan_numpy, fmat, False, repeat=args.repeat)
    rows.append(("assignment_scan", "numpy", t, res_np[:2]))

    p = pb_coefficients(s)
    lam = np.array([float(v) for v in p.lam])
    keys = sorted(p.nu)
    nu_idx = np.array(keys, dtype=np.int64).reshape(-1, 3)
    nu_val = np.array([float(p.nu[k]) for k in keys])
    if kernels.HAS_NUMBA:
        kernels._cubic_form_scan_numba(2, lam[:2], np.zeros((0, 3), np.int64), np.zeros(0))
        t, res = time_call(
            kernels._cubic_form_scan_numba, args.n, lam, nu_idx, nu_val, repeat=args.repeat
        )
        rows.append(("cubic_form_scan", "numba", t, (res[0], res[2])))
    t, res = time_call(
        kernels._cubic_form_scan_numpy, args.n, lam, nu_idx, nu_val, repeat=args.repeat
    )
    rows.append(("cubic_form_scan", "numpy", t, (res[0], res[2])))

    print(f"{'kernel':<18}{'backend':<8}{'seconds':>10}{'Massign/s':>12}   result")
    for name, backend, t, res in rows:
        print(f"{name:<18}{backend:<8}{t:>10.3f}{total / t / 1e6:>12.1f}   {res}")

    by_kernel = {}
    for name, backend, t, _ in rows:
        by_kernel.setdefault(name, {})[backend] = t
    for name, times in by_kernel.items():
        if len(times) == 2:
            print(f"{name}: numba is {times['numpy'] / times['numba']:.1f}x the numpy path")


if __name__ == "__main__":
    main()
