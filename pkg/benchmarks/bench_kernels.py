#!/usr/bin/env python3
"""Mod-p row reduction: numba kernel vs pure numpy, plus a Terracini run on each backend.

Usage: python3 benchmarks/bench_kernels.py [--sizes 50,100,200,400] [--repeat 3]
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from superfat import _kernels

P = 32003


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_rref(sizes, repeat):
    if not _kernels.HAVE_NUMBA:
        print("numba not importable; only the numpy path is available")
        return
    # JIT warmup, not timed
    _kernels.rref_modp_numba(np.ones((3, 3), dtype=np.int64), P)
    rng = np.random.default_rng(0)
    print(f"{'n':>6}  {'numpy (s)':>10}  {'numba (s)':>10}  {'speedup':>8}  {'same':>5}")
    print("-" * 48)
    for n in sizes:
        a = rng.integers(0, P, size=(n, n + n // 2), dtype=np.int64)
        # make it rank deficient so pivoting has work to skip
        a[n // 2:] = (3 * a[: n - n // 2]) % P
        t_np, (r_np, piv_np) = best_of(lambda: _kernels.rref_modp_numpy(a.copy(), P), repeat)
        t_nb, (r_nb, piv_nb) = best_of(lambda: _kernels.rref_modp_numba(a.copy(), P), repeat)
        same = np.array_equal(r_np, r_nb) and list(piv_np) == list(piv_nb)
        print(f"{n:>6}  {t_np:>10.4f}  {t_nb:>10.4f}  {t_np / t_nb:>7.1f}x  {'ok' if same else 'FAIL':>5}")


TERRACINI = ("from superfat.secants import tau2, secant_dimension; from superfat.fields import GF; "
             "import time; pm = tau2(8, GF(32003)); secant_dimension(pm, 1); t = time.perf_counter(); "
             "r = secant_dimension(pm, 6, 0, 3); print(r.dim, round(time.perf_counter() - t, 3))")


def bench_terracini():
    print("\nsigma_6(tau2(V_8)) over GF(32003), 3 trials")
    for flag in ("1", "0"):
        env = dict(os.environ, SUPERFAT_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", TERRACINI], env=env, capture_output=True, text=True)
        label = "numba" if flag == "1" else "numpy"
        print(f"  {label:>5}: dim, seconds = {out.stdout.strip() or out.stderr.strip()}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="50,100,200,400")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"backend selected by environment: {_kernels.backend()}\n")
    bench_rref([int(s) for s in args.sizes.split(",")], args.repeat)
    bench_terracini()


if __name__ == "__main__":
    main()
