"""Benchmark the jitted kernels against their pure-numpy fallbacks.

Run:  python benchmarks/bench_kernels.py [--n 12] [--curves 40] [--k 200]

The same functions the package dispatches through are timed directly, so the
comparison reflects exactly what SNEC_NO_NUMBA=1 switches between.
"""

import argparse
import time

import numpy as np

import snec._kernels as K
from snec.elliptic import read_curves
from snec.kronecker import _kernel_inputs, character_table
from snec.loadings import loadings


def timeit(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_pair_scan(n):
    ctab = character_table(n)
    chi_m, sizes_m, inv = _kernel_inputs(ctab)
    if K.NUMBA_ENABLED:
        K._pair_g_scan_nb(chi_m, sizes_m, np.int64(inv), K._M31)  # compile
        t_nb, out_nb = timeit(K._pair_g_scan_nb, chi_m, sizes_m, np.int64(inv), K._M31)
    else:
        t_nb, out_nb = float("nan"), None
    t_np, out_np = timeit(K._pair_g_scan_np, chi_m, sizes_m, inv, int(K._M31))
    if out_nb is not None:
        assert np.array_equal(out_nb, out_np)
    return t_nb, t_np


def bench_triple_scan(n):
    ctab = character_table(n)
    chi_m, sizes_m, inv = _kernel_inputs(ctab)
    av = loadings(ctab.table, "a").values
    bv = loadings(ctab.table, "b").values
    if K.NUMBA_ENABLED:
        K._scan_triples_nb(chi_m, sizes_m, np.int64(inv), av, bv, 60, 300.0)
        t_nb, _ = timeit(K._scan_triples_nb, chi_m, sizes_m, np.int64(inv), av, bv, 60, 300.0)
    else:
        t_nb = float("nan")
    t_np, _ = timeit(K._scan_triples_np, chi_m, sizes_m, inv, av, bv, 60, 300.0)
    return t_nb, t_np


def bench_point_counts(path, ncurves, k):
    curves = (read_curves(path) * ((ncurves // 12) + 1))[:ncurves]
    coeffs = np.array([c.a_invariants for c in curves], dtype=np.int64)
    conds = np.array([c.conductor for c in curves], dtype=np.int64)
    from snec.primes import first_primes

    primes = first_primes(k)
    if K.NUMBA_ENABLED:
        K._ap_batch_nb(coeffs, conds, primes)
        t_nb, out_nb = timeit(K._ap_batch_nb, coeffs, conds, primes)
    else:
        t_nb, out_nb = float("nan"), None
    t_np, out_np = timeit(K._ap_batch_np, coeffs, conds, primes, repeat=1)
    if out_nb is not None:
        assert np.array_equal(out_nb, out_np)
    return t_nb, t_np


def main():
    ap_ = argparse.ArgumentParser()
    ap_.add_argument("--n", type=int, default=12)
    ap_.add_argument("--curves", type=int, default=40)
    ap_.add_argument("--k", type=int, default=200)
    ap_.add_argument(
        "--curve-file", default="tests/data/curves_small.csv", help="curve CSV to cycle"
    )
    args = ap_.parse_args()

    print(f"numba enabled: {K.NUMBA_ENABLED}")
    rows = []
    t_nb, t_np = bench_pair_scan(args.n)
    rows.append((f"pair g-scan (n={args.n})", t_nb, t_np))
    t_nb, t_np = bench_triple_scan(args.n)
    rows.append((f"triple scan (n={args.n})", t_nb, t_np))
    t_nb, t_np = bench_point_counts(args.curve_file, args.curves, args.k)
    rows.append((f"a_p counts ({args.curves} curves x {args.k} primes)", t_nb, t_np))

    print(f"\n{'kernel':<42} {'numba':>10} {'numpy':>10} {'speedup':>9}")
    for name, nb, npx in rows:
        ratio = npx / nb if nb == nb and nb > 0 else float("nan")
        nb_txt = f"{nb * 1e3:.1f} ms" if nb == nb else "-"
        print(f"{name:<42} {nb_txt:>10} {npx * 1e3:>7.1f} ms {ratio:>8.1f}x")


if __name__ == "__main__":
    main()
