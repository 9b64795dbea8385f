"""Hot numeric kernels: numba-jitted by default, pure numpy when
SNEC_NO_NUMBA=1 (or numba is missing).

All Kronecker arithmetic here is modular with P = 2^31 - 1 (Mersenne), which
makes reduction branch-free; callers guarantee the true coefficient is below P
so a single residue is exact. The b-loading sums deliberately avoid fastmath:
bit-identical totals across the numba and numpy paths are a tested contract.
"""

from __future__ import annotations

import os

import numpy as np

_M31 = np.int64(2_147_483_647)

NUMBA_ENABLED = os.environ.get("SNEC_NO_NUMBA", "") not in ("1", "true", "yes")
if NUMBA_ENABLED:
    try:
        import numba
        from numba import njit, prange
    except ImportError:  # pragma: no cover - exercised only without numba
        NUMBA_ENABLED = False

if not NUMBA_ENABLED:
    numba = None

    def njit(*args, **kwargs):  # no-op decorator so the jit defs still import
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap

    prange = range


def set_thread_budget(threads: int) -> None:
    if NUMBA_ENABLED and threads > 0:
        numba.set_num_threads(min(threads, numba.config.NUMBA_NUM_THREADS))


# ---------------------------------------------------------------------------
# Mersenne-31 modular helpers
# ---------------------------------------------------------------------------

@njit(cache=True, inline="always")
def _fold31(x):
    # x in [0, 2^62): two folds bring it under 2^31 + 1
    x = (x & 2147483647) + (x >> 31)
    x = (x & 2147483647) + (x >> 31)
    if x >= 2147483647:
        x -= 2147483647
    return x


def _fold31_np(x: np.ndarray) -> np.ndarray:
    x = (x & _M31) + (x >> np.int64(31))
    x = (x & _M31) + (x >> np.int64(31))
    return np.where(x >= _M31, x - _M31, x)


# ---------------------------------------------------------------------------
# Pair scan: g for all (i <= j, every nu), as residues that equal g exactly
# ---------------------------------------------------------------------------

@njit(cache=True, parallel=True)
def _pair_g_scan_nb(chi, sizes, inv_nfact, p):
    npart = chi.shape[0]
    npairs = npart * (npart + 1) // 2
    out = np.empty((npairs, npart), dtype=np.int64)
    for i in prange(npart):
        base = i * npart - i * (i - 1) // 2 - i
        w = np.empty(npart, dtype=np.int64)
        for j in range(i, npart):
            for r in range(npart):
                w[r] = _fold31(_fold31(sizes[r] * chi[i, r]) * chi[j, r])
            row = base + j
            for k in range(npart):
                acc = np.int64(0)
                for r in range(npart):
                    acc += _fold31(w[r] * chi[k, r])
                out[row, k] = _fold31(_fold31(acc) * inv_nfact)
    return out


def _pair_g_scan_np(chi, sizes, inv_nfact, p):
    npart = chi.shape[0]
    blocks = []
    chi_t = np.ascontiguousarray(chi.T)
    for i in range(npart):
        w_rows = _fold31_np(_fold31_np(sizes[None, :] * chi[i][None, :]) * chi[i:, :])
        acc = np.zeros((npart - i, npart), dtype=np.int64)
        for r in range(npart):
            acc += _fold31_np(w_rows[:, r, None] * chi_t[r][None, :])
            if (r & 3) == 3:
                acc = _fold31_np(acc)
        blocks.append(_fold31_np(_fold31_np(acc) * np.int64(inv_nfact)))
    return np.vstack(blocks)


def pair_g_scan(chi, sizes, inv_nfact, p):
    """g[pair(i, j), k] for i <= j, exact given max dimension < P."""
    chi = np.ascontiguousarray(chi, dtype=np.int64)
    sizes = np.ascontiguousarray(sizes, dtype=np.int64)
    if NUMBA_ENABLED:
        return _pair_g_scan_nb(chi, sizes, np.int64(inv_nfact), np.int64(p))
    return _pair_g_scan_np(chi, sizes, inv_nfact, p)


def expand_nonzero_cube(pair_nonzero: np.ndarray, p: int) -> np.ndarray:
    """Blow the symmetric pair table up to the full ordered (p, p, p) cube."""
    i = np.arange(p)
    lo = np.minimum.outer(i, i)
    hi = np.maximum.outer(i, i)
    rows = lo * p - lo * (lo - 1) // 2 + (hi - lo)
    return pair_nonzero[rows]


# ---------------------------------------------------------------------------
# Fused triple scan: min b over vanishing triples + loading histograms
# ---------------------------------------------------------------------------

# Accumulating each partial sum < 2^31 after a fold; 4-term bursts stay < 2^62.

@njit(cache=True, parallel=True)
def _scan_triples_nb(chi, sizes, inv_nfact, a_vals, b_vals, nbins, vmax):
    npart = chi.shape[0]
    bin_scale = nbins / vmax
    best_b = np.full(npart, np.inf)
    best_jk = np.full((npart, 2), -1, dtype=np.int64)
    hists = np.zeros((npart, 4, nbins), dtype=np.int64)  # az, anz, bz, bnz per i
    for i in prange(npart):
        w = np.empty(npart, dtype=np.int64)
        for j in range(i, npart):
            for r in range(npart):
                w[r] = _fold31(_fold31(sizes[r] * chi[i, r]) * chi[j, r])
            weight = np.int64(1) if i == j else np.int64(2)
            a_ij = a_vals[i] + a_vals[j]
            b_ij = b_vals[i] + b_vals[j]
            for k in range(npart):
                acc = np.int64(0)
                for r in range(npart):
                    acc += _fold31(w[r] * chi[k, r])
                g = _fold31(_fold31(acc) * inv_nfact)
                a_t = a_ij + a_vals[k]
                b_t = b_ij + b_vals[k]
                abin = int(a_t * bin_scale)
                if abin >= nbins:
                    abin = nbins - 1
                bbin = int(b_t * bin_scale)
                if bbin >= nbins:
                    bbin = nbins - 1
                if g == 0:
                    hists[i, 0, abin] += weight
                    hists[i, 2, bbin] += weight
                    if b_t < best_b[i]:
                        best_b[i] = b_t
                        best_jk[i, 0] = j
                        best_jk[i, 1] = k
                else:
                    hists[i, 1, abin] += weight
                    hists[i, 3, bbin] += weight
    return best_b, best_jk, hists


def _scan_triples_np(chi, sizes, inv_nfact, a_vals, b_vals, nbins, vmax):
    npart = chi.shape[0]
    bin_scale = nbins / vmax
    best_b = np.full(npart, np.inf)
    best_jk = np.full((npart, 2), -1, dtype=np.int64)
    hists = np.zeros((npart, 4, nbins), dtype=np.int64)
    chi_t = np.ascontiguousarray(chi.T)
    inv = np.int64(inv_nfact)
    for i in range(npart):
        w_rows = _fold31_np(_fold31_np(sizes[None, :] * chi[i][None, :]) * chi[i:, :])
        acc = np.zeros((npart - i, npart), dtype=np.int64)
        for r in range(npart):
            acc += _fold31_np(w_rows[:, r, None] * chi_t[r][None, :])
            if (r & 3) == 3:
                acc = _fold31_np(acc)
        g = _fold31_np(_fold31_np(acc) * inv)  # (j - i, k)
        zero = g == 0
        a_t = (a_vals[i] + a_vals[i:])[:, None] + a_vals[None, :]
        b_t = (b_vals[i] + b_vals[i:])[:, None] + b_vals[None, :]
        weight = np.full(npart - i, 2, dtype=np.int64)
        weight[0] = 1
        wgrid = np.broadcast_to(weight[:, None], zero.shape)
        abin = np.minimum((a_t * bin_scale).astype(np.int64), nbins - 1)
        bbin = np.minimum((b_t * bin_scale).astype(np.int64), nbins - 1)
        for hist_idx, (bins, mask) in enumerate(
            ((abin, zero), (abin, ~zero), (bbin, zero), (bbin, ~zero))
        ):
            if mask.any():
                hists[i, hist_idx] = np.bincount(
                    bins[mask], weights=wgrid[mask], minlength=nbins
                ).astype(np.int64)
        if zero.any():
            masked = np.where(zero, b_t, np.inf)
            flat = np.argmin(masked)  # first occurrence = lex-least (j, k)
            jj, kk = divmod(int(flat), npart)
            best_b[i] = masked.reshape(-1)[flat]
            best_jk[i, 0] = i + jj
            best_jk[i, 1] = kk
    return best_b, best_jk, hists


def scan_triples(chi, sizes, inv_nfact, a_vals, b_vals, nbins=60, vmax=300.0):
    """One pass over all unordered (i <= j) pairs x every k.

    Returns (b_star, argmin (i, j, k) or None, hist array (4, nbins)) where the
    histograms count ordered triples, split (a|b) x (g = 0 | g != 0).
    b(t) is evaluated as (b_i + b_j) + b_k, identically on both backends.
    """
    chi = np.ascontiguousarray(chi, dtype=np.int64)
    sizes = np.ascontiguousarray(sizes, dtype=np.int64)
    a_vals = np.ascontiguousarray(a_vals, dtype=np.float64)
    b_vals = np.ascontiguousarray(b_vals, dtype=np.float64)
    if NUMBA_ENABLED:
        best_b, best_jk, hists = _scan_triples_nb(
            chi, sizes, np.int64(inv_nfact), a_vals, b_vals, nbins, vmax
        )
    else:
        best_b, best_jk, hists = _scan_triples_np(
            chi, sizes, inv_nfact, a_vals, b_vals, nbins, vmax
        )
    hist_total = hists.sum(axis=0)
    b_star = np.inf
    argmin = None
    for i in range(len(best_b)):  # ascending i keeps the lex-least argmin
        if best_b[i] < b_star:
            b_star = float(best_b[i])
            argmin = (i, int(best_jk[i, 0]), int(best_jk[i, 1]))
    return b_star, argmin, hist_total


@njit(cache=True, parallel=True)
def _count_below_nb(b_vals, threshold):
    npart = b_vals.shape[0]
    totals = np.zeros(npart, dtype=np.int64)
    for i in prange(npart):
        sub = np.int64(0)
        for j in range(i, npart):
            weight = np.int64(1) if i == j else np.int64(2)
            s = b_vals[i] + b_vals[j]
            c = np.int64(0)
            for k in range(npart):
                if s + b_vals[k] < threshold:
                    c += 1
            sub += weight * c
        totals[i] = sub
    return totals.sum()


def _count_below_np(b_vals, threshold):
    npart = b_vals.shape[0]
    total = 0
    for i in range(npart):
        s = b_vals[i] + b_vals[i:]
        counts = ((s[:, None] + b_vals[None, :]) < threshold).sum(axis=1)
        weight = np.full(npart - i, 2, dtype=np.int64)
        weight[0] = 1
        total += int(weight @ counts)
    return total


def count_below(b_vals, threshold) -> int:
    """Ordered-cube count of triples with (b_i + b_j) + b_k < threshold."""
    b_vals = np.ascontiguousarray(b_vals, dtype=np.float64)
    if not np.isfinite(threshold):
        return 0
    if NUMBA_ENABLED:
        return int(_count_below_nb(b_vals, float(threshold)))
    return _count_below_np(b_vals, float(threshold))


# ---------------------------------------------------------------------------
# Elliptic point counts: one loop over x per (curve, prime)
# ---------------------------------------------------------------------------

@njit(cache=True)
def _nonsingular_count_one(a1, a2, a3, a4, a6, p):
    # returns nonsingular point count including infinity
    if p < 5:
        cnt = 0
        for x in range(p):
            for y in range(p):
                lhs = (y * y + a1 * x * y + a3 * y) % p
                rhs = (((x + a2) * x + a4) * x + a6) % p
                if lhs == rhs:
                    fy = (2 * y + a1 * x + a3) % p
                    fx = (a1 * y - (3 * x * x + 2 * a2 * x + a4)) % p
                    if fy != 0 or fx != 0:
                        cnt += 1
        return cnt + 1
    sq = np.zeros(p, dtype=np.uint8)
    for y in range(p):
        sq[(y * y) % p] = 1
    inv2 = (p + 1) // 2
    cnt = 0
    for x in range(p):
        lx = (a1 * x + a3) % p
        fx_val = (((x + a2) * x + a4) * x + a6) % p
        d = (lx * lx + 4 * fx_val) % p
        if d == 0:
            # the single root y0 = -L/2; drop it when it is a singular point
            y0 = (p - lx) * inv2 % p
            grad = (a1 * y0 - (3 * x * x + 2 * a2 * x + a4)) % p
            if grad != 0:
                cnt += 1
        elif sq[d]:
            cnt += 2
    return cnt + 1


@njit(cache=True, parallel=True)
def _ap_batch_nb(coeffs, conductors, primes):
    ncurves = coeffs.shape[0]
    k = primes.shape[0]
    out = np.empty((ncurves, k), dtype=np.int64)
    for pi in prange(k):
        p = primes[pi]
        for c in range(ncurves):
            a1 = coeffs[c, 0] % p
            a2 = coeffs[c, 1] % p
            a3 = coeffs[c, 2] % p
            a4 = coeffs[c, 3] % p
            a6 = coeffs[c, 4] % p
            n_ns = _nonsingular_count_one(a1, a2, a3, a4, a6, p)
            if conductors[c] % p == 0:
                out[c, pi] = p - n_ns
            else:
                out[c, pi] = p + 1 - n_ns
    return out


def _nonsingular_count_np(a1, a2, a3, a4, a6, p):
    if p < 5:
        cnt = 0
        for x in range(p):
            for y in range(p):
                if (y * y + a1 * x * y + a3 * y) % p == (((x + a2) * x + a4) * x + a6) % p:
                    fy = (2 * y + a1 * x + a3) % p
                    fx = (a1 * y - (3 * x * x + 2 * a2 * x + a4)) % p
                    if fy != 0 or fx != 0:
                        cnt += 1
        return cnt + 1
    x = np.arange(p, dtype=np.int64)
    sq = np.zeros(p, dtype=bool)
    sq[(x * x) % p] = True
    lx = (a1 * x + a3) % p
    fx_val = (((x + a2) % p * x + a4) % p * x + a6) % p
    d = (lx * lx + 4 * fx_val) % p
    cnt = 2 * int((sq[d] & (d != 0)).sum())
    roots = d == 0
    if roots.any():
        inv2 = (p + 1) // 2
        y0 = (p - lx[roots]) * inv2 % p
        grad = (a1 * y0 - (3 * x[roots] ** 2 + 2 * a2 * x[roots] + a4)) % p
        cnt += int((grad != 0).sum())
    return cnt + 1


def _ap_batch_np(coeffs, conductors, primes):
    ncurves = coeffs.shape[0]
    out = np.empty((ncurves, len(primes)), dtype=np.int64)
    for pi, p in enumerate(primes):
        p = int(p)
        for c in range(ncurves):
            a1, a2, a3, a4, a6 = (int(v) % p for v in coeffs[c])
            n_ns = _nonsingular_count_np(a1, a2, a3, a4, a6, p)
            if int(conductors[c]) % p == 0:
                out[c, pi] = p - n_ns
            else:
                out[c, pi] = p + 1 - n_ns
    return out


def ap_batch(coeffs, conductors, primes) -> np.ndarray:
    """a_p for every curve/prime: p + 1 - #E(F_p) at good p, p - #E_ns(F_p) at bad p."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.int64)
    conductors = np.ascontiguousarray(conductors, dtype=np.int64)
    primes = np.ascontiguousarray(primes, dtype=np.int64)
    if NUMBA_ENABLED:
        return _ap_batch_nb(coeffs, conductors, primes)
    return _ap_batch_np(coeffs, conductors, primes)
