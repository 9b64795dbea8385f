"""Elliptic curves over Q: reduction mod p, point counts, and a_p vectors.

Curves arrive as global minimal Weierstrass models with their conductor and
rank already attached (both are ingested labels, never computed here; the
LMFDB is the usual source).  Point counting is the naive O(p) loop with a
quadratic-residue table, which is exact and fast enough for the first
thousand primes.
"""

from __future__ import annotations

import csv
import hashlib
import os
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .errors import DataFormatError, DomainError
from .primes import first_primes, is_prime

MAX_PRIME = 100_000
MAX_K = 1000


@dataclass(frozen=True)
class CurveRecord:
    label: str
    a_invariants: tuple[int, int, int, int, int]  # (a1, a2, a3, a4, a6)
    conductor: int
    rank: int
    ap: np.ndarray | None = None  # filled by ap_vector

    @property
    def discriminant(self) -> int:
        return discriminant(self.a_invariants)


def discriminant(a) -> int:
    a1, a2, a3, a4, a6 = a
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def count_points_mod_p(curve: CurveRecord, p: int) -> tuple[int, bool]:
    """Projective point count over F_p, nonsingular points only, infinity included.

    smooth is False exactly when the reduction has a singular point (p | disc).
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p > MAX_PRIME:
        raise DomainError(f"p = {p} exceeds the supported bound {MAX_PRIME}")
    a = tuple(v % p for v in curve.a_invariants)
    n_ns = int(_kernels.ap_batch(
        np.array([a], dtype=np.int64),
        np.array([1], dtype=np.int64),  # treat as good: kernel returns p + 1 - n_ns
        np.array([p], dtype=np.int64),
    )[0, 0])
    n_ns = p + 1 - n_ns
    smooth = curve.discriminant % p != 0
    return n_ns, smooth


def ap(curve: CurveRecord, p: int) -> int:
    """a_p = p + 1 - #E(F_p) at good p; p - #E_ns(F_p) at bad p (p | conductor).

    Requires a global minimal model: a non-minimal model shows up as a bad-prime
    a_p outside {-1, 0, 1} or as a conductor/discriminant support mismatch.
    """
    n_ns, smooth = count_points_mod_p(curve, p)
    bad = curve.conductor % p == 0
    if bad and smooth:
        raise DomainError(
            f"curve {curve.label}: p = {p} divides the conductor but the reduction is smooth"
        )
    if not bad and not smooth:
        raise DomainError(
            f"curve {curve.label}: singular reduction at p = {p} not dividing the conductor "
            "(model not minimal?)"
        )
    if bad:
        val = p - n_ns
        if val not in (-1, 0, 1):
            raise DomainError(
                f"curve {curve.label}: bad-prime a_{p} = {val} outside {{-1,0,1}} "
                "(model not minimal?)"
            )
        return val
    val = p + 1 - n_ns
    if val * val > 4 * p:
        raise DomainError(f"curve {curve.label}: a_{p} = {val} violates the Hasse bound")
    return val


def ap_quadratic_character(curve: CurveRecord, p: int) -> int:
    """Independent good-prime oracle for p >= 5: a_p = -sum_x chi(x^3 + Ax + B)
    on the short Weierstrass model (valid since 2, 3 are invertible)."""
    if p < 5 or not is_prime(p):
        raise DomainError("oracle needs a prime p >= 5")
    if curve.conductor % p == 0:
        raise DomainError("oracle covers good reduction only")
    a1, a2, a3, a4, a6 = curve.a_invariants
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    c4 = b2 * b2 - 24 * b4
    c6 = -b2**3 + 36 * b2 * b4 - 216 * b6
    A = (-27 * c4) % p
    B = (-54 * c6) % p
    x = np.arange(p, dtype=np.int64)
    sq = np.zeros(p, dtype=bool)
    sq[(x * x) % p] = True
    fx = ((x * x % p * x) + A * x + B) % p
    chi = np.where(fx == 0, 0, np.where(sq[fx], 1, -1))
    return -int(chi.sum())


def ap_vector(curve: CurveRecord, k: int, cache_dir=None) -> np.ndarray:
    """(a_{p_1}, ..., a_{p_k}); cached per (label, k) when cache_dir is given."""
    if k < 0 or k > MAX_K:
        raise DomainError(f"k must be in [0, {MAX_K}]")
    if k == 0:
        return np.empty(0, dtype=np.int64)
    if cache_dir is not None:
        cached = _read_ap_cache(cache_dir, curve.label, k)
        if cached is not None:
            return cached
    primes = first_primes(k)
    vec = _kernels.ap_batch(
        np.array([curve.a_invariants], dtype=np.int64),
        np.array([curve.conductor], dtype=np.int64),
        primes,
    )[0]
    _validate_ap(curve, primes, vec)
    if cache_dir is not None:
        _write_ap_cache(cache_dir, curve.label, k, primes, vec)
    return vec


def _validate_ap(curve: CurveRecord, primes, vec) -> None:
    bad = curve.conductor % primes == 0
    good_vals = vec[~bad]
    if (good_vals * good_vals > 4 * primes[~bad]).any():
        raise DomainError(f"curve {curve.label}: Hasse bound violated")
    if bad.any() and (np.abs(vec[bad]) > 1).any():
        raise DomainError(
            f"curve {curve.label}: bad-prime a_p outside {{-1,0,1}} (model not minimal?)"
        )


def ap_matrix(curves, k: int, cache_dir=None):
    """Stack a_p vectors for many curves; returns (curves_with_ap, primes)."""
    primes = first_primes(k)
    coeffs = np.array([c.a_invariants for c in curves], dtype=np.int64)
    conds = np.array([c.conductor for c in curves], dtype=np.int64)
    if len(curves) == 0:
        return [], primes
    rows = _kernels.ap_batch(coeffs, conds, primes)
    out = []
    for c, row in zip(curves, rows):
        _validate_ap(c, primes, row)
        out.append(replace(c, ap=row))
    return out, primes


# ---------------------------------------------------------------------------
# a_p cache files: "p,ap" rows plus key and checksum comments
# ---------------------------------------------------------------------------

def _cache_path(cache_dir, label: str, k: int) -> str:
    safe = label.replace("/", "_")
    return os.path.join(cache_dir, f"ap_{safe}_k{k}.csv")


def _write_ap_cache(cache_dir, label, k, primes, vec) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    body = "p,ap\n" + "".join(f"{p},{a}\n" for p, a in zip(primes, vec))
    digest = hashlib.sha256(body.encode()).hexdigest()
    path = _cache_path(cache_dir, label, k)
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(f"# label={label} k={k}\n# sha256 {digest}\n")
        fh.write(body)
    os.replace(tmp, path)


def _read_ap_cache(cache_dir, label, k):
    path = _cache_path(cache_dir, label, k)
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        lines = fh.read().splitlines()
    meta = [ln for ln in lines if ln.startswith("#")]
    body_lines = [ln for ln in lines if not ln.startswith("#")]
    body = "\n".join(body_lines) + "\n"
    want = next((ln.split()[-1] for ln in meta if ln.startswith("# sha256")), None)
    if want is None or hashlib.sha256(body.encode()).hexdigest() != want:
        return None  # corrupt: caller recomputes and overwrites
    try:
        rows = [ln.split(",") for ln in body_lines[1:] if ln]
        vec = np.array([int(a) for _, a in rows], dtype=np.int64)
    except ValueError:
        return None
    if len(vec) != k:
        return None
    return vec


# ---------------------------------------------------------------------------
# Ingestion: curve CSV with header label,a1,a2,a3,a4,a6,conductor,rank
# ---------------------------------------------------------------------------

CURVE_FIELDS = ["label", "a1", "a2", "a3", "a4", "a6", "conductor", "rank"]


def read_curves(path) -> list[CurveRecord]:
    out = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = None
        for lineno, row in enumerate(reader, start=1):
            if not row or row[0].startswith("#"):
                continue
            if header is None:
                header = [tok.strip() for tok in row]
                if header != CURVE_FIELDS:
                    raise DataFormatError(
                        f"expected header {','.join(CURVE_FIELDS)}", line=lineno
                    )
                continue
            if len(row) != 8:
                raise DataFormatError(f"expected 8 fields, got {len(row)}", line=lineno)
            try:
                a = tuple(int(tok) for tok in row[1:6])
                conductor = int(row[6])
                rank = int(row[7])
            except ValueError as exc:
                raise DataFormatError(str(exc), line=lineno) from None
            if conductor < 1:
                raise DataFormatError(f"conductor must be positive, got {conductor}", line=lineno)
            if rank < 0:
                raise DataFormatError(f"rank must be nonnegative, got {rank}", line=lineno)
            rec = CurveRecord(label=row[0].strip(), a_invariants=a, conductor=conductor, rank=rank)
            if rec.discriminant == 0:
                raise DataFormatError(f"curve {rec.label} is singular (zero discriminant)", line=lineno)
            out.append(rec)
    return out


def ingest_curves(
    path,
    conductor_range: tuple[int, int] | None = None,
    ranks=None,
    max_count: int | None = None,
    balanced: bool = False,
    seed: int = 0,
) -> list[CurveRecord]:
    """Parse, filter, and optionally balance a curve file by rank.

    Balancing draws equal per-rank counts uniformly without replacement with
    the given seed; it errors when any requested rank cannot fill its share.
    """
    curves = read_curves(path)
    if conductor_range is not None:
        n1, n2 = conductor_range
        curves = [c for c in curves if n1 <= c.conductor <= n2]
    if ranks is not None:
        ranks = set(ranks)
        curves = [c for c in curves if c.rank in ranks]
    if not balanced:
        if max_count is not None:
            curves = curves[:max_count]
        return curves
    by_rank: dict[int, list[CurveRecord]] = {}
    for c in curves:
        by_rank.setdefault(c.rank, []).append(c)
    want_ranks = sorted(ranks) if ranks is not None else sorted(by_rank)
    if not want_ranks:
        return []
    per = min(len(by_rank.get(r, [])) for r in want_ranks)
    if max_count is not None:
        per = min(per, max_count // len(want_ranks))
    if per == 0:
        avail = {r: len(by_rank.get(r, [])) for r in want_ranks}
        raise DomainError(f"balancing infeasible: per-rank availability {avail}")
    rng = np.random.default_rng(seed)
    out = []
    for r in want_ranks:
        pool = by_rank[r]
        idx = rng.choice(len(pool), size=per, replace=False)
        out.extend(pool[i] for i in sorted(idx))
    return out
