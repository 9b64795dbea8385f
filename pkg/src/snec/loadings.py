"""Partition loadings: Perron eigenvectors of the similitude and difference
matrices, triple loadings, the b* nonvanishing certificate, and moment fits.

The similitude matrix is the Gram matrix of zero-padded partition rows; the
difference matrix holds pairwise L1 distances.  Loadings rescale the dominant
eigenvector to [0, 100] by min-max, so every loading vector touches both ends
exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConsistencyError, DomainError, NumericalError
from .kronecker import CharacterTable, _kernel_inputs
from .partitions import PartitionTable, pad

HIST_RANGE = 300.0  # triple loadings live in [0, 300]


def similitude_matrix(table: PartitionTable) -> np.ndarray:
    """Y_n = P_n P_n^T, exact integers."""
    rows = table.rows
    return rows @ rows.T


def difference_matrix(table: PartitionTable) -> np.ndarray:
    """Z_n with entries sum_i |lam_i - mu_i|, exact integers."""
    rows = table.rows
    p = len(table)
    out = np.empty((p, p), dtype=np.int64)
    # chunked to keep the |difference| broadcast under control for large n
    step = max(1, 2_000_000 // (p * table.n))
    for start in range(0, p, step):
        block = rows[start:start + step]
        out[start:start + step] = np.abs(block[:, None, :] - rows[None, :, :]).sum(axis=2)
    return out


def perron_vector(M: np.ndarray, tol: float = 1e-12, max_iter: int = 100_000):
    """Dominant eigenpair of a nonnegative irreducible matrix by power iteration.

    Starts from the all-ones vector; stops when successive Rayleigh quotients
    agree to tol relative accuracy.  The returned vector has unit L2 norm and
    strictly positive entries (anything else is a consistency failure).
    """
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DomainError("perron_vector needs a square matrix")
    if (M < 0).any():
        raise DomainError("perron_vector needs a nonnegative matrix")
    v = np.ones(M.shape[0])
    v /= np.linalg.norm(v)
    fro = np.linalg.norm(M)
    lam_prev = np.inf
    for _ in range(max_iter):
        w = M @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            raise NumericalError("power iteration hit the zero vector")
        v = w / norm
        Mv = M @ v
        lam = float(v @ Mv)
        # Rayleigh quotients converge twice as fast as the vector, so the
        # residual is checked as well before declaring victory
        if abs(lam - lam_prev) < tol * abs(lam):
            if np.linalg.norm(Mv - lam * v) <= 1e-10 * fro:
                break
        lam_prev = lam
    else:
        raise NumericalError(
            f"power iteration did not converge in {max_iter} iterations "
            f"(last eigenvalue {lam}, delta {abs(lam - lam_prev)})"
        )
    if (v <= 0).any():
        raise ConsistencyError("Perron vector has a non-positive coordinate")
    return lam, v


@dataclass(frozen=True)
class LoadingVector:
    n: int
    kind: str  # "a" or "b"
    values: np.ndarray  # (p(n),) floats in [0, 100], decreasing-lex partition order
    eigenvalue: float


def loadings(table: PartitionTable, kind: str) -> LoadingVector:
    """a-loadings (similitude matrix) or b-loadings (difference matrix)."""
    if kind not in ("a", "b"):
        raise DomainError(f"kind must be 'a' or 'b', got {kind!r}")
    if table.n < 2:
        raise DomainError("loading undefined: constant eigenvector")
    M = similitude_matrix(table) if kind == "a" else difference_matrix(table)
    eig, v = perron_vector(M)
    vmin, vmax = float(v.min()), float(v.max())
    if vmax - vmin <= 1e-14 * vmax:
        raise DomainError("loading undefined: constant eigenvector")
    # divide first: (x / x) * 100 lands on exactly 100.0 at the max entry
    vals = (v - vmin) / (vmax - vmin) * 100.0
    return LoadingVector(n=table.n, kind=kind, values=vals, eigenvalue=eig)


def loading_of(L: LoadingVector, table: PartitionTable, lam) -> float:
    return float(L.values[table.index_of(pad(lam, table.n))])


def triple_loading(t, L: LoadingVector, table: PartitionTable) -> float:
    """Sum of the three individual loadings; in [0, 300]."""
    lam, mu, nu = t
    return (
        loading_of(L, table, lam) + loading_of(L, table, mu) + loading_of(L, table, nu)
    )


@dataclass(frozen=True)
class BStarResult:
    n: int
    b_star: float  # +inf when no vanishing triple exists
    argmin: tuple | None  # index triple (i, j, k), lexicographically least
    vacuous: bool


def b_star_from_stream(n: int, triples, L_b: LoadingVector) -> BStarResult:
    """min b(t) over records with g = 0 from an explicit triple stream.

    The stream must cover all of P(n)^3 for the certificate to mean anything;
    callers sampling triples get whatever their sample supports.
    """
    vals = L_b.values
    best = math.inf
    arg = None
    for rec in triples:
        if rec.g != 0:
            continue
        v = (vals[rec.lam] + vals[rec.mu]) + vals[rec.nu]
        key = tuple(sorted((rec.lam, rec.mu, rec.nu)))
        if v < best or (v == best and (arg is None or key < arg)):
            best = v
            arg = key
    if arg is None:
        return BStarResult(n=n, b_star=math.inf, argmin=None, vacuous=True)
    return BStarResult(n=n, b_star=best, argmin=arg, vacuous=False)


@dataclass(frozen=True)
class TripleScan:
    """Fused exhaustive scan over P(n)^3: b*, histograms, and the certificate count."""

    n: int
    b_star: float
    argmin: tuple | None
    vacuous: bool
    total: int
    below: int
    fraction: float
    hist_edges: np.ndarray  # (nbins + 1,)
    hist_a: np.ndarray  # (2, nbins): rows = (g = 0, g != 0), ordered-triple counts
    hist_b: np.ndarray


def scan_triples_exhaustive(
    ctab: CharacterTable,
    L_a: LoadingVector,
    L_b: LoadingVector,
    nbins: int = 60,
) -> TripleScan:
    """One pass over all triples of partitions of n.

    Work per call is ~p(n)^4 / 2 modular multiplies; n = 18 is the practical
    interactive ceiling and n = 20 the --force territory.
    """
    chi_m, sizes_m, inv_nfact = _kernel_inputs(ctab)
    b_star, argmin, hists = _kernels.scan_triples(
        chi_m, sizes_m, inv_nfact, L_a.values, L_b.values, nbins=nbins, vmax=HIST_RANGE
    )
    p = len(ctab.table)
    total = p**3
    vacuous = argmin is None
    below = _kernels.count_below(L_b.values, b_star) if not vacuous else 0
    fraction = below / total
    edges = np.linspace(0.0, HIST_RANGE, nbins + 1)
    return TripleScan(
        n=ctab.n,
        b_star=float(b_star) if not vacuous else math.inf,
        argmin=argmin,
        vacuous=vacuous,
        total=total,
        below=below,
        fraction=fraction,
        hist_edges=edges,
        hist_a=np.vstack([hists[0], hists[1]]),
        hist_b=np.vstack([hists[2], hists[3]]),
    )


def certificate_fraction(ctab: CharacterTable, L_a=None, L_b=None) -> TripleScan:
    """Counts of triples with b(t) < b*; fraction is 0 by convention when b* = +inf."""
    table = ctab.table
    if L_a is None:
        L_a = loadings(table, "a")
    if L_b is None:
        L_b = loadings(table, "b")
    return scan_triples_exhaustive(ctab, L_a, L_b)


def all_triple_loadings(L: LoadingVector) -> np.ndarray:
    """Dense (p^3,) array of triple loadings in ordered-cube layout.

    Sized for n <= ~16; bigger n should stream through scan_triples_exhaustive.
    """
    v = L.values
    pair = v[:, None] + v[None, :]
    return (pair[:, :, None] + v[None, None, :]).reshape(-1)


# ---------------------------------------------------------------------------
# Descriptive distribution fits (the limiting shapes are conjectures, so these
# report parameters and a KS distance, never pass/fail)
# ---------------------------------------------------------------------------

def _normal_cdf(x: np.ndarray, mean: float, sd: float) -> np.ndarray:
    z = (x - mean) / (sd * math.sqrt(2.0))
    return 0.5 * (1.0 + np.vectorize(math.erf)(z))


def _reg_lower_gamma(a: float, x: np.ndarray) -> np.ndarray:
    """Regularized lower incomplete gamma P(a, x), series/continued-fraction split."""

    def one(xv: float) -> float:
        if xv <= 0.0:
            return 0.0
        lga = math.lgamma(a)
        if xv < a + 1.0:
            # series expansion around 0
            term = 1.0 / a
            total = term
            k = a
            for _ in range(500):
                k += 1.0
                term *= xv / k
                total += term
                if abs(term) < abs(total) * 1e-15:
                    break
            return total * math.exp(-xv + a * math.log(xv) - lga)
        # Lentz continued fraction for Q(a, x)
        tiny = 1e-300
        b = xv + 1.0 - a
        c = 1.0 / tiny
        d = 1.0 / b
        h = d
        for i in range(1, 500):
            an = -i * (i - a)
            b += 2.0
            d = an * d + b
            if abs(d) < tiny:
                d = tiny
            c = b + an / c
            if abs(c) < tiny:
                c = tiny
            d = 1.0 / d
            delta = d * c
            h *= delta
            if abs(delta - 1.0) < 1e-15:
                break
        q = math.exp(-xv + a * math.log(xv) - lga) * h
        return 1.0 - q

    return np.vectorize(one)(x)


def ks_statistic(samples: np.ndarray, cdf) -> float:
    """sup |empirical CDF - fitted CDF| over the sample points."""
    xs = np.sort(np.asarray(samples, dtype=np.float64))
    n = len(xs)
    fitted = cdf(xs)
    upper = np.arange(1, n + 1) / n - fitted
    lower = fitted - np.arange(0, n) / n
    return float(max(upper.max(), lower.max()))


def fit_distribution(samples, family: str):
    """Method-of-moments fit plus the KS sup-distance.

    normal -> {"mean", "sd"}; gamma -> {"shape", "scale"}.
    """
    xs = np.asarray(samples, dtype=np.float64)
    if len(xs) < 100:
        raise DomainError("need at least 100 samples to fit")
    mean = float(xs.mean())
    var = float(xs.var())
    if var <= 0.0:
        raise DomainError("zero variance: nothing to fit")
    if family == "normal":
        sd = math.sqrt(var)
        params = {"mean": mean, "sd": sd}
        ks = ks_statistic(xs, lambda x: _normal_cdf(x, mean, sd))
    elif family == "gamma":
        if mean <= 0.0:
            raise DomainError("gamma fit needs positive mean")
        shape = mean * mean / var
        scale = var / mean
        params = {"shape": shape, "scale": scale}
        ks = ks_statistic(xs, lambda x: _reg_lower_gamma(shape, x / scale))
    else:
        raise DomainError(f"unknown family {family!r}")
    return params, ks
