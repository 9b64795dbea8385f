"""Exact symmetric-group character tables and Kronecker coefficients.

Character values are computed by the Murnaghan-Nakayama border-strip
recursion over exact Python integers; g values come from the class-weighted
triple character sum g = (1/n!) * sum_rho |C_rho| chi_l(rho) chi_m(rho) chi_n(rho),
whose division must be exact (anything else is a table bug, not an input error).

Everything in this module is integer arithmetic; floats are never used.
"""

from __future__ import annotations

import hashlib
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ConsistencyError, DomainError, ResourceGuardError
from .partitions import PartitionTable, enumerate_partitions, pad, to_text, trim

# p(22) = 1002; a full table above that is ~10^6 big integers and past any use here.
MAX_TABLE_N = 22
# Modulus for the batch kernels: g < max dimension < 2^31 - 1 for every n we scan,
# so a single residue determines g exactly (checked at kernel entry).
KERNEL_PRIME = 2_147_483_647


@dataclass(frozen=True)
class CharacterTable:
    """chi[irrep][class], exact, both axes in decreasing lex partition order."""

    n: int
    table: PartitionTable
    chi: list[list[int]] = field(repr=False)
    class_sizes: list[int] = field(repr=False)

    def __post_init__(self):
        if sum(self.class_sizes) != math.factorial(self.n):
            raise ConsistencyError(f"class sizes for n={self.n} do not sum to n!")

    @property
    def dimensions(self) -> list[int]:
        """f_lambda = chi_lambda(identity); identity class is the last column (1^n)."""
        ident = len(self.chi) - 1
        return [row[ident] for row in self.chi]

    def chi_mod(self, p: int = KERNEL_PRIME) -> np.ndarray:
        return np.array([[v % p for v in row] for row in self.chi], dtype=np.int64)

    def sizes_mod(self, p: int = KERNEL_PRIME) -> np.ndarray:
        return np.array([c % p for c in self.class_sizes], dtype=np.int64)


def cycle_type_centralizer(rho) -> int:
    """z_rho = prod_i i^{m_i} m_i! over part multiplicities."""
    z = 1
    mult: dict[int, int] = {}
    for part in trim(rho):
        mult[part] = mult.get(part, 0) + 1
    for part, m in mult.items():
        z *= part**m * math.factorial(m)
    return z


def _strip_removals(shape: tuple[int, ...], t: int):
    """Yield (new_shape, sign) for every border strip of size t removable from shape.

    Beta-number formulation: a strip of size t is a bead move b -> b - t on the
    first-column hook lengths; its height is the number of beads passed over.
    """
    k = len(shape)
    beta = [shape[i] + (k - 1 - i) for i in range(k)]
    bset = set(beta)
    for i, b in enumerate(beta):
        c = b - t
        if c < 0 or c in bset:
            continue
        height = sum(1 for x in beta if c < x < b)
        new_beta = sorted((x for x in beta if x != b), reverse=True)
        new_beta.append(c)
        new_beta.sort(reverse=True)
        new_shape = tuple(new_beta[j] - (k - 1 - j) for j in range(k))
        yield trim(new_shape), -1 if height % 2 else 1


def _chi_column(table: PartitionTable, rho: tuple[int, ...]) -> list[int]:
    """chi_lambda(rho) for every irrep lambda, by Murnaghan-Nakayama.

    Cycle parts are consumed largest-first, so the remaining cycle type is a
    suffix determined by the remaining cells; the memo key is the shape alone.
    """
    parts = trim(rho)
    memo: dict[tuple[int, ...], int] = {(): 1}
    # depth of a shape in the recursion = number of parts already removed,
    # recoverable from its size
    prefix_left = {}
    total = sum(parts)
    acc = total
    for d, p in enumerate(parts):
        prefix_left[acc] = d
        acc -= p

    def rec(shape: tuple[int, ...]) -> int:
        val = memo.get(shape)
        if val is not None:
            return val
        t = parts[prefix_left[sum(shape)]]
        out = 0
        for new_shape, sign in _strip_removals(shape, t):
            out += sign * rec(new_shape)
        memo[shape] = out
        return out

    return [rec(trim(table.rows[i])) for i in range(len(table))]


def character_table(n: int) -> CharacterTable:
    """Exact character table of S_n, rows and columns in decreasing lex order."""
    if n < 1:
        raise DomainError("n must be >= 1")
    if n > MAX_TABLE_N:
        raise ResourceGuardError(
            f"character table for n = {n} exceeds the supported limit {MAX_TABLE_N}"
        )
    table = enumerate_partitions(n)
    nfact = math.factorial(n)
    class_sizes = [nfact // cycle_type_centralizer(table.rows[j]) for j in range(len(table))]
    columns = [_chi_column(table, tuple(table.rows[j])) for j in range(len(table))]
    chi = [[columns[j][i] for j in range(len(table))] for i in range(len(table))]
    return CharacterTable(n=n, table=table, chi=chi, class_sizes=class_sizes)


def hook_length_dimension(lam) -> int:
    """f_lambda by the hook-length formula; independent of the character recursion."""
    parts = trim(lam)
    n = sum(parts)
    collen = [0] * (parts[0] if parts else 0)
    for p in parts:
        for j in range(p):
            collen[j] += 1
    prod = 1
    for i, p in enumerate(parts):
        for j in range(p):
            prod *= (p - j) + (collen[j] - i) - 1
    return math.factorial(n) // prod


def kronecker_coefficient(lam, mu, nu, ctab: CharacterTable) -> int:
    """Exact g for three partitions of ctab.n; raises ConsistencyError if the
    defining division by n! fails (that means the table itself is wrong)."""
    n = ctab.n
    i = ctab.table.index_of(pad(lam, n))
    j = ctab.table.index_of(pad(mu, n))
    k = ctab.table.index_of(pad(nu, n))
    return kronecker_by_index(i, j, k, ctab)


def kronecker_by_index(i: int, j: int, k: int, ctab: CharacterTable) -> int:
    ci, cj, ck = ctab.chi[i], ctab.chi[j], ctab.chi[k]
    total = 0
    for r, size in enumerate(ctab.class_sizes):
        total += size * ci[r] * cj[r] * ck[r]
    nfact = math.factorial(ctab.n)
    g, rem = divmod(total, nfact)
    if rem != 0:
        raise ConsistencyError(
            f"triple character sum not divisible by n! at n={ctab.n}, indices ({i},{j},{k})"
        )
    if g < 0:
        raise ConsistencyError(f"negative Kronecker coefficient at indices ({i},{j},{k})")
    return g


# ---------------------------------------------------------------------------
# Independent verification path: permutation-module characters + Kostka numbers
# ---------------------------------------------------------------------------

def young_permutation_character(mu, rho) -> int:
    """Number of tabloids of row sizes mu fixed by a permutation of cycle type rho.

    Each cycle must land wholly in one row, so this counts distributions of the
    cycle multiset into rows with the prescribed size sums.
    """
    mu = trim(mu)
    cycles = list(trim(rho))

    def count(row_targets: tuple[int, ...], remaining: tuple[int, ...]) -> int:
        if not row_targets:
            return 1 if not remaining else 0
        target = row_targets[0]
        total = 0
        # choose a sub-multiset of `remaining` summing to `target`
        lengths = sorted(set(remaining), reverse=True)
        mults = {l: remaining.count(l) for l in lengths}

        def choose(idx: int, left: int, taken: dict[int, int]):
            nonlocal total
            if left == 0:
                ways = 1
                for l in lengths:
                    ways *= math.comb(mults[l], taken.get(l, 0))
                rest = []
                for l in lengths:
                    rest.extend([l] * (mults[l] - taken.get(l, 0)))
                total += ways * count(row_targets[1:], tuple(rest))
                return
            if idx >= len(lengths):
                return
            l = lengths[idx]
            max_take = min(mults[l], left // l)
            for c in range(max_take + 1):
                taken[l] = c
                choose(idx + 1, left - c * l, taken)
            taken.pop(l, None)

        choose(0, target, {})
        return total

    return count(mu, tuple(sorted(cycles, reverse=True)))


def kostka_number(lam, mu) -> int:
    """Count of semistandard tableaux of shape lam and content mu.

    Peels entries equal to the largest value (a horizontal strip) and recurses;
    purely combinatorial, no characters involved.
    """
    lam = trim(lam)
    mu = trim(mu)
    if sum(lam) != sum(mu):
        return 0

    memo: dict[tuple[tuple[int, ...], int], int] = {}

    def rec(shape: tuple[int, ...], depth: int) -> int:
        if depth < 0:
            return 1 if not shape else 0
        key = (shape, depth)
        val = memo.get(key)
        if val is not None:
            return val
        want = mu[depth]
        total = 0
        # inner shapes nu with lam/nu a horizontal strip of size `want`
        shape_p = shape + (0,)

        def strips(i: int, left: int, acc: list[int]):
            nonlocal total
            if i == len(shape):
                if left == 0:
                    total += rec(trim(tuple(acc)), depth - 1)
                return
            lo = max(shape_p[i + 1], shape[i] - left)
            for v in range(shape[i], lo - 1, -1):
                acc.append(v)
                strips(i + 1, left - (shape[i] - v), acc)
                acc.pop()

        strips(0, want, [])
        memo[key] = total
        return total

    return rec(lam, len(mu) - 1)


def permutation_character_oracle(n: int) -> CharacterTable:
    """Character table recovered from Young permutation characters via the
    unitriangular Kostka matrix; must match character_table(n) exactly."""
    if n > 8:
        raise DomainError("oracle limited to n <= 8 (tabloid counting cost)")
    table = enumerate_partitions(n)
    p = len(table)
    nfact = math.factorial(n)
    class_sizes = [nfact // cycle_type_centralizer(table.rows[j]) for j in range(p)]
    phi = [
        [young_permutation_character(table.rows[m], table.rows[r]) for r in range(p)]
        for m in range(p)
    ]
    # phi^mu = sum_lambda K[lam][mu] chi_lambda with K nonzero only for
    # index(lam) <= index(mu); forward-substitute in lex order.
    chi: list[list[int]] = []
    for m in range(p):
        row = list(phi[m])
        for l in range(m):
            k_lm = kostka_number(table.rows[l], table.rows[m])
            if k_lm:
                row = [row[r] - k_lm * chi[l][r] for r in range(p)]
        chi.append(row)
    oracle = CharacterTable(n=n, table=table, chi=chi, class_sizes=class_sizes)
    return oracle


# ---------------------------------------------------------------------------
# Batch evaluation
# ---------------------------------------------------------------------------

def _kernel_inputs(ctab: CharacterTable):
    """Mod-P views plus the exactness certificate for the batch kernels."""
    p = KERNEL_PRIME
    fmax = max(ctab.dimensions)
    if fmax >= p:
        raise ResourceGuardError(
            f"n = {ctab.n}: max dimension {fmax} >= kernel modulus; batch scan unsupported"
        )
    chi_m = ctab.chi_mod(p)
    sizes_m = ctab.sizes_mod(p)
    inv_nfact = pow(math.factorial(ctab.n) % p, p - 2, p)
    return chi_m, sizes_m, inv_nfact


def pair_g_table(ctab: CharacterTable) -> np.ndarray:
    """g for every pair index i <= j and every nu, as a dense int64 array G[t, k]
    where t runs over pairs in row-major (i, j >= i) order.

    Exact: g < max dimension < P guarantees the single residue is g itself.
    """
    chi_m, sizes_m, inv_nfact = _kernel_inputs(ctab)
    return _kernels.pair_g_scan(chi_m, sizes_m, inv_nfact, KERNEL_PRIME)


def pair_index(i: int, j: int, p: int) -> int:
    """Row of (i, j), i <= j, in the pair_g_table layout."""
    return i * p - i * (i - 1) // 2 + (j - i)


@dataclass(frozen=True)
class TripleRecord:
    lam: int
    mu: int
    nu: int
    g: int


def iter_all_triples(ctab: CharacterTable, gtab: np.ndarray | None = None):
    """All p(n)^3 ordered triples in lexicographic index order.

    The symmetric pair scan is computed once; emission re-expands it in a fixed
    order, so output never depends on kernel scheduling.
    """
    if gtab is None:
        gtab = pair_g_table(ctab)
    p = len(ctab.table)
    for i in range(p):
        for j in range(p):
            a, b = (i, j) if i <= j else (j, i)
            row = gtab[pair_index(a, b, p)]
            for k in range(p):
                yield TripleRecord(i, j, k, int(row[k]))


def batch_count(n: int) -> int:
    p = len(enumerate_partitions(n))
    return p**3


def sample_balanced(
    ctab: CharacterTable,
    count: int,
    seed: int,
    gtab: np.ndarray | None = None,
):
    """Seeded balanced sample: `count` ordered triples with g = 0 and `count`
    with g != 0, drawn uniformly without replacement from each class.

    Falls back to sampling with replacement (and warns) when a class has fewer
    than `count` distinct triples.
    """
    if gtab is None:
        gtab = pair_g_table(ctab)
    p = len(ctab.table)
    nonzero = _kernels.expand_nonzero_cube(gtab != 0, p)
    flat = nonzero.reshape(-1)
    zero_idx = np.flatnonzero(~flat)
    nonzero_idx = np.flatnonzero(flat)
    rng = np.random.default_rng(seed)
    picks = []
    for label, pool in ((0, zero_idx), (1, nonzero_idx)):
        if len(pool) == 0:
            raise DomainError(f"no triples with {'g = 0' if label == 0 else 'g != 0'} at n = {ctab.n}")
        if len(pool) >= count:
            chosen = rng.choice(pool, size=count, replace=False)
        else:
            warnings.warn(
                f"class g{'=' if label == 0 else '!='}0 has only {len(pool)} distinct "
                f"triples at n = {ctab.n}; sampling {count} with replacement"
            )
            chosen = rng.choice(pool, size=count, replace=True)
        picks.append(np.sort(chosen))
    return picks[0], picks[1]


def triple_features(table: PartitionTable, flat_indices: np.ndarray) -> np.ndarray:
    """Concatenated (lam, mu, nu) part vectors: one 3n-dim row per flat cube index."""
    p = len(table)
    i = flat_indices // (p * p)
    j = (flat_indices // p) % p
    k = flat_indices % p
    return np.hstack([table.rows[i], table.rows[j], table.rows[k]]).astype(np.int64)


# ---------------------------------------------------------------------------
# Cache file format: "n p(n)" header, class sizes line, p(n) rows of chi,
# then a trailing checksum comment over the payload above it.
# ---------------------------------------------------------------------------

def _payload(ctab: CharacterTable) -> str:
    lines = [f"{ctab.n} {len(ctab.table)}"]
    lines.append(" ".join(str(c) for c in ctab.class_sizes))
    for row in ctab.chi:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def write_table(ctab: CharacterTable, path) -> None:
    payload = _payload(ctab)
    digest = hashlib.sha256(payload.encode()).hexdigest()
    with open(path, "w") as fh:
        fh.write(payload)
        fh.write(f"# sha256 {digest}\n")


def read_table(path) -> CharacterTable:
    with open(path) as fh:
        raw = fh.read()
    lines = raw.splitlines()
    body = [ln for ln in lines if not ln.startswith("#")]
    checks = [ln for ln in lines if ln.startswith("# sha256 ")]
    payload = "\n".join(body) + "\n"
    if checks:
        want = checks[0].split()[-1]
        got = hashlib.sha256(payload.encode()).hexdigest()
        if want != got:
            raise ConsistencyError(f"character table cache {path} failed its checksum")
    try:
        n, p = (int(tok) for tok in body[0].split())
        class_sizes = [int(tok) for tok in body[1].split()]
        chi = [[int(tok) for tok in body[2 + i].split()] for i in range(p)]
    except (IndexError, ValueError) as exc:
        raise ConsistencyError(f"character table cache {path} is malformed: {exc}") from None
    if len(class_sizes) != p or any(len(row) != p for row in chi):
        raise ConsistencyError(f"character table cache {path} has wrong shape")
    table = enumerate_partitions(n)
    if len(table) != p:
        raise ConsistencyError(f"character table cache {path}: p({n}) != {p}")
    return CharacterTable(n=n, table=table, chi=chi, class_sizes=class_sizes)


def cached_character_table(n: int, cache_dir=None, verify: bool = True) -> CharacterTable:
    """Load the table for n from cache_dir, building and storing it on miss."""
    if cache_dir is None:
        return character_table(n)
    import os

    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, f"chartab_{n}.txt")
    if os.path.exists(path):
        try:
            return read_table(path)
        except ConsistencyError:
            warnings.warn(f"cache {path} corrupt; recomputing")
    ctab = character_table(n)
    write_table(ctab, path)
    return ctab


def dataset_header(n: int, mode: str, seed) -> str:
    return f"# n={n} mode={mode} seed={seed}"


def write_triples_csv(path, table: PartitionTable, records, n: int, mode: str, seed="-") -> int:
    """Stream TripleRecords to the semicolon CSV; returns the record count."""
    texts = [to_text(table.rows[i]) for i in range(len(table))]
    count = 0
    with open(path, "w") as fh:
        fh.write(dataset_header(n, mode, seed) + "\n")
        fh.write("lambda;mu;nu;g\n")
        buf = []
        for rec in records:
            buf.append(f"{texts[rec.lam]};{texts[rec.mu]};{texts[rec.nu]};{rec.g}\n")
            count += 1
            if len(buf) >= 65536:
                fh.write("".join(buf))
                buf.clear()
        fh.write("".join(buf))
    return count
