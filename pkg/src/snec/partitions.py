"""Integer partitions of n and the partition matrix P_n.

A partition is held as a tuple of parts zero-padded to length n, so every
partition of n is an n-vector and the table of all of them is a p(n) x n
integer matrix with rows in decreasing lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError

# p(40) = 37338; p(n)^2 matrices above this stop fitting comfortably in memory.
MAX_N = 40

Partition = tuple[int, ...]


def _iter_partitions(n: int):
    """Yield trimmed partitions of n in decreasing lexicographic order."""
    parts = [n]
    while True:
        yield tuple(parts)
        # find rightmost part > 1
        i = len(parts) - 1
        while i >= 0 and parts[i] == 1:
            i -= 1
        if i < 0:
            return
        rem = len(parts) - i  # the 1s we absorbed, plus 1 from the decrement
        parts[i] -= 1
        del parts[i + 1:]
        cap = parts[i]
        while rem > 0:
            nxt = min(cap, rem)
            parts.append(nxt)
            rem -= nxt


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal-number recurrence (independent of enumeration)."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n and g2 > n:
            break
        sign = -1 if k % 2 == 0 else 1
        if g1 <= n:
            total += sign * partition_count(n - g1)
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


@dataclass(frozen=True)
class PartitionTable:
    """All partitions of n, zero-padded, in decreasing lex order."""

    n: int
    rows: np.ndarray  # (p(n), n) int64, row i = i-th partition
    _index: dict[Partition, int] = field(repr=False, hash=False, compare=False, default=None)

    def __len__(self) -> int:
        return self.rows.shape[0]

    def partition(self, i: int) -> Partition:
        return tuple(int(x) for x in self.rows[i])

    def index_of(self, lam) -> int:
        lam = pad(lam, self.n)
        try:
            return self._index[lam]
        except KeyError:
            raise DomainError(f"{trim(lam)} is not a partition of {self.n}") from None


def pad(lam, n: int) -> Partition:
    """Zero-pad a part sequence to length n, validating shape and sum."""
    parts = tuple(int(x) for x in lam if int(x) != 0)
    if any(x < 0 for x in parts):
        raise DomainError(f"negative part in {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise DomainError(f"parts not weakly decreasing: {parts}")
    if sum(parts) != n:
        raise DomainError(f"{parts} sums to {sum(parts)}, not {n}")
    if len(parts) > n:
        raise DomainError(f"{parts} has more than {n} parts")
    return parts + (0,) * (n - len(parts))


def trim(lam) -> Partition:
    """Drop trailing zeros."""
    return tuple(int(x) for x in lam if int(x) != 0)


def enumerate_partitions(n: int) -> PartitionTable:
    """Build P_n: every partition of n, zero-padded, decreasing lex order."""
    if n < 1:
        raise DomainError("n must be >= 1")
    if n > MAX_N:
        raise DomainError(f"n = {n} exceeds the supported limit {MAX_N}")
    rows = []
    for parts in _iter_partitions(n):
        rows.append(parts + (0,) * (n - len(parts)))
    mat = np.array(rows, dtype=np.int64)
    index = {row: i for i, row in enumerate(rows)}
    return PartitionTable(n=n, rows=mat, _index=index)


def conjugate(lam, n: int | None = None) -> Partition:
    """Transpose of the Young diagram, zero-padded to the same length."""
    lam = tuple(int(x) for x in lam)
    if n is None:
        n = len(lam)
    parts = trim(lam)
    if not parts:
        raise DomainError("empty partition")
    conj = [0] * parts[0]
    for p in parts:
        for i in range(p):
            conj[i] += 1
    return tuple(conj) + (0,) * (n - len(conj))


def to_text(lam) -> str:
    """Comma-separated parts with zeros omitted, e.g. '12,4,2'."""
    parts = trim(lam)
    return ",".join(str(p) for p in parts)


def from_text(text: str, n: int) -> Partition:
    """Parse the comma text form and re-pad to length n."""
    text = text.strip()
    if not text:
        raise DomainError("empty partition text")
    try:
        parts = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise DomainError(f"bad partition text {text!r}") from None
    return pad(parts, n)
