"""Prime enumeration helpers (sieve-backed, cached)."""

from __future__ import annotations

import numpy as np

_cache = {"limit": 0, "primes": np.empty(0, dtype=np.int64)}


def _sieve(limit: int) -> np.ndarray:
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for i in range(2, int(limit**0.5) + 1):
        if mask[i]:
            mask[i * i:: i] = False
    return np.flatnonzero(mask).astype(np.int64)


def first_primes(k: int) -> np.ndarray:
    """The first k primes (p_1 = 2)."""
    if k <= 0:
        return np.empty(0, dtype=np.int64)
    limit = max(32, _cache["limit"])
    while len(_cache["primes"]) < k:
        limit *= 2
        _cache["primes"] = _sieve(limit)
        _cache["limit"] = limit
    return _cache["primes"][:k].copy()


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True
