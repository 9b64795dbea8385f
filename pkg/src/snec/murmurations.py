"""Murmuration series: class averages of a_p over conductor windows.

f_r(n) is the plain arithmetic mean of a_{p_n} over the curves of rank r with
conductor in the window; no smoothing is applied here (plots may add a moving
average, the series itself stays raw).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .primes import first_primes


@dataclass(frozen=True)
class MurmurationSeries:
    primes: np.ndarray  # (k,)
    x: np.ndarray  # (k,) plot abscissa: primes, or primes / 2^exponent
    class_names: list[str]
    values: np.ndarray  # (n_classes, k) means
    populations: list[int]
    conductor_range: tuple[int, int]


def _class_mean(rows: np.ndarray) -> np.ndarray:
    # np.mean reduces pairwise, which keeps reruns bit-stable
    return rows.mean(axis=0)


def murmuration(curves, classes, conductor_range, k: int) -> MurmurationSeries:
    """One series per rank in `classes` over curves in the conductor window."""
    n1, n2 = conductor_range
    primes = first_primes(k)
    names, values, pops = [], [], []
    for r in sorted(classes):
        rows = [
            c.ap[:k]
            for c in curves
            if c.rank == r and n1 <= c.conductor <= n2 and c.ap is not None
        ]
        if not rows:
            raise DomainError(f"no curves of rank {r} with conductor in [{n1}, {n2}]")
        if any(len(row) < k for row in rows):
            raise DomainError(f"a_p vectors shorter than k = {k}")
        names.append(f"rank{r}")
        values.append(_class_mean(np.array(rows, dtype=np.float64)))
        pops.append(len(rows))
    return MurmurationSeries(
        primes=primes,
        x=primes.astype(np.float64),
        class_names=names,
        values=np.array(values),
        populations=pops,
        conductor_range=(n1, n2),
    )


def dyadic_murmuration(
    curves,
    parity: str,
    exponent: int,
    k: int,
    x_axis: str = "prime",
) -> MurmurationSeries:
    """Parity-class average over the dyadic conductor window [2^e, 2^{e+1}).

    x_axis="prime_over_N" rescales the abscissa by 2^exponent so windows at
    different scales overlay; the series values are untouched either way.
    """
    if parity not in ("even", "odd"):
        raise DomainError(f"parity must be 'even' or 'odd', got {parity!r}")
    if x_axis not in ("prime", "prime_over_N"):
        raise DomainError(f"unknown x_axis {x_axis!r}")
    want = 0 if parity == "even" else 1
    n1, n2 = 2**exponent, 2 ** (exponent + 1) - 1
    primes = first_primes(k)
    rows = [
        c.ap[:k]
        for c in curves
        if c.rank % 2 == want and n1 <= c.conductor <= n2 and c.ap is not None
    ]
    if not rows:
        raise DomainError(
            f"no curves of {parity} rank with conductor in [2^{exponent}, 2^{exponent + 1})"
        )
    x = primes.astype(np.float64)
    if x_axis == "prime_over_N":
        x = x / float(2**exponent)
    return MurmurationSeries(
        primes=primes,
        x=x,
        class_names=[parity],
        values=_class_mean(np.array(rows, dtype=np.float64))[None, :],
        populations=[len(rows)],
        conductor_range=(n1, n2),
    )


def assert_hasse_envelope(series: MurmurationSeries, slack: float = 1.0) -> None:
    """Averaged Hasse bound, with slack for bad-prime terms in {-1, 0, 1}."""
    bound = 2.0 * np.sqrt(series.primes.astype(np.float64)) + slack
    if (np.abs(series.values) > bound[None, :]).any():
        raise DomainError("series violates the averaged Hasse bound")


def moving_average(values: np.ndarray, window: int) -> np.ndarray:
    """Centered moving average for plots; window <= 1 is the identity."""
    if window <= 1:
        return values
    kernel = np.ones(window) / window
    return np.vstack([np.convolve(v, kernel, mode="same") for v in np.atleast_2d(values)])


def write_series_csv(path, series: MurmurationSeries, meta: dict) -> None:
    header = dict(meta)
    header.update(
        {
            "range": f"{series.conductor_range[0]}:{series.conductor_range[1]}",
            "classes": "|".join(series.class_names),
            "populations": "|".join(str(p) for p in series.populations),
        }
    )
    with open(path, "w") as fh:
        fh.write("# " + " ".join(f"{k}={v}" for k, v in header.items()) + "\n")
        fh.write("n,p," + ",".join(f"value_{c}" for c in series.class_names) + "\n")
        for i in range(len(series.primes)):
            vals = ",".join(repr(float(series.values[c, i])) for c in range(len(series.class_names)))
            fh.write(f"{i + 1},{series.primes[i]},{vals}\n")
