"""Empirical bound curves (the product and log observations) and plot-ready series."""

from __future__ import annotations

import math

import numpy as np

from minrep.core.models import BoundsRow
from minrep.core.numtheory import obs_a
from minrep.engine.bounds import lower_bound, upper_bound
from minrep.engine.table import ComplexityTable

from .ugly import ugly_map

# a**a for a = 1..12; obs_a(n) for n up to 12**12.
_SELF_POWERS = np.array([a**a for a in range(1, 13)], dtype=np.int64)


def obs_a_array(ns: np.ndarray) -> np.ndarray:
    """Vectorised obs_a: smallest a with a**a >= n."""
    if ns.size and int(ns.max()) > int(_SELF_POWERS[-1]):
        raise ValueError("obs_a_array covers n <= 12**12")
    return np.searchsorted(_SELF_POWERS, ns, side="left") + 1


def ceil_5log4(n: int) -> int:
    """Smallest j with 4**j >= n**5, i.e. ceil(5*log4(n))."""
    target = n**5
    j = max(0, math.ceil(2.5 * math.log2(n)))
    while j > 0 and 4 ** (j - 1) >= target:
        j -= 1
    while 4**j < target:
        j += 1
    return j


def ceil_5log4_array(ns: np.ndarray) -> np.ndarray:
    raw = 2.5 * np.log2(ns.astype(np.float64))
    out = np.ceil(raw).astype(np.int64)
    near = np.flatnonzero(np.abs(raw - np.rint(raw)) < 1e-6)
    for i in near:
        out[i] = ceil_5log4(int(ns[i]))
    return out


def obs_product_bound(n: int, ugly: dict[int, int]) -> int:
    """(c(n_u) + 1)(a + 1) - 2, n_u the largest ugly number of complexity <= a = obs_a(n)."""
    a = obs_a(n)
    cu = max(k for k in ugly if k <= a)
    return (cu + 1) * (a + 1) - 2


def obs_log_bound(n: int) -> int:
    """ceil(5*log4(n) + a + 1) with a = obs_a(n); a is natural, so it leaves the ceiling."""
    return ceil_5log4(n) + obs_a(n) + 1


def bounds_series(table: ComplexityTable, stride: int = 1) -> list[BoundsRow]:
    """Sampled n with c(n) against both proven bounds and both observation curves."""
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    ugly = ugly_map(table)
    rows: list[BoundsRow] = []
    for n in range(1, table.limit + 1, stride):
        if not table.is_reachable(n):
            continue
        rows.append(
            BoundsRow(
                n=n,
                complexity=int(table.complexity[n]),
                lower=lower_bound(table.ops, n),
                upper=upper_bound(n),
                obs_product=obs_product_bound(n, ugly),
                obs_log=obs_log_bound(n),
            )
        )
    return rows
