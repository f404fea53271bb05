from __future__ import annotations

import numpy as np

from minrep.core.models import ABSENT, ExtremalRecord, HistogramRow, UglyRecord
from minrep.core.numtheory import is_prime
from minrep.engine.extremal import max_table
from minrep.engine.table import ComplexityTable


def first_occurrences(table: ComplexityTable) -> dict[int, int]:
    """k -> smallest n <= N with c(n) = k, for every k realised in the table."""
    c = table.complexity[1:].astype(np.int64)
    reach = table.tags[1:] != ABSENT
    ks, idx = np.unique(c[reach], return_index=True)
    ns = np.flatnonzero(reach)[idx] + 1
    return {int(k): int(n) for k, n in zip(ks, ns)}


def ugly_map(table: ComplexityTable) -> dict[int, int]:
    """Ugly numbers by complexity, k = 1 up to the first k whose ugly number lies past N.

    Ugly numbers increase with k, so a realised k after a gap cannot occur
    with a successor present; without one the run still stops at the gap.
    """

    first = first_occurrences(table)
    out: dict[int, int] = {}
    k = 1
    while k in first:
        out[k] = first[k]
        k += 1
    return out


def ugly_numbers(table: ComplexityTable, *, min_k: int = 1) -> list[UglyRecord]:
    return [
        UglyRecord(n_u=n, complexity=k, witness=table.witness(n), is_prime=is_prime(n))
        for k, n in ugly_map(table).items()
        if k >= min_k
    ]


def efficient_numbers(records: list[ExtremalRecord]) -> list[tuple[int, int]]:
    """(k, n_e) pairs; the efficient number of complexity k is v(M(k))."""
    return [(r.k, r.value) for r in records if r.value is not None]


def histogram(table: ComplexityTable, records: list[ExtremalRecord] | None = None) -> list[HistogramRow]:
    c = table.complexity[1:].astype(np.int64)
    reach = table.tags[1:] != ABSENT
    counts = np.bincount(c[reach])
    k_top = len(counts) - 1
    if records is None:
        records = max_table(table.ops, max(k_top, 1))
    rows: list[HistogramRow] = []
    for k in range(1, k_top + 1):
        v = records[k - 1].value if k <= len(records) else None
        rows.append(HistogramRow(k, int(counts[k]), v is not None and v <= table.limit))
    return rows
