"""Comma-separated text exports; one header row, deterministic order, no timestamps."""

from __future__ import annotations

import csv
from typing import Any, Iterable, TextIO

from minrep.core.models import (
    BoundsRow,
    ExtremalRecord,
    HistogramRow,
    OracleResult,
    UglyRecord,
    VerificationReport,
)
from minrep.engine.table import ComplexityTable

REPORT_HEADER = ("check", "opset", "range", "outcome", "counterexample")


def _writer(out: TextIO) -> Any:
    return csv.writer(out, lineterminator="\n")


def write_table_rows(table: ComplexityTable, out: TextIO, *, upto: int | None = None) -> int:
    """``n,complexity,witness`` per reachable n <= upto; returns the row count."""
    m = table.limit if upto is None else min(upto, table.limit)
    w = _writer(out)
    w.writerow(("n", "complexity", "witness"))
    rows = 0
    for n, c in table.values():
        if n > m:
            break
        w.writerow((n, c, table.witness(n).text))
        rows += 1
    return rows


def write_extremal(records: Iterable[ExtremalRecord], out: TextIO) -> None:
    w = _writer(out)
    w.writerow(("k", "value", "witness"))
    for r in records:
        if r.value is None:
            w.writerow((r.k, r.note, ""))
        else:
            w.writerow((r.k, r.value, r.witness.text if r.witness is not None else ""))


def write_ugly(records: Iterable[UglyRecord], out: TextIO) -> None:
    w = _writer(out)
    w.writerow(("n", "witness", "complexity", "primality"))
    for r in records:
        w.writerow((r.n_u, r.witness.text, r.complexity, "Prime" if r.is_prime else "Not Prime"))


def write_histogram(rows: Iterable[HistogramRow], out: TextIO) -> None:
    w = _writer(out)
    w.writerow(("k", "count", "complete"))
    for r in rows:
        w.writerow((r.k, r.count, "true" if r.complete else "false"))


def write_bounds(rows: Iterable[BoundsRow], out: TextIO) -> None:
    w = _writer(out)
    w.writerow(("n", "complexity", "lower", "upper", "obs_product", "obs_log"))
    for r in rows:
        w.writerow((r.n, r.complexity, f"{r.lower:.6f}", f"{r.upper:.6f}", r.obs_product, r.obs_log))


def write_census(result: OracleResult, out: TextIO) -> None:
    census = result.census
    w = _writer(out)
    w.writerow(("k", "terms", "distinct_values", "alphabet_power"))
    for k in range(1, census.max_len + 1):
        w.writerow(
            (k, census.terms_of_length(k), census.distinct_values[k - 1], census.alphabet_size**k)
        )


def write_reports(reports: Iterable[VerificationReport], out: TextIO, *, header: bool = True) -> None:
    w = _writer(out)
    if header:
        w.writerow(REPORT_HEADER)
    for r in reports:
        ce = r.counterexample.describe() if r.counterexample is not None else ""
        w.writerow((r.check, r.opset, r.range_verified, r.outcome, ce))
