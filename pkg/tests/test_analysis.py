"""Tests for ugly numbers, histograms, bound curves and the exhaustive oracle."""

from __future__ import annotations

import numpy as np
import pytest

from minrep.analysis.curves import (
    bounds_series,
    ceil_5log4,
    ceil_5log4_array,
    obs_a_array,
    obs_log_bound,
    obs_product_bound,
)
from minrep.analysis.oracle import enumerate_values, term_counts
from minrep.analysis.ugly import efficient_numbers, first_occurrences, histogram, ugly_map, ugly_numbers
from minrep.core.errors import BudgetExceeded
from minrep.core.numtheory import obs_a
from minrep.core.term import evaluate, length, parse
from minrep.engine.table import ComplexityTable, EngineConfig, build_table


class TestUglyNumbers:
    """Tests for the smallest n of each complexity."""

    def test_reference_rows(self, mul_table: ComplexityTable, ugly_rows) -> None:
        """n_u, complexity and primality for k = 8..40 match the reference table."""
        got = {r.complexity: r for r in ugly_numbers(mul_table, min_k=8)}
        expected = [row for row in ugly_rows if int(row["complexity"]) <= 40]
        assert len(expected) == 33
        assert sorted(got) == [int(row["complexity"]) for row in expected]
        for row in expected:
            rec = got[int(row["complexity"])]
            assert rec.n_u == int(row["n"])
            assert rec.is_prime == (row["primality"] == "Prime")

    def test_reference_witnesses_have_right_shape(self, ugly_rows) -> None:
        """Every reference witness evaluates to n_u with length k."""
        for row in ugly_rows:
            w = parse(row["witness"])
            assert evaluate(w) == int(row["n"])
            assert length(w) == int(row["complexity"])

    def test_witnesses_are_successor_form(self, mul_table: ComplexityTable) -> None:
        """Every ugly number past 1 is reached by a successor."""
        for rec in ugly_numbers(mul_table, min_k=2):
            assert rec.witness.text.startswith("S")
            assert evaluate(rec.witness) == rec.n_u
            assert length(rec.witness) == rec.complexity

    def test_map_is_contiguous(self, mul_table: ComplexityTable) -> None:
        """ugly_map covers k = 1..40 with no gaps at N = 16000."""
        m = ugly_map(mul_table)
        assert list(m) == list(range(1, 41))
        assert m[7] == 7
        assert m[8] == 10

    def test_first_occurrences_on_sparse_table(self) -> None:
        """Without S only k = 1 is realised below 10."""
        t = build_table("1^", 10, EngineConfig(progress=False))
        assert first_occurrences(t) == {1: 1}
        assert ugly_map(t) == {1: 1}

    def test_efficient_numbers(self, mul_records) -> None:
        """Efficient numbers are the maximal values per length."""
        eff = efficient_numbers(mul_records[:14])
        assert eff[6] == (7, 9)
        assert eff[-1] == (14, 64)


class TestHistogram:
    """Tests for counts per complexity."""

    def test_small_classes(self, mul_table: ComplexityTable, mul_records) -> None:
        """c = 7 holds {7, 8, 9}; c = 8 holds {10, 12}; c = 9 holds {11, 13, 15, 16}."""
        rows = {r.k: r for r in histogram(mul_table, mul_records)}
        assert rows[1].count == 1
        assert rows[7].count == 3
        assert rows[8].count == 2
        assert rows[9].count == 4
        assert rows[10].count == 4
        assert rows[11].count == 5
        assert rows[7].complete

    def test_counts_cover_the_table(self, mul_table: ComplexityTable, mul_records) -> None:
        """Counts sum to N and completeness follows v(M(k)) <= N."""
        rows = histogram(mul_table, mul_records)
        assert sum(r.count for r in rows) == mul_table.limit
        for r in rows:
            assert r.complete == (mul_records[r.k - 1].value <= mul_table.limit)

    def test_builds_records_when_missing(self, succ_table: ComplexityTable) -> None:
        """Without records the maxima are computed on the fly."""
        rows = histogram(succ_table)
        assert len(rows) == 1000
        assert all(r.count == 1 and r.complete for r in rows)


class TestCurves:
    """Tests for the empirical bound curves."""

    def test_obs_a_array_matches_scalar(self) -> None:
        """The searchsorted form agrees with the loop."""
        ns = np.arange(1, 5000, dtype=np.int64)
        assert obs_a_array(ns).tolist() == [obs_a(int(n)) for n in ns]

    def test_obs_a_array_range(self) -> None:
        """Inputs past 12**12 are refused."""
        with pytest.raises(ValueError):
            obs_a_array(np.array([12**12 + 1], dtype=np.int64))

    @pytest.mark.parametrize(("n", "j"), [(1, 0), (2, 3), (4, 5), (12, 9), (16, 10), (64, 15), (65, 16)])
    def test_ceil_5log4(self, n: int, j: int) -> None:
        """Smallest j with 4**j >= n**5."""
        assert ceil_5log4(n) == j

    def test_ceil_5log4_array(self) -> None:
        """The vectorised form is exact at powers of 4 too."""
        ns = np.arange(1, 20_000, dtype=np.int64)
        assert ceil_5log4_array(ns).tolist() == [ceil_5log4(int(n)) for n in ns]

    def test_bound_values(self, mul_table: ComplexityTable) -> None:
        """Both observation bounds at a few points."""
        ugly = ugly_map(mul_table)
        # obs_a(10) = 3; the ugly number of complexity 3 is 3.
        assert obs_product_bound(10, ugly) == (3 + 1) * (3 + 1) - 2
        assert obs_log_bound(10) == ceil_5log4(10) + 3 + 1

    def test_series(self, add_mul_table: ComplexityTable) -> None:
        """Rows sit between the proven lower bound and the observation curves."""
        rows = bounds_series(add_mul_table, stride=37)
        assert rows[0].n == 1
        assert rows[1].n == 38
        for r in rows:
            assert r.lower <= r.complexity + 1e-9
            assert r.complexity <= r.upper + 1e-9
            assert r.complexity <= r.obs_product
            assert r.complexity <= r.obs_log

    def test_series_rejects_bad_stride(self, add_mul_table: ComplexityTable) -> None:
        """stride must be positive."""
        with pytest.raises(ValueError):
            bounds_series(add_mul_table, stride=0)


class TestOracle:
    """Tests for exhaustive enumeration."""

    def test_term_counts(self) -> None:
        """l(k) by the composition recurrence."""
        assert term_counts("1S", 6) == [1] * 6
        assert term_counts("1S*", 5) == [1, 1, 2, 4, 9]
        assert term_counts("1S+*", 5) == [1, 1, 3, 7, 21]
        assert term_counts("1*", 5) == [1, 0, 1, 0, 2]

    def test_counts_stay_below_alphabet_power(self) -> None:
        """l(k) < |O|^k."""
        for op_id, size in (("1S", 2), ("1S*", 3), ("1S+*", 4), ("1S^", 3)):
            for k, lk in enumerate(term_counts(op_id, 14), start=1):
                assert lk < size**k

    def test_successor_census(self) -> None:
        """Under 1S each length has one term and one value."""
        res = enumerate_values("1S", 10)
        assert res.census.term_counts == (1,) * 10
        assert res.census.distinct_values == (1,) * 10
        assert res.minimal == {n: n for n in range(1, 11)}

    def test_minimal_lengths_match_table(self, mul_table: ComplexityTable) -> None:
        """Minimal lengths from enumeration equal c(n) under 1S*."""
        res = enumerate_values("1S*", 12)
        assert max(res.minimal) == 36
        for v, k in res.minimal.items():
            assert mul_table.complexity_of(v) == k
        assert res.census.alphabet_size == 3

    def test_value_limit_drops_large_values(self) -> None:
        """Values above the limit are dropped and counted."""
        res = enumerate_values("1S^", 10, value_limit=100)
        assert max(res.minimal) <= 100
        assert res.dropped_values > 0
        assert res.minimal[27] == 7

    def test_value_cap(self) -> None:
        """A set larger than the cap raises BudgetExceeded."""
        with pytest.raises(BudgetExceeded):
            enumerate_values("1S+*", 14, value_cap=20)

    def test_rejects_empty_depth(self) -> None:
        """max_len must be positive."""
        with pytest.raises(ValueError):
            enumerate_values("1S*", 0)
