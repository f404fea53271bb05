"""Ascending-n dynamic programme for c_O(n), n = 1..N.

Storage is a pair of views over the same buffers: ``array.array`` for fast
scalar reads in the Python loop and numpy for the vectorised product pushes.
Products are pushed forward: once n is final, every a*n (2 <= a <= n) within
range receives the candidate c(a) + c(n) + 1. Pushes for a fixed target
arrive with decreasing a, so accepting ties keeps the smallest left operand.
"""

from __future__ import annotations

import array
import sys
import time
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from tqdm import tqdm

from minrep.core.config import Settings
from minrep.core.errors import ComplexityOverflow, LimitTooLarge, OutOfRange, Unreachable
from minrep.core.models import (
    ABSENT,
    BASE,
    SPLIT_ADD,
    SPLIT_MUL,
    SPLIT_POW,
    SPLIT_TAGS,
    SUCCESSOR,
    Provenance,
)
from minrep.core.opset import ADD, MUL, POW, OperatorSet, resolve_opset
from minrep.core.term import ONE, Op, Term, successors

from .bounds import prune_bound_array

# Pushes shorter than this run as a plain loop; numpy setup costs more.
_SMALL_PUSH = 12

_U32 = next(tc for tc in "IL" if array.array(tc).itemsize == 4)


@dataclass(frozen=True)
class EngineConfig:
    memory_budget_mb: int = 64
    prune_sums: bool = True
    progress_every: int = 100_000
    progress: bool = True
    debug: bool = False

    @staticmethod
    def from_settings(settings: Settings, *, progress: bool = True) -> "EngineConfig":
        return EngineConfig(
            memory_budget_mb=settings.memory_budget_mb,
            prune_sums=settings.prune_sums,
            progress_every=settings.progress_every,
            progress=progress,
            debug=settings.debug,
        )


@dataclass
class BuildStats:
    elapsed_sec: float = 0.0
    sum_candidates: int = 0
    max_sum_operand: int = 0
    max_sum_operand_at: int = 0


def width_for(ops: OperatorSet) -> int:
    """Bytes per complexity value: 1 when * keeps c(n) logarithmic, else 2."""
    return 1 if ops.has_order(MUL) else 2


def check_memory(limit: int, width: int, budget_mb: int) -> None:
    need = (limit + 1) * (width + 5)
    if need > budget_mb * 1024 * 1024:
        raise LimitTooLarge(
            f"N={limit} needs {need / 2**20:.1f} MiB of table storage; budget is {budget_mb} MiB"
        )


@dataclass
class ComplexityTable:
    """c_O(n) plus provenance for n = 1..limit. Index 0 of every array is unused."""

    ops: OperatorSet
    limit: int
    width: int
    complexity: np.ndarray
    tags: np.ndarray
    args: np.ndarray
    stats: BuildStats = field(default_factory=BuildStats)

    def _check(self, n: int) -> None:
        if n < 1 or n > self.limit:
            raise OutOfRange(f"n={n} outside 1..{self.limit}")
        if self.tags[n] == ABSENT:
            raise Unreachable(f"n={n} has no representation over {self.ops.id}")

    def is_reachable(self, n: int) -> bool:
        return 1 <= n <= self.limit and self.tags[n] != ABSENT

    def complexity_of(self, n: int) -> int:
        self._check(n)
        return int(self.complexity[n])

    def provenance(self, n: int) -> Provenance:
        if n < 1 or n > self.limit:
            raise OutOfRange(f"n={n} outside 1..{self.limit}")
        return Provenance(int(self.tags[n]), int(self.args[n]))

    def right_operand(self, n: int) -> int:
        tag = int(self.tags[n])
        a = int(self.args[n])
        if tag == SPLIT_ADD:
            return n - a
        if tag == SPLIT_MUL:
            return n // a
        if tag == SPLIT_POW:
            b, x = 0, 1
            while x < n:
                x *= a
                b += 1
            return b
        raise ValueError(f"n={n} is not a split")

    def witness(self, n: int) -> Term:
        """Rebuild a minimal term from provenance; successor runs are unrolled, not recursed."""
        self._check(n)
        tags = self.tags
        results: list[Term] = []
        # (0, m) expands m; (1, order, steps) joins the two newest results.
        stack: list[tuple[int, ...]] = [(0, n)]
        while stack:
            item = stack.pop()
            if item[0] == 0:
                m = item[1]
                steps = 0
                while tags[m] == SUCCESSOR:
                    m -= 1
                    steps += 1
                tag = int(tags[m])
                if tag == BASE:
                    results.append(successors(ONE, steps))
                    continue
                stack.append((1, SPLIT_TAGS[tag], steps))
                stack.append((0, self.right_operand(m)))
                stack.append((0, int(self.args[m])))
            else:
                right = results.pop()
                left = results.pop()
                results.append(successors(Op(item[1], left, right), item[2]))
        return results[0]

    def values(self) -> Iterator[tuple[int, int]]:
        """(n, c(n)) for reachable n, ascending."""
        c = self.complexity.tolist()
        t = self.tags.tolist()
        for n in range(1, self.limit + 1):
            if t[n] != ABSENT:
                yield n, c[n]

    def first_difference(self, other: "ComplexityTable", upto: int | None = None) -> int | None:
        """First n (<= upto) where the complexities differ, or None."""
        m = min(self.limit, other.limit) if upto is None else upto
        diff = np.flatnonzero(
            self.complexity[1 : m + 1].astype(np.int64) != other.complexity[1 : m + 1].astype(np.int64)
        )
        return int(diff[0]) + 1 if diff.size else None


def complexity_of(table: ComplexityTable, n: int) -> int:
    return table.complexity_of(n)


def witness(table: ComplexityTable, n: int) -> Term:
    return table.witness(n)


def irreducible_numbers(table: ComplexityTable) -> list[int]:
    """All n with c(n) = n."""
    n = np.arange(table.limit + 1)
    hit = (table.complexity.astype(np.int64) == n) & (table.tags != ABSENT)
    hit[0] = False
    return np.flatnonzero(hit).tolist()


def _perfect_powers(limit: int) -> dict[int, list[tuple[int, int]]]:
    out: dict[int, list[tuple[int, int]]] = {}
    a = 2
    while a * a <= limit:
        b = 2
        x = a * a
        while x <= limit:
            out.setdefault(x, []).append((a, b))
            b += 1
            x *= a
        a += 1
    return out


class _Builder:
    """Owns the growing buffers; ``run`` finalises n = start..limit in order."""

    def __init__(self, ops: OperatorSet, limit: int, config: EngineConfig) -> None:
        self.ops = ops
        self.limit = limit
        self.config = config
        self.width = width_for(ops)
        self.max_value = (1 << (8 * self.width)) - 1
        check_memory(limit, self.width, config.memory_budget_mb)

        self.cbuf = array.array("B" if self.width == 1 else "H", bytes(self.width * (limit + 1)))
        self.tbuf = array.array("B", bytes(limit + 1))
        self.abuf = array.array(_U32, bytes(4 * (limit + 1)))
        self.cv = np.frombuffer(self.cbuf, dtype=np.uint8 if self.width == 1 else np.uint16)
        self.tv = np.frombuffer(self.tbuf, dtype=np.uint8)
        self.av = np.frombuffer(self.abuf, dtype=np.uint32)
        self.stats = BuildStats()

    def adopt(self, old: ComplexityTable) -> None:
        m = old.limit
        self.cv[: m + 1] = old.complexity[: m + 1]
        self.tv[: m + 1] = old.tags[: m + 1]
        self.av[: m + 1] = old.args[: m + 1]
        self.stats.sum_candidates = old.stats.sum_candidates
        self.stats.max_sum_operand = old.stats.max_sum_operand
        self.stats.max_sum_operand_at = old.stats.max_sum_operand_at

    def replay_pushes(self, old_limit: int) -> None:
        """Products of already-final factors that land in (old_limit, limit], b ascending."""
        if not self.ops.has_order(MUL):
            return
        cl = self.cbuf
        for b in range(2, old_limit + 1):
            cb = cl[b]
            if not cb:
                continue
            lo = max(2, old_limit // b + 1)
            hi = min(b, self.limit // b)
            if lo <= hi:
                self._push(b, cb, lo, hi)

    def _push(self, n: int, cn: int, lo: int, hi: int) -> None:
        cl, tl, al = self.cbuf, self.tbuf, self.abuf
        if hi - lo < _SMALL_PUSH:
            for a in range(lo, hi + 1):
                ca = cl[a]
                if not ca:
                    continue
                v = ca + cn + 1
                idx = a * n
                cur = cl[idx]
                if cur == 0 or v <= cur:
                    if v > self.max_value:
                        raise ComplexityOverflow(f"c({idx}) candidate {v} exceeds {self.max_value}")
                    cl[idx] = v
                    tl[idx] = SPLIT_MUL
                    al[idx] = a
            return
        a = np.arange(lo, hi + 1, dtype=np.int64)
        ca = self.cv[lo : hi + 1].astype(np.int64)
        idx = a * n
        vals = ca + (cn + 1)
        cur = self.cv[idx].astype(np.int64)
        ok = (ca != 0) & ((cur == 0) | (vals <= cur))
        if not ok.any():
            return
        sel = idx[ok]
        vals = vals[ok]
        if int(vals.max()) > self.max_value:
            raise ComplexityOverflow(f"product candidate {int(vals.max())} exceeds {self.max_value}")
        self.cv[sel] = vals
        self.tv[sel] = SPLIT_MUL
        self.av[sel] = a[ok]

    def run(self, start: int) -> None:
        ops = self.ops
        limit = self.limit
        cfg = self.config
        has_succ = ops.has_successor
        has_add = ops.has_order(ADD)
        has_mul = ops.has_order(MUL)
        powers = _perfect_powers(limit) if ops.has_order(POW) else {}
        prune = cfg.prune_sums
        lbl = prune_bound_array(ops, limit // 2 + 1).tolist() if has_add and prune else []
        max_value = self.max_value
        cl, tl, al = self.cbuf, self.tbuf, self.abuf
        stats = self.stats
        every = max(1, cfg.progress_every)

        t0 = time.monotonic()
        bar_on = cfg.progress and limit - start + 1 >= every
        progress = tqdm(
            total=limit - start + 1,
            desc=f"c[{ops.id}]",
            unit="n",
            unit_scale=True,
            file=sys.stderr,
            disable=not bar_on,
        )
        try:
            for n in range(start, limit + 1):
                if n == 1:
                    best, tag, arg = 1, BASE, 0
                else:
                    best, tag, arg = cl[n], tl[n], al[n]
                    if has_succ:
                        p = cl[n - 1]
                        if p and (best == 0 or p + 1 <= best):
                            best, tag, arg = p + 1, SUCCESSOR, 0
                    for a, b in powers.get(n, ()):
                        ca, cb = cl[a], cl[b]
                        if ca and cb:
                            cand = ca + cb + 1
                            if best == 0 or cand < best:
                                best, tag, arg = cand, SPLIT_POW, a
                    if has_add:
                        # + must beat a successor but only tie a * or ^ split.
                        if best == 0:
                            bar = 1 << 30
                        else:
                            bar = best if tag == SUCCESSOR else best + 1
                        tail = lbl[(n + 1) // 2] + 1 if prune else 0
                        last = 0
                        for a in range(1, n // 2 + 1):
                            # Same stop rule as bounds.sum_split_prune.
                            if prune and lbl[a] + tail >= bar:
                                break
                            last = a
                            ca = cl[a]
                            cb = cl[n - a]
                            if ca and cb:
                                cand = ca + cb + 1
                                if cand < bar:
                                    best, tag, arg = cand, SPLIT_ADD, a
                                    bar = cand
                        stats.sum_candidates += last
                        if last > stats.max_sum_operand:
                            stats.max_sum_operand = last
                            stats.max_sum_operand_at = n
                if best > max_value:
                    raise ComplexityOverflow(f"c({n}) = {best} does not fit in {self.width} byte(s)")
                if best == 0:
                    tag, arg = ABSENT, 0
                cl[n] = best
                tl[n] = tag
                al[n] = arg
                if has_mul and best:
                    hi = min(n, limit // n)
                    if hi >= 2:
                        self._push(n, best, 2, hi)
                if (n - start + 1) % every == 0:
                    progress.update(every)
            progress.update(progress.total - progress.n)
        finally:
            progress.close()
        stats.elapsed_sec += time.monotonic() - t0
        if cfg.debug:
            print(
                f"[debug] engine: ops={ops.id} n={start}..{limit} {stats.elapsed_sec:.2f}s "
                f"sum-candidates={stats.sum_candidates} max-a={stats.max_sum_operand}"
                f"@{stats.max_sum_operand_at}",
                file=sys.stderr,
            )

    def table(self) -> ComplexityTable:
        return ComplexityTable(
            ops=self.ops,
            limit=self.limit,
            width=self.width,
            complexity=self.cv,
            tags=self.tv,
            args=self.av,
            stats=self.stats,
        )


def build_table(ops: OperatorSet | str, limit: int, config: EngineConfig | None = None) -> ComplexityTable:
    """Exact c_O(n) and provenance for every n in 1..limit.

    Tie-break on equal lengths: successor, then + , * , ^ splits, then the
    smallest left operand.
    """

    o = resolve_opset(ops)
    if limit < 1:
        raise OutOfRange(f"limit must be >= 1, got {limit}")
    b = _Builder(o, limit, config or EngineConfig())
    b.run(1)
    return b.table()


def extend_table(table: ComplexityTable, limit: int, config: EngineConfig | None = None) -> ComplexityTable:
    """Grow a finished table to a larger limit; the result equals a fresh build at that limit."""
    if limit < table.limit:
        raise OutOfRange(f"cannot shrink a table from {table.limit} to {limit}")
    if limit == table.limit:
        return table
    b = _Builder(table.ops, limit, config or EngineConfig())
    b.adopt(table)
    b.replay_pushes(table.limit)
    b.stats.elapsed_sec = table.stats.elapsed_sec
    b.run(table.limit + 1)
    return b.table()
