"""Named checks of the complexity results against computed tables.

Each check sweeps a table (or extremal records, or the oracle) and returns a
VerificationReport: pass, or fail with the first counterexample. Tables are
built on demand and cached per operator set in a VerifyContext.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from typing import Callable, Iterable, Literal

import numpy as np

from minrep.core.config import Settings
from minrep.core.errors import InsufficientRange
from minrep.core.models import ABSENT, Counterexample, ExtremalRecord, VerificationReport
from minrep.core.opset import POW, OperatorSet, resolve_opset
from minrep.core.term import evaluate, length
from minrep.engine.bounds import (
    gamma,
    meets_strong_bound,
    on_strong_bound,
    upper_bound_witness,
    within_upper_bound,
)
from minrep.engine.extremal import check_structure, closed_form_max, closed_form_witness, max_table
from minrep.engine.table import ComplexityTable, EngineConfig, build_table, extend_table, irreducible_numbers

from .curves import ceil_5log4_array, obs_a_array
from .oracle import enumerate_values, term_counts
from .ugly import first_occurrences, histogram, ugly_map

LogstarConvention = Literal["floor", "iterated"]

# Upper-bound witnesses are evaluated one by one; the sweep stops here.
WITNESS_SWEEP = 100_000

ORACLE_OPSETS = ("1S", "1S+", "1S*", "1S+*")

# tower(j) for j = 0..3: 1, 3, 27, 3**27.
_TOWERS = np.array([1, 3, 27, 3**27], dtype=np.int64)


@dataclass
class VerifyContext:
    settings: Settings = field(default_factory=Settings)
    limit: int = 100_000
    config: EngineConfig = field(default_factory=lambda: EngineConfig(progress=False))
    logstar_convention: LogstarConvention = "floor"
    _tables: dict[str, ComplexityTable] = field(default_factory=dict)
    _pinned: set[str] = field(default_factory=set)
    _records: dict[str, list[ExtremalRecord]] = field(default_factory=dict)

    def add_table(self, table: ComplexityTable, *, pinned: bool = True) -> None:
        """Use a prebuilt table; a pinned one is never rebuilt or extended."""
        self._tables[table.ops.id] = table
        if pinned:
            self._pinned.add(table.ops.id)

    def table(self, ops: OperatorSet | str, limit: int | None = None) -> ComplexityTable:
        o = resolve_opset(ops)
        need = self.limit if limit is None else limit
        t = self._tables.get(o.id)
        if t is not None and t.limit >= need:
            return t
        if t is not None and o.id in self._pinned:
            raise InsufficientRange(f"{o.id} table stops at N={t.limit}; the sweep needs N={need}")
        print(f"[verify] building {o.id} table to N={need}", file=sys.stderr)
        t = build_table(o, need, self.config) if t is None else extend_table(t, need, self.config)
        self._tables[o.id] = t
        return t

    def sweep(self, ops: OperatorSet | str, limit: int | None = None) -> tuple[ComplexityTable, int]:
        need = self.limit if limit is None else limit
        return self.table(ops, need), need

    def records(self, ops: OperatorSet | str, k_max: int) -> list[ExtremalRecord]:
        o = resolve_opset(ops)
        cached = self._records.get(o.id)
        if cached is None or len(cached) < k_max:
            cached = max_table(o, k_max, self.settings.digit_cap)
            self._records[o.id] = cached
        return cached[:k_max]


CheckFn = Callable[[VerifyContext, OperatorSet], VerificationReport]


@dataclass(frozen=True)
class Check:
    name: str
    default_ops: str
    summary: str
    run: CheckFn


CHECKS: dict[str, Check] = {}


def _check(name: str, ops: str, summary: str) -> Callable[[CheckFn], CheckFn]:
    def deco(fn: CheckFn) -> CheckFn:
        CHECKS[name] = Check(name, ops, summary, fn)
        return fn

    return deco


def _ok(check: str, o: OperatorSet, rng: str, *, hits: Iterable[int] = (), detail: str = "") -> VerificationReport:
    return VerificationReport(check, o.id, rng, True, boundary_hits=tuple(hits), detail=detail)


def _fail(
    check: str, o: OperatorSet, rng: str, n: int, expected: str, actual: str, *, detail: str = ""
) -> VerificationReport:
    return VerificationReport(check, o.id, rng, False, Counterexample(n, expected, actual), detail=detail)


def _values(t: ComplexityTable, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """(n, c(n)) as int64 arrays for n = 1..n_max; unreachable n carry c = 0."""
    ns = np.arange(1, n_max + 1, dtype=np.int64)
    return ns, t.complexity[1 : n_max + 1].astype(np.int64)


def _linear(name: str, ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    t, n_max = ctx.sweep(o, ctx.settings.linear_sweep_limit)
    ns, c = _values(t, n_max)
    bad = np.flatnonzero(c != ns)
    rng = f"n=1..{n_max}"
    if bad.size:
        n = int(bad[0]) + 1
        return _fail(name, o, rng, n, f"c={n}", f"c={int(c[n - 1])}")
    return _ok(name, o, rng)


@_check("thm_1_1", "1S", "c(n) = n with only 1 and S")
def thm_1_1(ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    return _linear("thm_1_1", ctx, o)


@_check("thm_1_2", "1S+", "c(n) = n with 1, S and +")
def thm_1_2(ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    return _linear("thm_1_2", ctx, o)


def _in_range_records(ctx: VerifyContext, o: OperatorSet, n_max: int) -> list[ExtremalRecord]:
    recs = ctx.records(o, ctx.settings.extremal_kmax)
    out: list[ExtremalRecord] = []
    for r in recs:
        if r.value is None:
            if r.truncated:
                break
            continue
        if r.value > n_max:
            break
        out.append(r)
    if not out:
        raise InsufficientRange(f"no maximal value of {o.id} fits in N={n_max}")
    return out


@_check("thm_1_3", "1S*", "c(v(M(k))) = k for every maximal value inside the table")
def thm_1_3(ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    t, n_max = ctx.sweep(o)
    recs = _in_range_records(ctx, o, n_max)
    rng = f"k=1..{recs[-1].k}"
    for r in recs:
        assert r.value is not None
        c = t.complexity_of(r.value)
        if c != r.k:
            return _fail("thm_1_3", o, rng, r.value, f"c={r.k}", f"c={c}")
    return _ok("thm_1_3", o, rng)


@_check("cor_1_3", "1S*", "every length up to the largest in-range maximum is some c(n)")
def cor_1_3(ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    t, n_max = ctx.sweep(o)
    top = _in_range_records(ctx, o, n_max)[-1].k
    seen = first_occurrences(t)
    rng = f"k=1..{top}"
    for k in range(1, top + 1):
        if k not in seen:
            return _fail("cor_1_3", o, rng, k, f"some n with c(n)={k}", "none")
    return _ok("cor_1_3", o, rng)


@_check("thm_1_4", "1S*", "l(k) < |O|^k and few n have c(n) < log(n)/log|O|")
def thm_1_4(ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    depth = ctx.settings.oracle_depth
    counts = term_counts(o, depth)
    size = o.size
    for k, lk in enumerate(counts, start=1):
        if lk >= size**k:
            return _fail("thm_1_4", o, f"k=1..{depth}", k, f"l(k) < {size}^{k}", f"l(k)={lk}")

    t, n_max = ctx.sweep(o)
    ns, c = _values(t, n_max)
    reach = t.tags[1 : n_max + 1] != ABSENT
    near = np.flatnonzero(reach & (c * math.log(size) < np.log(ns) + 1e-9))
    short = [int(ns[i]) for i in near if size ** int(c[i]) < int(ns[i])]
    rng = f"k=1..{depth} n=1..{n_max}"
    detail = f"{len(short)} n with |O|^c(n) < n"
    if short:
        top = max(t.complexity_of(n) for n in short)
        room = sum(term_counts(o, top))
        if len(short) > room:
            return _fail("thm_1_4", o, rng, short[-1], f"at most {room} such n", f"{len(short)}")
    return _ok("thm_1_4", o, rng, detail=detail)


@_check("thm_1_5", "1S*", "ugly numbers increase strictly with k")
def thm_1_5(ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    t, n_max = ctx.sweep(o)
    ugly = ugly_map(t)
    rng = f"k=1..{max(ugly)}"
    prev = 0
    for k, n in ugly.items():
        if n <= prev:
            return _fail("thm_1_5", o, rng, n, f"n_u({k}) > {prev}", f"n_u({k})={n}")
        prev = n
    return _ok("thm_1_5", o, rng)


@_check("thm_1_6", "1S*", "c(n_u - 1) = c(n_u) - 1 and the witness is S-form")
def thm_1_6(ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    t, n_max = ctx.sweep(o)
    ugly = ugly_map(t)
    rng = f"k=2..{max(ugly)}"
    for k, n in ugly.items():
        if k == 1:
            continue
        prev = t.complexity_of(n - 1)
        if prev != k - 1:
            return _fail("thm_1_6", o, rng, n, f"c(n-1)={k - 1}", f"c(n-1)={prev}")
        text = t.witness(n).text
        if not text.startswith("S"):
            return _fail("thm_1_6", o, rng, n, "witness S...", f"witness {text}")
    return _ok("thm_1_6", o, rng)


@_check("thm_2_1", "1S+*", "c(n) >= (gamma+1)log(n)/log(gamma) - 1")
def thm_2_1(ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    t, n_max = ctx.sweep(o)
    ns, c = _values(t, n_max)
    g = gamma()
    lb = (g + 1.0) * np.log(ns) / math.log(g) - 1.0
    bad = np.flatnonzero(c < lb - 1e-9)
    rng = f"n=1..{n_max}"
    if bad.size:
        i = int(bad[0])
        return _fail("thm_2_1", o, rng, i + 1, f"c>={lb[i]:.4f}", f"c={int(c[i])}")
    return _ok("thm_2_1", o, rng, detail=f"gamma={g:.12f}")


def _strong_equalities(ns: np.ndarray, c: np.ndarray) -> tuple[int | None, list[int]]:
    """(first n below 5log4(n) - 1, all n on it), settled with exact integer powers."""
    raw = 2.5 * np.log2(ns.astype(np.float64)) - 1.0
    first_bad: int | None = None
    equal: list[int] = []
    for i in np.flatnonzero(c < raw + 1e-6):
        n, cn = int(ns[i]), int(c[i])
        if not meets_strong_bound(cn, n):
            if first_bad is None:
                first_bad = n
        elif on_strong_bound(cn, n):
            equal.append(n)
    return first_bad, equal


@_check("thm_2_1_strong", "1S*", "c(n) >= 5log4(n) - 1")
def thm_2_1_strong(ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    t, n_max = ctx.sweep(o)
    ns, c = _values(t, n_max)
    first_bad, equal = _strong_equalities(ns, c)
    rng = f"n=1..{n_max}"
    if first_bad is not None:
        return _fail(
            "thm_2_1_strong", o, rng, first_bad, "c>=5log4(n)-1", f"c={t.complexity_of(first_bad)}"
        )
    return _ok("thm_2_1_strong", o, rng, hits=equal)


@_check("cor_2_1", "1S*", "c(n) = 5log4(n) - 1 exactly when n = 4^j (j >= 1)")
def cor_2_1(ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    t, n_max = ctx.sweep(o)
    ns, c = _values(t, n_max)
    _, equal = _strong_equalities(ns, c)
    powers: list[int] = []
    p = 4
    while p <= n_max:
        powers.append(p)
        p *= 4
    rng = f"n=1..{n_max}"
    diff = sorted(set(equal) ^ set(powers))
    if diff:
        n = diff[0]
        expected = "equality" if n in powers else "strict"
        actual = "strict" if n in powers else "equality"
        return _fail("cor_2_1", o, rng, n, expected, actual)
    return _ok("cor_2_1", o, rng, hits=equal)


@_check("thm_2_2", "1S*", "c(n) <= 8log4(n) + 2, with the base-4 witness as proof")
def thm_2_2(ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    t, n_max = ctx.sweep(o)
    ns, c = _values(t, n_max)
    ub = 4.0 * np.log2(ns.astype(np.float64)) + 2.0
    rng = f"n=1..{n_max}"
    for i in np.flatnonzero(c > ub - 1e-6):
        n, cn = int(ns[i]), int(c[i])
        if not within_upper_bound(cn, n):
            return _fail("thm_2_2", o, rng, n, "c<=8log4(n)+2", f"c={cn}")
    for n in range(1, min(n_max, WITNESS_SWEEP) + 1):
        w = upper_bound_witness(n)
        v = evaluate(w)
        if v != n or not within_upper_bound(length(w), n):
            return _fail("thm_2_2", o, rng, n, "base-4 witness within bound", f"{w.text} = {v}")
    return _ok("thm_2_2", o, rng, detail=f"witness sweep n=1..{min(n_max, WITNESS_SWEEP)}")


@_check("thm_2_3", "1S*", "v(M(k)) = 3^r 4^(m-r) for k >= 11")
def thm_2_3(ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    k_max = ctx.settings.extremal_kmax
    rng = f"k=11..{k_max}"
    for r in ctx.records(o, k_max)[10:]:
        want = closed_form_max(r.k)
        if r.value != want:
            return _fail("thm_2_3", o, rng, r.k, f"v={want}", f"v={r.value}")
        text = closed_form_witness(r.k).text
        if r.witness is None or r.witness.text != text:
            got = r.witness.text if r.witness is not None else "none"
            return _fail("thm_2_3", o, rng, r.k, f"witness {text}", f"witness {got}")
    return _ok("thm_2_3", o, rng)


@_check("prop_2_1", "1S*", "factor rules on maximal product witnesses")
def prop_2_1(ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    k_max = ctx.settings.structure_kmax
    rng = f"k=1..{k_max}"
    for r in ctx.records(o, k_max):
        rep = check_structure(r)
        if not rep.passed:
            return _fail("prop_2_1", o, rng, r.k, "no violations", "; ".join(rep.violations))
    return _ok("prop_2_1", o, rng)


@_check("thm_4_1", "1S^", "c(n) >= 4logstar3(n) - 1 with 1, S and ^")
def thm_4_1(ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    t, n_max = ctx.sweep(o)
    ns, c = _values(t, n_max)
    if ctx.logstar_convention == "floor":
        ls = np.searchsorted(_TOWERS[1:], ns, side="right")
    else:
        ls = np.searchsorted(_TOWERS, ns, side="left")
    bound = 4 * ls - 1
    reach = t.tags[1 : n_max + 1] != ABSENT
    rng = f"n=1..{n_max}"
    bad = np.flatnonzero(reach & (c < bound))
    if bad.size:
        i = int(bad[0])
        return _fail(
            "thm_4_1", o, rng, i + 1, f"c>={int(bound[i])}", f"c={int(c[i])}",
            detail=f"logstar convention {ctx.logstar_convention}",
        )
    hits = (np.flatnonzero(reach & (c == bound)) + 1).tolist()
    return _ok("thm_4_1", o, rng, hits=hits, detail=f"logstar convention {ctx.logstar_convention}")


@_check("obs_3_1", "1S+*", "c(n) < (c(n_u) + 1)(a + 1) - 2 with n <= a^a")
def obs_3_1(ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    t, n_max = ctx.sweep(o)
    ns, c = _values(t, n_max)
    a = obs_a_array(ns)
    ugly = ugly_map(t)
    # c(n_u) for the largest ugly number of complexity <= a, indexed by a.
    cu = np.array([0] + [max(k for k in ugly if k <= x) for x in range(1, int(a.max()) + 1)])
    bound = (cu[a] + 1) * (a + 1) - 2
    rng = f"n=1..{n_max}"
    bad = np.flatnonzero(c > bound)
    if bad.size:
        i = int(bad[0])
        return _fail("obs_3_1", o, rng, i + 1, f"c<{int(bound[i])}", f"c={int(c[i])}")
    hits = (np.flatnonzero(c == bound) + 1).tolist()
    return _ok("obs_3_1", o, rng, hits=hits)


@_check("obs_3_2", "1S+*", "c(n) <= ceil(5log4(n) + a + 1)")
def obs_3_2(ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    t, n_max = ctx.sweep(o)
    ns, c = _values(t, n_max)
    bound = ceil_5log4_array(ns) + obs_a_array(ns) + 1
    rng = f"n=1..{n_max}"
    bad = np.flatnonzero(c > bound)
    if bad.size:
        i = int(bad[0])
        return _fail("obs_3_2", o, rng, i + 1, f"c<={int(bound[i])}", f"c={int(c[i])}")
    return _ok("obs_3_2", o, rng)


@_check("obs_3_3", "1S*", "1S* and 1S+* tables agree element-wise")
def obs_3_3(ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    t_mul, n_max = ctx.sweep("1S*")
    t_both = ctx.table("1S+*", n_max)
    rng = f"n=1..{n_max}"
    n = t_mul.first_difference(t_both, n_max)
    if n is not None:
        return _fail(
            "obs_3_3", resolve_opset("1S*"), rng, n,
            f"c={int(t_mul.complexity[n])}", f"c={int(t_both.complexity[n])} with +",
        )
    return _ok("obs_3_3", resolve_opset("1S*"), rng, detail="compared against 1S+*")


@_check("obs_3_4", "1S*", "counts per complexity are nondecreasing over complete k")
def obs_3_4(ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    t, n_max = ctx.sweep(o)
    k_top = int(t.complexity[1 : n_max + 1].max())
    rows = histogram(t, ctx.records(o, k_top))
    irreducible = irreducible_numbers(t)
    start = (max(irreducible) if irreducible else 0) + 1
    complete = [r for r in rows if r.complete and r.k >= start]
    if not complete:
        raise InsufficientRange(f"no complete complexity class from k={start} at N={n_max}")
    rng = f"k={start}..{complete[-1].k}"
    for prev, cur in zip(complete, complete[1:]):
        if cur.count < prev.count:
            return _fail("obs_3_4", o, rng, cur.k, f"count>={prev.count}", f"count={cur.count}")
    return _ok("obs_3_4", o, rng)


@_check("oracle_match", "1S+*", "table minima equal exhaustive enumeration")
def oracle_match(ctx: VerifyContext, o: OperatorSet) -> VerificationReport:
    depth = ctx.settings.oracle_depth
    res = enumerate_values(
        o,
        depth,
        value_cap=ctx.settings.oracle_value_cap,
        value_limit=ctx.limit if o.has_order(POW) else None,
    )
    top = max(res.minimal)
    t = ctx.table(o, top)
    rng = f"len<={depth} n=1..{top}"
    for v in sorted(res.minimal):
        k = res.minimal[v]
        c = t.complexity_of(v)
        if c != k:
            return _fail("oracle_match", o, rng, v, f"c={k}", f"c={c}")
    c_all = t.complexity[1 : top + 1].astype(np.int64)
    reach = t.tags[1 : top + 1] != ABSENT
    for i in np.flatnonzero(reach & (c_all <= depth)):
        if int(i) + 1 not in res.minimal:
            return _fail("oracle_match", o, rng, int(i) + 1, "found by enumeration", "missing")
    return _ok("oracle_match", o, rng, detail=f"{len(res.minimal)} values")


def plan(check_ids: Iterable[str]) -> list[tuple[str, str]]:
    """Expand ``all`` and give each check its operator set(s)."""
    ids = list(check_ids)
    if "all" in ids:
        ids = list(CHECKS)
    out: list[tuple[str, str]] = []
    for cid in ids:
        if cid not in CHECKS:
            raise KeyError(cid)
        if cid == "oracle_match":
            out.extend((cid, ops) for ops in ORACLE_OPSETS)
        else:
            out.append((cid, CHECKS[cid].default_ops))
    return out


def verify(check_id: str, ctx: VerifyContext, ops: OperatorSet | str | None = None) -> VerificationReport:
    check = CHECKS[check_id]
    o = resolve_opset(ops if ops is not None else check.default_ops)
    report = check.run(ctx, o)
    line = f"[verify] {check_id} {report.opset} {report.range_verified}: {report.outcome}"
    if report.counterexample is not None:
        line += f" ({report.counterexample.describe()})"
    print(line, file=sys.stderr)
    return report
