"""Exhaustive enumeration of short terms, independent of the per-n table DP.

Terms of length k are composed from shorter ones: S applied to length k-1,
and every binary operator over all k1 + k2 = k - 1. Only the *sets* of values
are kept per length; the number of terms l(k) is counted exactly alongside.
"""

from __future__ import annotations

import math

from minrep.core.errors import BudgetExceeded
from minrep.core.models import OracleResult, TermCensus
from minrep.core.opset import ADD, MUL, OperatorSet, resolve_opset

# Digit ceiling for ^ when no value limit is given.
_POW_DIGITS = 10_000


def term_counts(ops: OperatorSet | str, max_len: int) -> list[int]:
    """l(1..max_len): every term evaluates to a natural, so this counts all terms."""
    o = resolve_opset(ops)
    n_bin = len(o.orders)
    counts = [0, 1]
    for k in range(2, max_len + 1):
        total = counts[k - 1] if o.has_successor else 0
        for k1 in range(1, k - 1):
            total += n_bin * counts[k1] * counts[k - 1 - k1]
        counts.append(total)
    return counts[1:]


def _apply(order: int, a: int, b: int, value_limit: int | None) -> int | None:
    if order == ADD:
        return a + b
    if order == MUL:
        return a * b
    if a == 1:
        return 1
    bits = b * math.log2(a)
    if value_limit is not None:
        if bits > value_limit.bit_length() + 1:
            return None
    elif bits * math.log10(2) > _POW_DIGITS:
        raise BudgetExceeded(f"{a}^{b} passes {_POW_DIGITS} digits; give a value limit")
    return a**b


def enumerate_values(
    ops: OperatorSet | str,
    max_len: int = 14,
    *,
    value_cap: int = 2_000_000,
    value_limit: int | None = None,
) -> OracleResult:
    """Value sets by length and the minimal length of every value reached.

    Values above ``value_limit`` are dropped (an operator result is never
    smaller than its non-unit operands, so nothing below the limit is lost).
    """

    o = resolve_opset(ops)
    if max_len < 1:
        raise ValueError(f"max_len must be >= 1, got {max_len}")
    orders = sorted(o.orders)
    sets: list[frozenset[int]] = [frozenset(), frozenset({1})]
    minimal: dict[int, int] = {1: 1}
    dropped: set[int] = set()

    for k in range(2, max_len + 1):
        acc: set[int] = set()
        if o.has_successor:
            acc.update(v + 1 for v in sets[k - 1])
        for order in orders:
            for k1 in range(1, k - 1):
                right = sets[k - 1 - k1]
                for a in sets[k1]:
                    for b in right:
                        v = _apply(order, a, b, value_limit)
                        if v is not None:
                            acc.add(v)
                if len(acc) > value_cap:
                    raise BudgetExceeded(f"{len(acc)} values at length {k} (cap {value_cap})")
        if value_limit is not None:
            over = {v for v in acc if v > value_limit}
            dropped |= over
            acc -= over
        if len(acc) > value_cap:
            raise BudgetExceeded(f"{len(acc)} values at length {k} (cap {value_cap})")
        for v in acc:
            minimal.setdefault(v, k)
        sets.append(frozenset(acc))

    census = TermCensus(
        opset=o.id,
        max_len=max_len,
        term_counts=tuple(term_counts(o, max_len)),
        distinct_values=tuple(len(s) for s in sets[1:]),
        alphabet_size=o.size,
    )
    return OracleResult(census=census, minimal=minimal, dropped_values=len(dropped))
