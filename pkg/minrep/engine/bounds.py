"""Lower/upper complexity bounds and the sum-split pruning rule."""

from __future__ import annotations

import math
from functools import cache
from typing import Callable, Literal

import numpy as np
from scipy.optimize import brentq

from minrep.core.numtheory import logstar3_floor
from minrep.core.opset import ADD, MUL, POW, OperatorSet, resolve_opset
from minrep.core.term import Op, Term, numeral, successors

Prune = Literal["keep", "stop"]

# Slack for float bounds compared against integer lengths.
_EPS = 1e-9


@cache
def gamma() -> float:
    """Maximiser of log(w)/(w+1): the root of ln w = 1 + 1/w (about 3.591)."""
    return float(brentq(lambda w: math.log(w) - 1.0 - 1.0 / w, 3.0, 4.0, xtol=1e-15))


def gamma_bound(n: int) -> float:
    g = gamma()
    return (g + 1.0) * math.log(n) / math.log(g) - 1.0


def strong_bound(n: int) -> float:
    """5*log4(n) - 1; log2 keeps powers of 4 exact."""
    return 2.5 * math.log2(n) - 1.0


def logstar_bound(n: int) -> float:
    return 4.0 * logstar3_floor(n) - 1.0


def upper_bound(n: int) -> float:
    """8*log4(n) + 2."""
    return 4.0 * math.log2(n) + 2.0


def lower_bound_fn(ops: OperatorSet | str) -> Callable[[int], float]:
    """Tightest valid lower bound on c_O(n) for the operator set.

    - only S and/or +: every term has value <= length, so c(n) >= n
    - * without ^: 5*log4(n) - 1, or the gamma form once + is present
    - ^ as the only binary operator: 4*logstar3(n) - 1 (tower-floor logstar)
    - anything else: the trivial bound 1
    """

    o = resolve_opset(ops)
    orders = set(o.orders)
    if orders <= {ADD}:
        return lambda n: float(n)
    if MUL in orders and POW not in orders:
        return gamma_bound if ADD in orders else strong_bound
    if orders == {POW}:
        return logstar_bound
    return lambda n: 1.0


def lower_bound(ops: OperatorSet | str, n: int) -> float:
    if n < 1:
        raise ValueError(f"lower_bound needs n >= 1, got {n}")
    return lower_bound_fn(ops)(n)


def prune_bound_fn(ops: OperatorSet | str) -> Callable[[int], int]:
    """Integer version of lower_bound_fn (lengths are integers), never below 1."""
    lb = lower_bound_fn(ops)
    return lambda n: max(1, math.ceil(lb(n) - _EPS))


def prune_bound_array(ops: OperatorSet | str, m: int) -> np.ndarray:
    """prune_bound_fn evaluated on 0..m as int64 (slot 0 is unused and holds 1)."""
    o = resolve_opset(ops)
    orders = set(o.orders)
    x = np.arange(m + 1, dtype=np.float64)
    x[0] = 1.0
    if orders <= {ADD}:
        raw = x
    elif MUL in orders and POW not in orders:
        if ADD in orders:
            g = gamma()
            raw = (g + 1.0) * np.log(x) / math.log(g) - 1.0
        else:
            raw = 2.5 * np.log2(x) - 1.0
    else:
        lb = prune_bound_fn(o)
        out = np.ones(m + 1, dtype=np.int64)
        out[1:] = [lb(v) for v in range(1, m + 1)]
        return out
    out = np.maximum(1, np.ceil(raw - _EPS)).astype(np.int64)
    out[0] = 1
    return out


def sum_split_prune(a: int, n: int, best_so_far: int, lb: Callable[[int], float]) -> Prune:
    """Decide whether the a-ascending scan over sum splits a + (n - a) may stop.

    For every a' >= a (still <= n/2): c(a') >= lb(a) and c(n - a') >= lb(ceil(n/2)),
    so once lb(a) + lb(ceil(n/2)) + 1 reaches best_so_far nothing later can beat it.
    """

    if lb(a) + lb((n + 1) // 2) + 1 >= best_so_far:
        return "stop"
    return "keep"


FOUR = numeral(4)


def upper_bound_witness(n: int) -> Term:
    """Base-4 Horner term: rep(n) = S^(n mod 4)(* rep(n div 4) SSS1), rep(n<=3) = numeral."""
    if n < 1:
        raise ValueError(f"upper_bound_witness needs n >= 1, got {n}")
    digits: list[int] = []
    while n > 3:
        digits.append(n % 4)
        n //= 4
    t = numeral(n)
    for d in reversed(digits):
        t = successors(Op(MUL, t, FOUR), d)
    return t


def meets_strong_bound(c: int, n: int) -> bool:
    """Exact c >= 5*log4(n) - 1, i.e. 4**(c+1) >= n**5."""
    return 4 ** (c + 1) >= n**5


def on_strong_bound(c: int, n: int) -> bool:
    """Exact c == 5*log4(n) - 1."""
    return 4 ** (c + 1) == n**5


def within_upper_bound(c: int, n: int) -> bool:
    """Exact c <= 8*log4(n) + 2, i.e. 4**(c-2) <= n**8."""
    return c <= 2 or 4 ** (c - 2) <= n**8
