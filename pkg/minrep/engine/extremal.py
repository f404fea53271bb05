"""Largest value reachable with exactly k symbols, by big-integer DP over k."""

from __future__ import annotations

import math
import sys
from collections import Counter

from minrep.core.errors import KTooSmall
from minrep.core.models import TRUNCATED_NOTE, ExtremalRecord, StructureReport
from minrep.core.opset import ADD, MUL, OperatorSet, resolve_opset
from minrep.core.term import ONE, Op, Succ, Term, evaluate, factors, numeral, product_chain

_LOG10_2 = math.log10(2)

Factor = tuple[int, Term]


def _digits(x: int) -> float:
    return x.bit_length() * _LOG10_2


def _combine(order: int, a: int, b: int, digit_cap: int) -> int | None:
    """a o b, or None when the result would pass ``digit_cap`` decimal digits."""
    if order == ADD:
        return a + b
    if order == MUL:
        if _digits(a) + _digits(b) > digit_cap + 2:
            return None
        return a * b
    if a > 1 and b * math.log10(a) > digit_cap:
        return None
    return a**b


def max_table(ops: OperatorSet | str, k_max: int, digit_cap: int = 1_000_000) -> list[ExtremalRecord]:
    """ExtremalRecord for k = 1..k_max.

    Candidates are tried successor first, then binary operators by order,
    then by ascending left length; the first maximum wins. Product witnesses
    are rewritten as an ascending right-nested chain of their factors.
    Once a value passes ``digit_cap`` digits that k and every later k are
    recorded as truncated.
    """

    o = resolve_opset(ops)
    if k_max < 1:
        raise KTooSmall(f"k_max must be >= 1, got {k_max}")

    best: list[int] = [0, 1]
    chains: list[list[Factor] | None] = [None, None]
    wits: list[Term] = [ONE, ONE]
    out: list[ExtremalRecord] = [ExtremalRecord(1, 1, ONE)]
    orders = sorted(o.orders)

    for k in range(2, k_max + 1):
        val = 0
        wit: Term | None = None
        chain: list[Factor] | None = None
        over = False
        if o.has_successor and best[k - 1]:
            val = best[k - 1] + 1
            wit = Succ(wits[k - 1])
        for order in orders:
            for k1 in range(1, k - 1):
                k2 = k - 1 - k1
                if not best[k1] or not best[k2]:
                    continue
                v = _combine(order, best[k1], best[k2], digit_cap)
                if v is None:
                    over = True
                    continue
                if v > val:
                    val = v
                    if order == MUL:
                        chain = _flat(k1, best, chains, wits) + _flat(k2, best, chains, wits)
                        wit = None
                    else:
                        chain = None
                        wit = Op(order, wits[k1], wits[k2])
        if over:
            print(f"[extremal] k={k}: value passes {digit_cap} digits, truncating", file=sys.stderr)
            out.extend(
                ExtremalRecord(j, None, None, truncated=True, note=TRUNCATED_NOTE)
                for j in range(k, k_max + 1)
            )
            break
        if val == 0:
            # Nothing has exactly k symbols (e.g. no successor and k even).
            best.append(0)
            chains.append(None)
            wits.append(ONE)
            out.append(ExtremalRecord(k, None, None, note="no term of this length"))
            continue
        if chain is not None:
            chain.sort(key=lambda f: (f[0], f[1].text))
            wit = product_chain(t for _, t in chain)
        assert wit is not None
        best.append(val)
        chains.append(chain)
        wits.append(wit)
        out.append(ExtremalRecord(k, val, wit))
    return out


def _flat(k: int, best: list[int], chains: list[list[Factor] | None], wits: list[Term]) -> list[Factor]:
    c = chains[k]
    return list(c) if c is not None else [(best[k], wits[k])]


def closed_form_split(k: int) -> tuple[int, int]:
    """(m, r) with k = 5m - 1 - r and 0 <= r <= 4."""
    if k < 11:
        raise KTooSmall(f"closed form needs k >= 11, got {k}")
    r = (-(k + 1)) % 5
    return (k + 1 + r) // 5, r


def closed_form_max(k: int) -> int:
    m, r = closed_form_split(k)
    return 3**r * 4 ** (m - r)


def closed_form_witness(k: int) -> Term:
    m, r = closed_form_split(k)
    return product_chain([numeral(3)] * r + [numeral(4)] * (m - r))


def check_structure(record: ExtremalRecord) -> StructureReport:
    """Factor rules for maximal products; a witness that is not a product passes vacuously."""
    if record.witness is None:
        return StructureReport(record.k, ())
    parts = factors(record.witness)
    values = tuple(evaluate(p) for p in parts)
    if len(parts) < 2:
        return StructureReport(record.k, values)

    counts = Counter(values)
    bad: list[str] = []
    for v in (6, 7):
        if counts[v]:
            bad.append(f"factor {v} present")
    if counts[2] > 1:
        bad.append(f"{counts[2]} factors equal to 2")
    if counts[5] > 1:
        bad.append(f"{counts[5]} factors equal to 5")
    if counts[3] > 4:
        bad.append(f"{counts[3]} factors equal to 3")
    if record.k >= 11:
        stray = sorted(v for v in counts if v not in (3, 4))
        if stray:
            bad.append("factors other than 3 and 4: " + " ".join(map(str, stray)))
    return StructureReport(record.k, values, tuple(bad))
