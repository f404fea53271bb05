"""Prefix-notation terms: parse, serialize, evaluate, measure.

Terms are immutable trees. Every walk is iterative so successor chains of any
depth (the only representations under {1, S}) are safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import TrailingGlyphs, TruncatedTerm, UnknownGlyph, ValueOverflowBudget
from .opset import ADD, FULL_ALPHABET, GLYPH_FOR_ORDER, GLYPHS, MUL, POW, OperatorSet

_DELIMITERS = "'\"`‘’"


class Term:
    """Base class; equality and hashing go through the prefix string."""

    @cached_property
    def text(self) -> str:
        out: list[str] = []
        stack: list[Term] = [self]
        while stack:
            node = stack.pop()
            if isinstance(node, Op):
                out.append(GLYPH_FOR_ORDER[node.order])
                stack.append(node.right)
                stack.append(node.left)
            elif isinstance(node, Succ):
                out.append("S")
                stack.append(node.child)
            else:
                out.append("1")
        return "".join(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Term):
            return NotImplemented
        return self is other or self.text == other.text

    def __hash__(self) -> int:
        return hash(self.text)

    def __len__(self) -> int:
        return len(self.text)

    def __repr__(self) -> str:
        return f"Term({self.text!r})"

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True, eq=False, repr=False)
class Leaf(Term):
    pass


@dataclass(frozen=True, eq=False, repr=False)
class Succ(Term):
    child: Term


@dataclass(frozen=True, eq=False, repr=False)
class Op(Term):
    order: int
    left: Term
    right: Term


ONE = Leaf()


def _strip(text: str) -> str:
    return "".join(ch for ch in str(text) if not ch.isspace() and ch not in _DELIMITERS)


def parse(text: str, ops: OperatorSet = FULL_ALPHABET) -> Term:
    """Parse a glyph string such as ``*SS1SSS1`` into a Term.

    Whitespace and quote delimiters are dropped first; positions in errors
    refer to the stripped string.
    """

    s = _strip(text)
    if not s:
        raise TruncatedTerm("empty term")

    arities = {sym.glyph: sym.arity for sym in ops.symbols}
    need = 1
    for i, ch in enumerate(s):
        arity = arities.get(ch)
        if arity is None:
            raise UnknownGlyph(i, ch)
        if need == 0:
            raise TrailingGlyphs(i)
        need += arity - 1
    if need > 0:
        raise TruncatedTerm(f"{s!r} ends with {need} operand(s) missing")

    # Right-to-left: the stack top is always the next left operand.
    stack: list[Term] = []
    for ch in reversed(s):
        if ch == "1":
            stack.append(ONE)
        elif ch == "S":
            stack.append(Succ(stack.pop()))
        else:
            left = stack.pop()
            right = stack.pop()
            order = GLYPHS[ch].order
            assert order is not None
            stack.append(Op(order, left, right))
    return stack[0]


def serialize(t: Term, ops: OperatorSet | None = None) -> str:
    s = t.text
    if ops is not None:
        for i, ch in enumerate(s):
            if ch not in ops:
                raise UnknownGlyph(i, ch)
    return s


def length(t: Term) -> int:
    return len(t.text)


def evaluate(t: Term, digit_cap: int | None = None) -> int:
    """Exact value of a term.

    With ``digit_cap`` set, any intermediate value whose decimal digit count
    would pass the cap raises ValueOverflowBudget before it is materialised.
    """

    stack: list[int] = []
    for ch in reversed(t.text):
        if ch == "1":
            stack.append(1)
        elif ch == "S":
            stack[-1] += 1
        else:
            left = stack.pop()
            right = stack.pop()
            order = GLYPHS[ch].order
            if order == ADD:
                value = left + right
            elif order == MUL:
                value = left * right
            else:
                if digit_cap is not None and left > 1:
                    # left >= 2 gives at least 0.30103 digits per unit of exponent
                    if right > 4 * digit_cap or right * math.log10(left) > digit_cap:
                        raise ValueOverflowBudget(
                            f"{left}^{right} has more than {digit_cap} digits"
                        )
                value = left**right
            if digit_cap is not None and order != POW and value.bit_length() * 0.30103 > digit_cap + 1:
                raise ValueOverflowBudget(f"intermediate value exceeds {digit_cap} digits")
            stack.append(value)
    return stack[0]


def successors(t: Term, count: int) -> Term:
    for _ in range(count):
        t = Succ(t)
    return t


def numeral(n: int) -> Term:
    """``S^(n-1) 1``, the successor-only representation of n."""
    if n < 1:
        raise ValueError(f"numeral needs n >= 1, got {n}")
    return successors(ONE, n - 1)


def factors(t: Term) -> tuple[Term, ...]:
    """Flatten the top-level multiplication chain, left to right."""
    out: list[Term] = []
    stack: list[Term] = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Op) and node.order == MUL:
            stack.append(node.right)
            stack.append(node.left)
        else:
            out.append(node)
    return tuple(out)


def product_chain(parts: Iterable[Term]) -> Term:
    """Right-nested product ``*a*b...yz`` of the given factors, in order."""
    items = list(parts)
    if not items:
        raise ValueError("product_chain needs at least one factor")
    acc = items[-1]
    for f in reversed(items[:-1]):
        acc = Op(MUL, f, acc)
    return acc
