from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .errors import InvalidOperatorSet, NoConstant

Kind = Literal["one", "successor", "hyperop"]

# Hyperoperation orders.
ADD = 1
MUL = 2
POW = 3

PRESETS: tuple[str, ...] = ("1S", "1S+", "1S*", "1S+*", "1S^")


@dataclass(frozen=True)
class Symbol:
    glyph: str
    arity: int
    kind: Kind
    order: int | None = None

    def __post_init__(self) -> None:
        if len(self.glyph) != 1:
            raise InvalidOperatorSet(f"glyph must be a single character, got {self.glyph!r}")
        expected = {"one": 0, "successor": 1, "hyperop": 2}[self.kind]
        if self.arity != expected:
            raise InvalidOperatorSet(f"{self.glyph!r}: {self.kind} symbols have arity {expected}")
        if self.kind == "hyperop" and self.order not in (ADD, MUL, POW):
            raise InvalidOperatorSet(f"{self.glyph!r}: binary symbol needs order 1, 2 or 3")


GLYPHS: dict[str, Symbol] = {
    "1": Symbol("1", 0, "one"),
    "S": Symbol("S", 1, "successor"),
    "+": Symbol("+", 2, "hyperop", ADD),
    "*": Symbol("*", 2, "hyperop", MUL),
    "^": Symbol("^", 2, "hyperop", POW),
}

GLYPH_FOR_ORDER: dict[int, str] = {ADD: "+", MUL: "*", POW: "^"}


@dataclass(frozen=True)
class OperatorSet:
    """The alphabet O: the constant 1, optionally S, and binary hyperoperations.

    The id is the concatenation of glyphs in canonical order ("1S+*^"), so
    "1S*" and "1*S" name the same set.
    """

    symbols: tuple[Symbol, ...]

    def __post_init__(self) -> None:
        glyphs = [s.glyph for s in self.symbols]
        if len(set(glyphs)) != len(glyphs):
            raise InvalidOperatorSet(f"duplicate glyphs in {''.join(glyphs)!r}")
        kinds = [s.kind for s in self.symbols]
        if kinds.count("one") == 0:
            raise NoConstant(f"operator set {''.join(glyphs)!r} has no constant 1")
        if kinds.count("one") > 1:
            raise InvalidOperatorSet("exactly one constant-one symbol is allowed")
        if kinds.count("successor") > 1:
            raise InvalidOperatorSet("at most one successor symbol is allowed")
        orders = [s.order for s in self.symbols if s.kind == "hyperop"]
        if len(set(orders)) != len(orders):
            raise InvalidOperatorSet("each hyperoperation order may appear once")

    @staticmethod
    def from_id(op_id: str) -> "OperatorSet":
        raw = str(op_id).strip()
        if not raw:
            raise NoConstant("empty operator set id")
        syms: list[Symbol] = []
        for i, ch in enumerate(raw):
            sym = GLYPHS.get(ch)
            if sym is None:
                raise InvalidOperatorSet(f"unknown glyph {ch!r} at position {i} of {raw!r}")
            syms.append(sym)
        order = "1S+*^"
        return OperatorSet(symbols=tuple(sorted(syms, key=lambda s: order.index(s.glyph))))

    @property
    def id(self) -> str:
        return "".join(s.glyph for s in self.symbols)

    @property
    def size(self) -> int:
        """|O|, the number of symbols."""
        return len(self.symbols)

    @property
    def has_successor(self) -> bool:
        return any(s.kind == "successor" for s in self.symbols)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(s.order for s in self.symbols if s.order is not None)

    def has_order(self, order: int) -> bool:
        return order in self.orders

    def arity(self, glyph: str) -> int | None:
        for s in self.symbols:
            if s.glyph == glyph:
                return s.arity
        return None

    def __contains__(self, glyph: object) -> bool:
        return any(s.glyph == glyph for s in self.symbols)

    def __str__(self) -> str:
        return self.id


def resolve_opset(ops: OperatorSet | str) -> OperatorSet:
    return ops if isinstance(ops, OperatorSet) else OperatorSet.from_id(ops)


FULL_ALPHABET = OperatorSet.from_id("1S+*^")
