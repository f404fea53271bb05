"""Exception types shared by the library and the CLI."""

from __future__ import annotations


class MinrepError(ValueError):
    """Base class for every contract violation raised by minrep."""


class InvalidOperatorSet(MinrepError):
    pass


class NoConstant(InvalidOperatorSet):
    """The operator set has no constant-one symbol."""


class UnknownGlyph(MinrepError):
    def __init__(self, position: int, glyph: str) -> None:
        super().__init__(f"unknown glyph {glyph!r} at position {position}")
        self.position = position
        self.glyph = glyph


class TruncatedTerm(MinrepError):
    """Input ended before every operand was supplied."""


class TrailingGlyphs(MinrepError):
    def __init__(self, position: int) -> None:
        super().__init__(f"trailing glyphs after a complete term at position {position}")
        self.position = position


class ValueOverflowBudget(MinrepError):
    """Evaluating a term would exceed the caller's digit budget."""


class LimitTooLarge(MinrepError):
    pass


class ComplexityOverflow(LimitTooLarge):
    """A complexity value does not fit the table's storage width."""


class OutOfRange(MinrepError):
    pass


class Unreachable(MinrepError):
    pass


class KTooSmall(MinrepError):
    pass


class BudgetExceeded(MinrepError):
    pass


class InsufficientRange(MinrepError):
    pass


class TableFormatError(MinrepError):
    """A table file is corrupt: bad magic, unknown version or truncated."""


class OpsetMismatch(MinrepError):
    pass
