from __future__ import annotations

from dataclasses import dataclass, field

from .term import Term

# Provenance rule tags, also the on-disk tag byte.
ABSENT = 0
BASE = 1
SUCCESSOR = 2
SPLIT_ADD = 3
SPLIT_MUL = 4
SPLIT_POW = 5

SPLIT_TAGS: dict[int, int] = {SPLIT_ADD: 1, SPLIT_MUL: 2, SPLIT_POW: 3}

TRUNCATED_NOTE = "3↑↑b-dominated"


@dataclass(frozen=True)
class Provenance:
    """How the minimum for one n was reached.

    For splits, ``operand`` is the left operand a; the right one is n - a,
    n // a or the exponent b with a**b == n.
    """

    tag: int
    operand: int = 0

    @property
    def rule(self) -> str:
        return {
            ABSENT: "absent",
            BASE: "base",
            SUCCESSOR: "successor",
            SPLIT_ADD: "split+",
            SPLIT_MUL: "split*",
            SPLIT_POW: "split^",
        }.get(self.tag, "?")

    @property
    def order(self) -> int | None:
        return SPLIT_TAGS.get(self.tag)


@dataclass(frozen=True)
class ExtremalRecord:
    """Maximal value reachable with exactly k symbols."""

    k: int
    value: int | None
    witness: Term | None
    truncated: bool = False
    note: str = ""


@dataclass(frozen=True)
class StructureReport:
    k: int
    factor_values: tuple[int, ...]
    violations: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class UglyRecord:
    n_u: int
    complexity: int
    witness: Term
    is_prime: bool


@dataclass(frozen=True)
class Counterexample:
    n: int
    expected: str
    actual: str

    def describe(self) -> str:
        # No commas: this lands in a CSV cell.
        return f"n={self.n} expected={self.expected} actual={self.actual}"


@dataclass(frozen=True)
class VerificationReport:
    check: str
    opset: str
    range_verified: str
    passed: bool
    counterexample: Counterexample | None = None
    boundary_hits: tuple[int, ...] = ()
    detail: str = ""

    def __post_init__(self) -> None:
        if not self.passed and self.counterexample is None:
            raise ValueError(f"{self.check}: a failed report needs a counterexample")

    @property
    def outcome(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass(frozen=True)
class TermCensus:
    """Per length k: number of terms l(k) and number of distinct values."""

    opset: str
    max_len: int
    term_counts: tuple[int, ...]
    distinct_values: tuple[int, ...]
    alphabet_size: int = 0

    def terms_of_length(self, k: int) -> int:
        return self.term_counts[k - 1]


@dataclass
class OracleResult:
    census: TermCensus
    minimal: dict[int, int] = field(default_factory=dict)
    dropped_values: int = 0


@dataclass(frozen=True)
class HistogramRow:
    k: int
    count: int
    # v(M(k)) <= N, so every n of complexity k is inside the table.
    complete: bool


@dataclass(frozen=True)
class BoundsRow:
    n: int
    complexity: int
    lower: float
    upper: float
    obs_product: int
    obs_log: int
