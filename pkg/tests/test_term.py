"""Unit tests for term parsing, serialization and evaluation."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minrep.core.errors import TrailingGlyphs, TruncatedTerm, UnknownGlyph, ValueOverflowBudget
from minrep.core.opset import OperatorSet
from minrep.core.term import (
    ONE,
    Op,
    Succ,
    evaluate,
    factors,
    length,
    numeral,
    parse,
    product_chain,
    serialize,
    successors,
)

# Random well-formed strings over 1, S, + and *.
terms = st.recursive(
    st.just("1"),
    lambda kids: st.one_of(
        kids.map(lambda t: "S" + t),
        st.tuples(st.sampled_from("+*"), kids, kids).map("".join),
    ),
    max_leaves=12,
)


def _reference_value(text: str) -> int:
    """Plain recursive reading of a prefix string (short inputs only)."""

    def go(i: int) -> tuple[int, int]:
        ch = text[i]
        if ch == "1":
            return 1, i + 1
        if ch == "S":
            v, j = go(i + 1)
            return v + 1, j
        a, j = go(i + 1)
        b, k = go(j)
        return {"+": a + b, "*": a * b, "^": a**b}[ch], k

    value, end = go(0)
    assert end == len(text)
    return value


class TestParse:
    """Tests for turning glyph strings into terms."""

    def test_parse_one(self) -> None:
        """The single glyph 1 is the constant."""
        assert parse("1") == ONE
        assert evaluate(parse("1")) == 1

    def test_parse_product(self) -> None:
        """*SS1SSS1 is 3 * 4."""
        t = parse("*SS1SSS1")
        assert isinstance(t, Op)
        assert evaluate(t) == 12
        assert length(t) == 8

    def test_parse_all_hyperoperations(self) -> None:
        """+SS1*SS1^S1SS1 is 3 + 3 * 2^3."""
        t = parse("+SS1*SS1^S1SS1")
        assert evaluate(t) == 27
        assert length(t) == 14

    def test_whitespace_and_quotes_are_dropped(self) -> None:
        """Delimiters around a term do not count as glyphs."""
        assert parse(" 'S*SS1SS1' ").text == "S*SS1SS1"
        assert parse("`* SS1 SS1`").text == "*SS1SS1"

    def test_unknown_glyph_reports_position(self) -> None:
        """An unknown glyph names its position and character."""
        with pytest.raises(UnknownGlyph) as exc:
            parse("S*S2")
        assert exc.value.position == 3
        assert exc.value.glyph == "2"

    def test_glyph_outside_operator_set(self) -> None:
        """A glyph the operator set lacks is unknown to it."""
        with pytest.raises(UnknownGlyph):
            parse("+11", OperatorSet.from_id("1S*"))

    def test_truncated_term(self) -> None:
        """Running out of input before all operands is an error."""
        with pytest.raises(TruncatedTerm):
            parse("*SS1")
        with pytest.raises(TruncatedTerm):
            parse("")

    def test_trailing_glyphs(self) -> None:
        """Glyphs after a complete term are rejected."""
        with pytest.raises(TrailingGlyphs) as exc:
            parse("S11")
        assert exc.value.position == 2

    def test_deep_successor_chain(self) -> None:
        """Chains far past the recursion limit parse and evaluate."""
        text = "S" * 20_000 + "1"
        t = parse(text)
        assert evaluate(t) == 20_001
        assert serialize(t) == text
        assert len(t) == 20_001


class TestSerialize:
    """Tests for serialize/length and structural helpers."""

    def test_serialize_checks_operator_set(self) -> None:
        """Serializing against an opset rejects foreign glyphs."""
        t = parse("+S11")
        assert serialize(t) == "+S11"
        with pytest.raises(UnknownGlyph):
            serialize(t, OperatorSet.from_id("1S*"))

    def test_numeral_and_successors(self) -> None:
        """numeral(n) is S^(n-1) 1."""
        assert numeral(1).text == "1"
        assert numeral(4).text == "SSS1"
        assert successors(numeral(3), 2).text == "SSSS1"
        with pytest.raises(ValueError):
            numeral(0)

    def test_factors_flatten_product_chain(self) -> None:
        """Nested products flatten left to right; other terms are one factor."""
        t = parse("*SS1*SS1SSS1")
        assert [f.text for f in factors(t)] == ["SS1", "SS1", "SSS1"]
        assert factors(parse("S*SS1SS1")) == (parse("S*SS1SS1"),)

    def test_product_chain_is_right_nested(self) -> None:
        """product_chain builds *a*b...z."""
        t = product_chain([numeral(3), numeral(3), numeral(4)])
        assert t.text == "*SS1*SS1SSS1"
        assert evaluate(t) == 36

    def test_terms_compare_by_text(self) -> None:
        """Structurally equal terms are equal and hash alike."""
        a = Op(2, Succ(ONE), Succ(Succ(ONE)))
        b = parse("*S1SS1")
        assert a == b
        assert hash(a) == hash(b)
        assert repr(a) == "Term('*S1SS1')"


class TestEvaluate:
    """Tests for exact evaluation."""

    def test_power(self) -> None:
        """^SS1SS1 is 27."""
        assert evaluate(parse("^SS1SS1")) == 27

    def test_digit_cap_stops_large_powers(self) -> None:
        """A power past the digit cap raises instead of materialising."""
        t = parse("^SS1^SS1^SS1SS1")
        with pytest.raises(ValueOverflowBudget):
            evaluate(t, digit_cap=1000)

    def test_digit_cap_with_huge_exponent(self) -> None:
        """An exponent too large for a float still hits the digit cap."""
        t = parse("^S1^S1^S1" + "S" * 1999 + "1")
        with pytest.raises(ValueOverflowBudget):
            evaluate(t, digit_cap=1000)

    def test_digit_cap_allows_small_values(self) -> None:
        """Values inside the cap are computed normally."""
        assert evaluate(parse("^SS1^SS1SS1"), digit_cap=20) == 3**27

    @settings(max_examples=200, deadline=None)
    @given(terms)
    def test_round_trip_and_value(self, text: str) -> None:
        """parse/serialize round-trips and the value matches a direct reading."""
        t = parse(text)
        assert serialize(t) == text
        assert length(t) == len(text)
        assert evaluate(t) == _reference_value(text)
