"""Tests for the lexical-token baseline: the source lexer and slt_compare."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lowdup import (
    LexKind,
    LexToken,
    Mode,
    RunConfig,
    compare_paths,
    lex_source,
    slt_compare,
)
from lowdup.errors import UnterminatedComment, UnterminatedString
from lowdup.slt import KEYWORDS, OPERATORS, abstract_identifiers

SOURCES = "tests/data/sources"
FIXTURES = "tests/data/fixtures"


def kinds_and_texts(tokens):
    return [(token.kind, token.text) for token in tokens]


class TestLexer:
    def test_simple_statement(self):
        assert kinds_and_texts(lex_source("a = b;")) == [
            (LexKind.IDENTIFIER, "a"),
            (LexKind.OPERATOR, "="),
            (LexKind.IDENTIFIER, "b"),
            (LexKind.DELIMITER, ";"),
        ]

    def test_empty_source(self):
        assert lex_source("") == []
        assert lex_source("   \t\r\n") == []

    def test_comments_vanish(self):
        assert kinds_and_texts(lex_source("/*x*/ f()")) == [
            (LexKind.IDENTIFIER, "f"),
            (LexKind.DELIMITER, "("),
            (LexKind.DELIMITER, ")"),
        ]
        assert [t.text for t in lex_source("x // gone\ny")] == ["x", "y"]
        assert lex_source("/* multi\n line */") == []

    def test_keywords_and_literal_words(self):
        tokens = lex_source("int x = true; return null;")
        assert [(t.kind, t.text) for t in tokens if t.kind is LexKind.KEYWORD] == [
            (LexKind.KEYWORD, "int"),
            (LexKind.KEYWORD, "true"),
            (LexKind.KEYWORD, "return"),
            (LexKind.KEYWORD, "null"),
        ]
        assert "x" in [t.text for t in tokens if t.kind is LexKind.IDENTIFIER]

    def test_keyword_prefix_is_still_an_identifier(self):
        (token,) = lex_source("interface_")
        assert token.kind is LexKind.IDENTIFIER

    @pytest.mark.parametrize(
        "source,text",
        [
            ("42", "42"),
            ("3.14", "3.14"),
            ("0x1F", "0x1F"),
            ("1e-9", "1e-9"),
            (".5", ".5"),
            ("1.5f", "1.5f"),
            ("0b1010", "0b1010"),
            ("1_000", "1_000"),
        ],
    )
    def test_numbers_lex_as_single_tokens(self, source, text):
        (token,) = lex_source(source)
        assert token == LexToken(LexKind.NUMBER, text)

    def test_dot_without_digit_is_a_delimiter(self):
        assert kinds_and_texts(lex_source("a.b")) == [
            (LexKind.IDENTIFIER, "a"),
            (LexKind.DELIMITER, "."),
            (LexKind.IDENTIFIER, "b"),
        ]

    def test_string_and_char_literals_keep_their_quotes(self):
        assert lex_source('"hi"') == [LexToken(LexKind.STRING, '"hi"')]
        assert lex_source(r'"a\"b"') == [LexToken(LexKind.STRING, r'"a\"b"')]
        assert lex_source("'c'") == [LexToken(LexKind.CHAR, "'c'")]
        assert lex_source(r"'\''") == [LexToken(LexKind.CHAR, r"'\''")]
        assert lex_source(r"'\n'") == [LexToken(LexKind.CHAR, r"'\n'")]

    def test_operators_munch_longest_first(self):
        assert [t.text for t in lex_source("a>>>=b")] == ["a", ">>>=", "b"]
        assert [t.text for t in lex_source("x+++y")] == ["x", "++", "+", "y"]
        assert [t.text for t in lex_source("a->b")] == ["a", "->", "b"]
        assert [t.text for t in lex_source("List::of")] == ["List", "::", "of"]

    def test_every_delimiter_is_kept(self):
        tokens = lex_source("@f(a[0], {1});")
        assert [t.text for t in tokens if t.kind is LexKind.DELIMITER] == [
            "@", "(", "[", "]", ",", "{", "}", ")", ";",
        ]

    def test_byte_order_mark_is_stripped(self):
        assert kinds_and_texts(lex_source("﻿int")) == [(LexKind.KEYWORD, "int")]

    def test_out_of_grammar_character_becomes_an_operator(self):
        (token,) = lex_source("#")
        assert token == LexToken(LexKind.OPERATOR, "#")

    @pytest.mark.parametrize("source", ['"abc', "'a", '"ab\\', '"ab\ncd"'])
    def test_unterminated_literal(self, source):
        with pytest.raises(UnterminatedString):
            lex_source(source)

    def test_unterminated_block_comment(self):
        with pytest.raises(UnterminatedComment):
            lex_source("f();\n/* never closed")

    def test_lex_errors_carry_the_opening_position(self):
        with pytest.raises(UnterminatedString) as excinfo:
            lex_source('x;\n  "oops')
        assert excinfo.value.line == 2
        assert excinfo.value.column == 3
        assert "line 2" in str(excinfo.value)

    def test_abstract_identifiers_collapses_names_only(self):
        tokens = lex_source('foo(bar, 1, "s");')
        blurred = abstract_identifiers(tokens)
        assert [t.text for t in blurred] == ["<id>", "(", "<id>", ",", "1", ",", '"s"', ")", ";"]
        assert [t.kind for t in blurred] == [t.kind for t in tokens]


WORDS = st.sampled_from(["alpha", "bee", "count", "int", "while", "x1", "_tmp"])
NUMBERS = st.sampled_from(["0", "7", "42", "3.5", "1e3"])
STRINGS = st.sampled_from(['"a"', '"hello there"', "'c'"])
PUNCT = st.sampled_from(list("()[]{};,.@") + list(OPERATORS))
CHUNKS = st.one_of(WORDS, NUMBERS, STRINGS, PUNCT)


class TestLexerProperties:
    @settings(max_examples=300, deadline=None)
    @given(st.lists(CHUNKS, max_size=30))
    def test_space_joined_chunks_round_trip(self, chunks):
        tokens = lex_source(" ".join(chunks))
        rendered = " ".join(token.text for token in tokens)
        assert lex_source(rendered) == tokens

    @settings(max_examples=300, deadline=None)
    @given(st.text(max_size=200))
    def test_lexing_is_total_or_fails_structurally(self, text):
        try:
            tokens = lex_source(text)
        except (UnterminatedString, UnterminatedComment):
            return
        assert all(token.text for token in tokens)
        assert lex_source(text) == tokens

    @settings(max_examples=300, deadline=None)
    @given(st.lists(CHUNKS, max_size=30))
    def test_keywords_never_lex_as_identifiers(self, chunks):
        for token in lex_source(" ".join(chunks)):
            if token.kind is LexKind.IDENTIFIER:
                assert token.text not in KEYWORDS
            if token.kind is LexKind.KEYWORD:
                assert token.text in KEYWORDS


class TestSltCompare:
    def test_identical_sources_are_perfect(self):
        source = "class A { int f() { return 1; } }"
        report = slt_compare(source, source)
        assert report.mode is Mode.SLT
        assert report.similarity == 1.0
        assert report.imt == 0
        assert len(report.pairs) == 1  # one whole-stream pair, never per-method

    def test_single_shared_token_is_below_min_match(self):
        report = slt_compare("x ;", "y ;")
        assert report.matched_total == 0
        assert report.similarity == 0.0
        assert report.imt == -2

    def test_min_match_one_catches_singletons(self):
        report = slt_compare("x ;", "y ;", min_match=1)
        assert report.matched_total == 1
        assert report.similarity == 0.5

    def test_empty_sources_compare_to_zero(self):
        report = slt_compare("", "")
        assert report.involved == 0
        assert report.similarity == 0.0
        assert report.imt == 0

    def test_punctuation_matches_inflate_the_baseline(self):
        # f(); vs g(); share only "( ) ;" yet score 0.75 — the known weakness.
        report = slt_compare("f();", "g();")
        assert report.matched_total == 3
        assert report.involved == 4
        assert report.similarity == 0.75

    def test_involved_baselines(self):
        longer = "a = b; c = d;"
        shorter = "a = b;"
        assert slt_compare(shorter, longer, involved_baseline="min").involved == 4
        assert slt_compare(shorter, longer, involved_baseline="max").involved == 8
        assert slt_compare(shorter, longer, involved_baseline="mean").involved == 6.0

    def test_abstract_identifiers_fold_renames(self):
        base = "int total = start + step;"
        renamed = "int sum = lo + delta;"
        raw = slt_compare(base, renamed)
        blurred = slt_compare(base, renamed, abstract_ids=True)
        assert raw.similarity < 1.0
        assert blurred.similarity == 1.0

    def test_comparison_is_swap_invariant(self):
        a = "class A { void f() { g(1); } }"
        b = "class B { void f() { g(1); h(2); } }"
        fwd = slt_compare(a, b)
        rev = slt_compare(b, a)
        assert (fwd.matched_total, fwd.involved, fwd.similarity) == (
            rev.matched_total,
            rev.involved,
            rev.similarity,
        )

    @settings(max_examples=150, deadline=None)
    @given(st.lists(CHUNKS, max_size=20), st.lists(CHUNKS, max_size=20))
    def test_identifier_blur_never_reduces_matched(self, chunks_a, chunks_b):
        src_a, src_b = " ".join(chunks_a), " ".join(chunks_b)
        raw = slt_compare(src_a, src_b)
        blurred = slt_compare(src_a, src_b, abstract_ids=True)
        assert blurred.matched_total >= raw.matched_total


class TestMovedMethodScenario:
    """Reordering whole methods: invisible to method pairing, fatal to the
    whole-stream lexical baseline."""

    def test_bytecode_pairing_ignores_declaration_order(self):
        config = RunConfig(mode=Mode.LA)
        report = compare_paths(
            f"{FIXTURES}/move_base.json", f"{FIXTURES}/move_plag.json", config
        )
        assert report.similarity == 1.0
        assert report.imt == 0

    def test_lexical_baseline_penalizes_the_move(self):
        config = RunConfig(mode=Mode.SLT)
        report = compare_paths(
            f"{SOURCES}/move_base.java", f"{SOURCES}/move_plag.java", config
        )
        assert report.similarity < 1.0
        assert report.imt < 0

    def test_direction_baseline_below_bytecode(self):
        la = compare_paths(
            f"{FIXTURES}/move_base.json",
            f"{FIXTURES}/move_plag.json",
            RunConfig(mode=Mode.LA),
        )
        slt = compare_paths(
            f"{SOURCES}/move_base.java",
            f"{SOURCES}/move_plag.java",
            RunConfig(mode=Mode.SLT),
        )
        assert slt.imt < la.imt
        assert slt.similarity < la.similarity
