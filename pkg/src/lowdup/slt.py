"""Lexical-token baseline: a hand lexer for C-family source plus one
whole-stream RKGST comparison.

The baseline deliberately keeps every delimiter and operator token and
compares raw lexemes, so coincidental punctuation matches count, which is
exactly the weakness the low-level modes are measured against. Identifier
abstraction (mapping every identifier to one class) is available as an
opt-in knob for sensitivity studies.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .compare import ComparisonReport, MethodPair, Mode, _involved, imt
from .errors import UnterminatedComment, UnterminatedString
from .model import MethodKey
from .tiling import matched_count, rkgst_symmetric

# JLS keyword list plus the three literal words; frozen so two lexer runs can
# never disagree on what counts as an identifier.
KEYWORDS = frozenset(
    """
    abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package
    private protected public return short static strictfp super switch
    synchronized this throw throws transient try void volatile while
    true false null
    """.split()
)

# Multi-character operators first; the lexer munches the longest match.
OPERATORS = (
    ">>>=", ">>>", "<<=", ">>=",
    "==", "!=", "<=", ">=", "&&", "||", "++", "--",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
    "<<", ">>", "->", "::",
    "+", "-", "*", "/", "%", "=", "<", ">", "!", "&", "|", "^", "~", "?", ":",
)

DELIMITERS = frozenset("()[]{};,.@")

_IDENTIFIER_START = frozenset(
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_$"
)
_IDENTIFIER_PART = _IDENTIFIER_START | frozenset("0123456789")
_WHITESPACE = frozenset(" \t\r\n\f\v")


class LexKind(enum.Enum):
    KEYWORD = "keyword"
    IDENTIFIER = "identifier"
    NUMBER = "number"
    STRING = "string"
    CHAR = "char"
    OPERATOR = "operator"
    DELIMITER = "delimiter"


@dataclass(frozen=True)
class LexToken:
    kind: LexKind
    text: str


class _Scanner:
    def __init__(self, text: str):
        if text.startswith("﻿"):
            text = text[1:]
        self.text = text
        self.pos = 0
        self.line = 1
        self.column = 1

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self, ahead: int = 0) -> str:
        index = self.pos + ahead
        return self.text[index] if index < len(self.text) else ""

    def advance(self, count: int = 1) -> str:
        taken = self.text[self.pos : self.pos + count]
        for ch in taken:
            if ch == "\n":
                self.line += 1
                self.column = 1
            else:
                self.column += 1
        self.pos += count
        return taken


def _lex_quoted(scanner: _Scanner, quote: str, kind: LexKind) -> LexToken:
    start_line, start_column = scanner.line, scanner.column
    parts = [scanner.advance()]
    while True:
        if scanner.eof() or scanner.peek() == "\n":
            what = "string literal" if kind is LexKind.STRING else "character literal"
            raise UnterminatedString(f"{what} never closed", start_line, start_column)
        ch = scanner.advance()
        parts.append(ch)
        if ch == "\\":
            if scanner.eof():
                what = "string literal" if kind is LexKind.STRING else "character literal"
                raise UnterminatedString(f"{what} never closed", start_line, start_column)
            parts.append(scanner.advance())
        elif ch == quote:
            return LexToken(kind, "".join(parts))


def _lex_number(scanner: _Scanner) -> LexToken:
    parts = [scanner.advance()]
    while not scanner.eof():
        ch = scanner.peek()
        if ch in _IDENTIFIER_PART or ch == ".":
            parts.append(scanner.advance())
        elif ch in "+-" and parts[-1] in "eEpP":
            parts.append(scanner.advance())
        else:
            break
    return LexToken(LexKind.NUMBER, "".join(parts))


def lex_source(text: str) -> list[LexToken]:
    """Tokenize source text; comments and whitespace vanish, all else stays.

    Total over arbitrary text except for two structural errors: a string or
    character literal left open, and a block comment left open. Characters
    outside the grammar lex as single-character operator tokens rather than
    failing.
    """
    scanner = _Scanner(text)
    tokens: list[LexToken] = []
    while not scanner.eof():
        ch = scanner.peek()
        if ch in _WHITESPACE:
            scanner.advance()
        elif ch == "/" and scanner.peek(1) == "/":
            while not scanner.eof() and scanner.peek() != "\n":
                scanner.advance()
        elif ch == "/" and scanner.peek(1) == "*":
            start_line, start_column = scanner.line, scanner.column
            scanner.advance(2)
            while scanner.peek() != "*" or scanner.peek(1) != "/":
                if scanner.eof():
                    raise UnterminatedComment(
                        "block comment never closed", start_line, start_column
                    )
                scanner.advance()
            scanner.advance(2)
        elif ch == '"':
            tokens.append(_lex_quoted(scanner, '"', LexKind.STRING))
        elif ch == "'":
            tokens.append(_lex_quoted(scanner, "'", LexKind.CHAR))
        elif ch.isdigit() or (ch == "." and scanner.peek(1).isdigit()):
            tokens.append(_lex_number(scanner))
        elif ch in _IDENTIFIER_START:
            parts = [scanner.advance()]
            while scanner.peek() in _IDENTIFIER_PART:
                parts.append(scanner.advance())
            word = "".join(parts)
            kind = LexKind.KEYWORD if word in KEYWORDS else LexKind.IDENTIFIER
            tokens.append(LexToken(kind, word))
        elif ch in DELIMITERS:
            tokens.append(LexToken(LexKind.DELIMITER, scanner.advance()))
        else:
            for operator in OPERATORS:
                if scanner.text.startswith(operator, scanner.pos):
                    scanner.advance(len(operator))
                    tokens.append(LexToken(LexKind.OPERATOR, operator))
                    break
            else:
                tokens.append(LexToken(LexKind.OPERATOR, scanner.advance()))
    return tokens


def abstract_identifiers(tokens: list[LexToken]) -> list[LexToken]:
    """Map every identifier to one class, keeping all other tokens."""
    return [
        LexToken(LexKind.IDENTIFIER, "<id>") if t.kind is LexKind.IDENTIFIER else t
        for t in tokens
    ]


STREAM_KEY = MethodKey("<source>", "<stream>", "()V")


def slt_compare_streams(
    tokens_a: list[LexToken],
    tokens_b: list[LexToken],
    min_match: int = 2,
    involved_baseline: str = "min",
) -> ComparisonReport:
    """One whole-stream RKGST over two already-lexed token lists."""
    tiles = tuple(
        rkgst_symmetric(
            tokens_a,
            tokens_b,
            min_match,
            item_key=lambda token: (token.kind.value, token.text),
        )
    )
    matched = matched_count(list(tiles))
    pair = MethodPair(STREAM_KEY, STREAM_KEY, 1.0, tiles, matched)

    involved = _involved(len(tokens_a), len(tokens_b), involved_baseline)
    mt = involved - matched
    similarity = matched / involved if involved else 0.0
    return ComparisonReport(
        mode=Mode.SLT,
        pairs=(pair,),
        matched_total=matched,
        involved=involved,
        mt=mt,
        imt=imt(mt),
        similarity=similarity,
    )


def slt_compare(
    src_a: str,
    src_b: str,
    min_match: int = 2,
    involved_baseline: str = "min",
    abstract_ids: bool = False,
) -> ComparisonReport:
    """Compare two sources as single long lexical streams."""
    tokens_a = lex_source(src_a)
    tokens_b = lex_source(src_b)
    if abstract_ids:
        tokens_a = abstract_identifiers(tokens_a)
        tokens_b = abstract_identifiers(tokens_b)
    return slt_compare_streams(tokens_a, tokens_b, min_match, involved_baseline)
