"""Tokenizer for MissionScript source text.

Every token records the exact half-open byte span it was read from;
concatenating the token texts with the skipped whitespace/comments
reproduces the input byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import LexError
from .source import SourceSpan

KEYWORDS = frozenset({"for", "do", "end", "if", "then", "else"})

# Multi-char operators must be tried before their single-char prefixes.
_OPERATORS = ("<=", ">=", "==", "~=", "!=", "+", "-", "*", "/", "<", ">", "=")
_PUNCTUATION = "(),"


class TokenKind(Enum):
    NUMBER = "number"
    IDENTIFIER = "identifier"
    STRING = "string"
    KEYWORD = "keyword"
    OPERATOR = "operator"
    PUNCTUATION = "punctuation"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: SourceSpan

    def __repr__(self) -> str:
        return f"Token({self.kind.value}, {self.text!r}, {self.span})"


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _is_ident_part(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


def _can_end_expression(token: Token | None) -> bool:
    """True if a following ``-`` must be a binary operator, not a sign."""
    if token is None:
        return False
    if token.kind in (TokenKind.NUMBER, TokenKind.IDENTIFIER, TokenKind.STRING):
        return True
    return token.kind is TokenKind.PUNCTUATION and token.text == ")"


class _Lexer:
    def __init__(self, source: str):
        self.source = source
        self.pos = 0
        self.tokens: list[Token] = []

    def error(self, start: int, end: int, message: str) -> LexError:
        return LexError(SourceSpan(start, end), message)

    def emit(self, kind: TokenKind, start: int) -> None:
        span = SourceSpan(start, self.pos)
        self.tokens.append(Token(kind, span.slice(self.source), span))

    def peek(self, offset: int = 0) -> str:
        pos = self.pos + offset
        return self.source[pos] if pos < len(self.source) else ""

    def skip_trivia(self) -> None:
        src = self.source
        while self.pos < len(src):
            ch = src[self.pos]
            if ch.isspace():
                self.pos += 1
            elif ch == "-" and self.peek(1) == "-":
                while self.pos < len(src) and src[self.pos] != "\n":
                    self.pos += 1
            else:
                return

    def read_digits(self) -> None:
        while self.peek().isdigit():
            self.pos += 1

    def read_number(self, start: int) -> None:
        self.read_digits()
        if self.peek() == "." and self.peek(1).isdigit():
            self.pos += 1
            self.read_digits()
        if self.peek() in "eE":
            lookahead = 2 if self.peek(1) in "+-" else 1
            if self.peek(lookahead).isdigit():
                self.pos += lookahead
                self.read_digits()
        self.emit(TokenKind.NUMBER, start)

    def read_string(self, start: int) -> None:
        quote = self.source[start]
        self.pos = start + 1
        while True:
            ch = self.peek()
            if ch == quote:
                self.pos += 1
                self.emit(TokenKind.STRING, start)
                return
            if ch == "" or ch == "\n":
                raise self.error(start, self.pos, "unterminated string")
            self.pos += 1

    def run(self) -> list[Token]:
        while True:
            self.skip_trivia()
            if self.pos >= len(self.source):
                return self.tokens
            start = self.pos
            ch = self.source[start]
            if ch.isdigit():
                self.read_number(start)
            elif _is_ident_start(ch):
                while _is_ident_part(self.peek()):
                    self.pos += 1
                kind = TokenKind.KEYWORD if self.source[start : self.pos] in KEYWORDS else TokenKind.IDENTIFIER
                self.emit(kind, start)
            elif ch in "\"'":
                self.read_string(start)
            elif (
                ch == "-"
                and self.peek(1).isdigit()
                and not _can_end_expression(self.tokens[-1] if self.tokens else None)
            ):
                # A sign is part of the literal only where a binary minus
                # cannot occur; this keeps rewrites to negative values
                # structure-preserving.
                self.pos += 1
                self.read_number(start)
            elif ch in _PUNCTUATION:
                self.pos += 1
                self.emit(TokenKind.PUNCTUATION, start)
            else:
                for op in _OPERATORS:
                    if self.source.startswith(op, start):
                        self.pos = start + len(op)
                        self.emit(TokenKind.OPERATOR, start)
                        break
                else:
                    raise self.error(start, start + 1, f"illegal character {ch!r}")


def tokenize(source: str) -> list[Token]:
    """Split source text into tokens with exact spans.

    Raises LexError on the first illegal character or unterminated string.
    """
    return _Lexer(source).run()
