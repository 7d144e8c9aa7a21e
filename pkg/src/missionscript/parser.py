"""Recursive-descent parser for MissionScript.

Grammar (statements are self-delimiting, no separators required):

    program    := statement*
    statement  := IDENT '=' expr
                | IDENT '(' [args] ')'
                | 'for' IDENT '=' expr ',' expr [',' expr] 'do' statement* 'end'
                | 'if' expr 'then' statement* ['else' statement*] 'end'
    args       := arg (',' arg)*
    arg        := expr | STRING
    expr       := additive (CMP additive)*
    additive   := multiplicative (('+'|'-') multiplicative)*
    multiplicative := unary (('*'|'/') unary)*
    unary      := '-' unary | primary
    primary    := NUMBER | IDENT | IDENT '(' [args] ')' | '(' expr ')'

String literals are only accepted as direct call arguments.
"""

from __future__ import annotations

import math

from .errors import ParseError
from .lexer import Token, TokenKind, tokenize
from .source import SourceSpan
from .syntax import (
    Assign,
    Binary,
    BinaryOp,
    BuiltinCall,
    Call,
    Expr,
    For,
    If,
    NumberLit,
    Program,
    Stmt,
    StringLit,
    Unary,
    Var,
)

_COMPARISONS = {"<": BinaryOp.LT, "<=": BinaryOp.LE, ">": BinaryOp.GT, ">=": BinaryOp.GE,
                "==": BinaryOp.EQ, "~=": BinaryOp.NE, "!=": BinaryOp.NE}
_ADDITIVE = {"+": BinaryOp.ADD, "-": BinaryOp.SUB}
_MULTIPLICATIVE = {"*": BinaryOp.MUL, "/": BinaryOp.DIV}


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.pos = 0

    # -- token stream helpers ------------------------------------------------

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def at(self, kind: TokenKind, text: str | None = None) -> bool:
        token = self.peek()
        return token is not None and token.kind is kind and (text is None or token.text == text)

    def fail(self, expected: str) -> ParseError:
        token = self.peek()
        if token is None:
            eof = len(self.source)
            return ParseError(SourceSpan(eof, eof), expected, "end-of-input")
        return ParseError(token.span, expected, repr(token.text))

    def expect(self, kind: TokenKind, text: str, expected: str | None = None) -> Token:
        if not self.at(kind, text):
            raise self.fail(expected or f"'{text}'")
        return self.advance()

    # -- expressions ---------------------------------------------------------

    def parse_expr(self) -> Expr:
        lhs = self.parse_additive()
        while self.at(TokenKind.OPERATOR) and self.peek().text in _COMPARISONS:
            op = _COMPARISONS[self.advance().text]
            rhs = self.parse_additive()
            lhs = Binary(op, lhs, rhs, SourceSpan(lhs.span.start, rhs.span.end))
        return lhs

    def parse_additive(self) -> Expr:
        lhs = self.parse_multiplicative()
        while self.at(TokenKind.OPERATOR) and self.peek().text in _ADDITIVE:
            op = _ADDITIVE[self.advance().text]
            rhs = self.parse_multiplicative()
            lhs = Binary(op, lhs, rhs, SourceSpan(lhs.span.start, rhs.span.end))
        return lhs

    def parse_multiplicative(self) -> Expr:
        lhs = self.parse_unary()
        while self.at(TokenKind.OPERATOR) and self.peek().text in _MULTIPLICATIVE:
            op = _MULTIPLICATIVE[self.advance().text]
            rhs = self.parse_unary()
            lhs = Binary(op, lhs, rhs, SourceSpan(lhs.span.start, rhs.span.end))
        return lhs

    def parse_unary(self) -> Expr:
        if self.at(TokenKind.OPERATOR, "-"):
            minus = self.advance()
            operand = self.parse_unary()
            return Unary(operand, SourceSpan(minus.span.start, operand.span.end))
        return self.parse_primary()

    def parse_primary(self) -> Expr:
        token = self.peek()
        if token is None:
            raise self.fail("expression")
        if token.kind is TokenKind.NUMBER:
            value = float(token.text)
            if math.isinf(value):
                raise self.fail("finite number")
            self.advance()
            return NumberLit(value, token.span)
        if token.kind is TokenKind.IDENTIFIER:
            self.advance()
            if self.at(TokenKind.PUNCTUATION, "("):
                args, close = self.parse_args()
                return BuiltinCall(token.text, args, SourceSpan(token.span.start, close.span.end))
            return Var(token.text, token.span)
        if token.kind is TokenKind.PUNCTUATION and token.text == "(":
            self.advance()
            expr = self.parse_expr()
            self.expect(TokenKind.PUNCTUATION, ")")
            return expr
        raise self.fail("expression")

    def parse_args(self) -> tuple[tuple[Expr, ...], Token]:
        self.expect(TokenKind.PUNCTUATION, "(")
        args: list[Expr] = []
        if not self.at(TokenKind.PUNCTUATION, ")"):
            args.append(self.parse_arg())
            while self.at(TokenKind.PUNCTUATION, ","):
                self.advance()
                args.append(self.parse_arg())
        close = self.expect(TokenKind.PUNCTUATION, ")")
        return tuple(args), close

    def parse_arg(self) -> Expr:
        token = self.peek()
        if token is not None and token.kind is TokenKind.STRING:
            self.advance()
            return StringLit(token.text[1:-1], token.span)
        return self.parse_expr()

    # -- statements ----------------------------------------------------------

    def parse_statement(self) -> Stmt:
        token = self.peek()
        if token is None:
            raise self.fail("statement")
        if token.kind is TokenKind.KEYWORD and token.text == "for":
            return self.parse_for()
        if token.kind is TokenKind.KEYWORD and token.text == "if":
            return self.parse_if()
        if token.kind is TokenKind.IDENTIFIER:
            name = self.advance()
            if self.at(TokenKind.OPERATOR, "="):
                self.advance()
                expr = self.parse_expr()
                return Assign(name.text, expr, SourceSpan(name.span.start, expr.span.end))
            if self.at(TokenKind.PUNCTUATION, "("):
                args, close = self.parse_args()
                return Call(name.text, args, SourceSpan(name.span.start, close.span.end))
            raise self.fail("'=' or '('")
        raise self.fail("statement")

    def parse_block(self, *stop: str) -> tuple[tuple[Stmt, ...], Token]:
        body: list[Stmt] = []
        while True:
            token = self.peek()
            if token is not None and token.kind is TokenKind.KEYWORD and token.text in stop:
                return tuple(body), self.advance()
            if token is None:
                raise self.fail(" or ".join(f"'{word}'" for word in stop))
            body.append(self.parse_statement())

    def parse_for(self) -> For:
        head = self.expect(TokenKind.KEYWORD, "for")
        if not self.at(TokenKind.IDENTIFIER):
            raise self.fail("loop variable")
        var = self.advance()
        self.expect(TokenKind.OPERATOR, "=")
        start = self.parse_expr()
        self.expect(TokenKind.PUNCTUATION, ",")
        stop = self.parse_expr()
        step = None
        if self.at(TokenKind.PUNCTUATION, ","):
            self.advance()
            step = self.parse_expr()
        self.expect(TokenKind.KEYWORD, "do")
        body, tail = self.parse_block("end")
        return For(var.text, start, stop, step, body, SourceSpan(head.span.start, tail.span.end))

    def parse_if(self) -> If:
        head = self.expect(TokenKind.KEYWORD, "if")
        cond = self.parse_expr()
        self.expect(TokenKind.KEYWORD, "then")
        then, tail = self.parse_block("else", "end")
        orelse = None
        if tail.text == "else":
            orelse, tail = self.parse_block("end")
        return If(cond, then, orelse, SourceSpan(head.span.start, tail.span.end))

    def parse_program(self) -> Program:
        statements: list[Stmt] = []
        while self.peek() is not None:
            statements.append(self.parse_statement())
        return Program(tuple(statements), self.source)


def parse(source: str) -> Program:
    """Parse source text into a Program.

    Raises ParseError (first error only) or LexError.
    """
    return _Parser(source).parse_program()
