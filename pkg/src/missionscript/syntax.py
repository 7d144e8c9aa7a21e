"""Syntax tree for MissionScript programs.

Every literal keeps the span of its token so downstream consumers
(provenance traces, highlights, rewrites) can address it in the text.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .source import SourceSpan


class BinaryOp(Enum):
    ADD = "+"
    SUB = "-"
    MUL = "*"
    DIV = "/"
    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="
    EQ = "=="
    NE = "~="


ARITHMETIC_OPS = frozenset({BinaryOp.ADD, BinaryOp.SUB, BinaryOp.MUL, BinaryOp.DIV})


@dataclass(frozen=True)
class NumberLit:
    value: float
    span: SourceSpan


@dataclass(frozen=True)
class StringLit:
    value: str
    span: SourceSpan


@dataclass(frozen=True)
class Var:
    name: str
    span: SourceSpan


@dataclass(frozen=True)
class Unary:
    operand: "Expr"
    span: SourceSpan
    op: str = "neg"


@dataclass(frozen=True)
class Binary:
    op: BinaryOp
    lhs: "Expr"
    rhs: "Expr"
    span: SourceSpan


@dataclass(frozen=True)
class BuiltinCall:
    name: str
    args: tuple["Expr", ...]
    span: SourceSpan


Expr = NumberLit | StringLit | Var | Unary | Binary | BuiltinCall


@dataclass(frozen=True)
class Assign:
    name: str
    expr: Expr
    span: SourceSpan


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple[Expr, ...]
    span: SourceSpan


@dataclass(frozen=True)
class For:
    var: str
    start: Expr
    stop: Expr
    step: Expr | None
    body: tuple["Stmt", ...]
    span: SourceSpan


@dataclass(frozen=True)
class If:
    cond: Expr
    then: tuple["Stmt", ...]
    orelse: tuple["Stmt", ...] | None
    span: SourceSpan


Stmt = Assign | Call | For | If


@dataclass(frozen=True)
class Program:
    statements: tuple[Stmt, ...]
    source: str

    def number_literals(self) -> list[NumberLit]:
        """All number literals of the program in source order."""
        found: list[NumberLit] = []
        for stmt in self.statements:
            _collect_stmt(stmt, found)
        found.sort(key=lambda lit: lit.span)
        return found


def _collect_expr(expr: Expr, out: list[NumberLit]) -> None:
    if isinstance(expr, NumberLit):
        out.append(expr)
    elif isinstance(expr, Unary):
        _collect_expr(expr.operand, out)
    elif isinstance(expr, Binary):
        _collect_expr(expr.lhs, out)
        _collect_expr(expr.rhs, out)
    elif isinstance(expr, BuiltinCall):
        for arg in expr.args:
            _collect_expr(arg, out)


def _collect_stmt(stmt: Stmt, out: list[NumberLit]) -> None:
    if isinstance(stmt, Assign):
        _collect_expr(stmt.expr, out)
    elif isinstance(stmt, Call):
        for arg in stmt.args:
            _collect_expr(arg, out)
    elif isinstance(stmt, For):
        _collect_expr(stmt.start, out)
        _collect_expr(stmt.stop, out)
        if stmt.step is not None:
            _collect_expr(stmt.step, out)
        for inner in stmt.body:
            _collect_stmt(inner, out)
    elif isinstance(stmt, If):
        _collect_expr(stmt.cond, out)
        for inner in stmt.then:
            _collect_stmt(inner, out)
        for inner in stmt.orelse or ():
            _collect_stmt(inner, out)
