"""Provenance traces attached to every number the interpreter computes.

A trace is an expression tree whose leaves are either literal tokens
(addressable in the source), external marker reads, or synthetic
constants introduced by loop desugaring. Binary nodes remember the
operand values observed at evaluation time; that is what makes the
algebraic back-solving in :mod:`missionscript.linkage` possible.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .source import SourceSpan
from .syntax import BinaryOp


class Axis(Enum):
    X = "x"
    Y = "y"
    Z = "z"
    YAW = "yaw"


@dataclass(frozen=True)
class LiteralLeaf:
    """Value read from a number literal token."""

    span: SourceSpan
    original_value: float


@dataclass(frozen=True)
class ExternalLeaf:
    """Value read from a draggable reference marker; not editable via code."""

    marker: str
    axis: Axis
    observed_value: float


@dataclass(frozen=True)
class ConstLeaf:
    """Synthetic constant with no source location (e.g. a loop iteration count)."""

    value: float


@dataclass(frozen=True)
class UnaryTrace:
    child: "TraceNode"
    op: str = "neg"


@dataclass(frozen=True)
class BinaryTrace:
    op: BinaryOp
    left: "TraceNode"
    right: "TraceNode"
    left_value: float
    right_value: float


TraceNode = LiteralLeaf | ExternalLeaf | ConstLeaf | UnaryTrace | BinaryTrace


@dataclass(frozen=True)
class TrackedValue:
    value: float
    trace: TraceNode


def replay(trace: TraceNode) -> float:
    """Re-evaluate a trace bottom-up from its stored leaf values."""
    if isinstance(trace, LiteralLeaf):
        return trace.original_value
    if isinstance(trace, ExternalLeaf):
        return trace.observed_value
    if isinstance(trace, ConstLeaf):
        return trace.value
    if isinstance(trace, UnaryTrace):
        return -replay(trace.child)
    left = replay(trace.left)
    right = replay(trace.right)
    if trace.op is BinaryOp.ADD:
        return left + right
    if trace.op is BinaryOp.SUB:
        return left - right
    if trace.op is BinaryOp.MUL:
        return left * right
    return left / right


def literal_leaves(trace: TraceNode) -> set[SourceSpan]:
    """Spans of all literal leaves in the trace; external and synthetic
    leaves contribute nothing."""
    spans: set[SourceSpan] = set()
    _walk_literals(trace, spans)
    return spans


def _walk_literals(trace: TraceNode, spans: set[SourceSpan]) -> None:
    if isinstance(trace, LiteralLeaf):
        spans.add(trace.span)
    elif isinstance(trace, UnaryTrace):
        _walk_literals(trace.child, spans)
    elif isinstance(trace, BinaryTrace):
        _walk_literals(trace.left, spans)
        _walk_literals(trace.right, spans)


def literal_leaf_count(trace: TraceNode) -> int:
    if isinstance(trace, LiteralLeaf):
        return 1
    if isinstance(trace, UnaryTrace):
        return literal_leaf_count(trace.child)
    if isinstance(trace, BinaryTrace):
        return literal_leaf_count(trace.left) + literal_leaf_count(trace.right)
    return 0


def leading_literal_span(trace: TraceNode) -> SourceSpan | None:
    """Span of the first literal leaf in an in-order walk, if any."""
    if isinstance(trace, LiteralLeaf):
        return trace.span
    if isinstance(trace, UnaryTrace):
        return leading_literal_span(trace.child)
    if isinstance(trace, BinaryTrace):
        return leading_literal_span(trace.left) or leading_literal_span(trace.right)
    return None
