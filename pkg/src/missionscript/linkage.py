"""Mapping aids between the 3D preview and program text.

``highlight`` collects the literal spans that may influence a waypoint
(element-to-element linking). ``solve_edit`` inverts a provenance trace
to find literal rewrites that move a waypoint to a requested pose
(relation-to-relation linking), verifying each proposal by re-running
the program and refining with a residual correction until it matches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UnknownWaypoint
from .interp import MarkerSet, MissionResult, evaluate
from .parser import parse
from .rewrite import LiteralRewrite, apply_rewrites
from .source import SourceSpan
from .syntax import BinaryOp, Program
from .trace import (
    Axis,
    BinaryTrace,
    LiteralLeaf,
    TraceNode,
    UnaryTrace,
    leading_literal_span,
    literal_leaf_count,
    literal_leaves,
)

AXIS_ORDER = (Axis.X, Axis.Y, Axis.Z, Axis.YAW)

DEFAULT_TOLERANCE = 1e-6
DEFAULT_MAX_ITERATIONS = 16


@dataclass(frozen=True)
class HighlightResult:
    waypoint_index: int
    axes: frozenset[Axis]
    spans: frozenset[SourceSpan]


@dataclass(frozen=True)
class EditRequest:
    waypoint_index: int
    targets: dict[Axis, float]

    def __post_init__(self) -> None:
        if not self.targets:
            raise ValueError("edit request needs at least one target axis")
        for value in self.targets.values():
            if not math.isfinite(value):
                raise ValueError("edit targets must be finite")


@dataclass(frozen=True)
class Exact:
    pass


@dataclass(frozen=True)
class BestEffort:
    achieved: dict[Axis, float]


@dataclass(frozen=True)
class Unsolvable:
    reason: str


EditStatus = Exact | BestEffort | Unsolvable


@dataclass(frozen=True)
class EditProposal:
    rewrites: tuple[LiteralRewrite, ...]
    status: EditStatus
    iterations: int


def highlight(
    result: MissionResult,
    waypoint_index: int,
    axes: frozenset[Axis] | None = None,
) -> HighlightResult:
    """Spans of all literals that may influence the selected axes of a waypoint."""
    if not 0 <= waypoint_index < len(result.waypoints):
        raise UnknownWaypoint(f"no waypoint {waypoint_index}")
    selected = frozenset(axes) if axes is not None else frozenset(AXIS_ORDER)
    if not selected:
        raise ValueError("axes must be non-empty")
    waypoint = result.waypoints[waypoint_index]
    spans: set[SourceSpan] = set()
    for axis in selected:
        spans |= literal_leaves(waypoint.component(axis).trace)
    return HighlightResult(waypoint_index, selected, frozenset(spans))


def _invert(op: BinaryOp, solve_left: bool, target: float, left: float, right: float) -> float | None:
    """Target value for one operand given the stored value of the other.

    Returns None where the inversion is singular (would divide by zero)
    or produces a non-finite value.
    """
    if op is BinaryOp.ADD:
        value = target - (right if solve_left else left)
    elif op is BinaryOp.SUB:
        value = target + right if solve_left else left - target
    elif op is BinaryOp.MUL:
        other = right if solve_left else left
        if other == 0:
            return None
        value = target / other
    else:
        if solve_left:
            value = target * right
        else:
            if target == 0:
                return None
            value = left / target
    return value if math.isfinite(value) else None


def _operand_order(node: BinaryTrace) -> tuple[bool, ...]:
    """Which operand to try solving first: True = left, False = right.

    Prefers the side with exactly one literal leaf; ties break toward
    the side whose leading literal appears earliest in the source, so
    an expression like ``s + 1`` is solved through the shared variable
    while the local offset stays fixed.
    """
    left_count = literal_leaf_count(node.left)
    right_count = literal_leaf_count(node.right)
    if left_count == 1 and right_count != 1:
        return (True, False)
    if right_count == 1 and left_count != 1:
        return (False, True)
    left_span = leading_literal_span(node.left)
    right_span = leading_literal_span(node.right)
    if left_span is None:
        return (False, True)
    if right_span is None:
        return (True, False)
    if left_span.start <= right_span.start:
        return (True, False)
    return (False, True)


def _solve_trace(node: TraceNode, target: float) -> tuple[SourceSpan, float] | None:
    """Descend a trace to find one literal rewrite that achieves ``target``.

    Backtracks across operands when the preferred branch has no
    solvable literal or the algebraic inversion is singular.
    """
    if isinstance(node, LiteralLeaf):
        return (node.span, target)
    if isinstance(node, UnaryTrace):
        return _solve_trace(node.child, -target)
    if isinstance(node, BinaryTrace):
        for solve_left in _operand_order(node):
            child = node.left if solve_left else node.right
            if literal_leaf_count(child) == 0:
                continue
            inverted = _invert(node.op, solve_left, target, node.left_value, node.right_value)
            if inverted is None:
                continue
            solved = _solve_trace(child, inverted)
            if solved is not None:
                return solved
        return None
    return None  # external or synthetic leaf: nothing to rewrite


def _literal_index(literals: list, span: SourceSpan) -> int:
    for i, lit in enumerate(literals):
        if lit.span == span:
            return i
    raise ValueError(f"span {span} is not a literal of the program")


@dataclass
class _AxisHistory:
    literal_index: int
    leaf_value: float
    achieved: float


def solve_edit(
    program: Program,
    markers: MarkerSet,
    request: EditRequest,
    tol: float = DEFAULT_TOLERANCE,
    max_iter: int = DEFAULT_MAX_ITERATIONS,
) -> EditProposal:
    """Back-solve a preview edit into literal rewrites against ``program``.

    Each pass solves every unsatisfied axis down its trace, applies the
    candidate rewrites to a scratch copy and re-evaluates. When a pass
    overshoots (the rewritten literal also feeds the value elsewhere), the
    next pass applies a secant correction from the two observed
    (literal value, achieved value) pairs, which lands exactly for
    linear self-dependences. The input program text is never mutated.
    """
    base_result = evaluate(program, markers)
    if base_result.diagnostics:
        raise ValueError("cannot solve edits against a program that fails to evaluate")
    if not 0 <= request.waypoint_index < len(base_result.waypoints):
        raise UnknownWaypoint(f"no waypoint {request.waypoint_index}")

    original_literals = parse(program.source).number_literals()
    current_source = program.source
    current_program = program
    current_result = base_result
    history: dict[Axis, _AxisHistory] = {}

    def achieved_values() -> dict[Axis, float]:
        waypoint = current_result.waypoints[request.waypoint_index]
        return {axis: waypoint.component(axis).value for axis in request.targets}

    def compose() -> tuple[LiteralRewrite, ...]:
        final_literals = current_program.number_literals()
        return tuple(
            LiteralRewrite(orig.span, final.value)
            for orig, final in zip(original_literals, final_literals)
            if final.value != orig.value
        )

    if all(abs(value - request.targets[axis]) <= tol for axis, value in achieved_values().items()):
        return EditProposal((), Exact(), 0)

    iterations = 0
    for _ in range(max_iter):
        iterations += 1
        waypoint = current_result.waypoints[request.waypoint_index]
        literals = current_program.number_literals()
        pending: dict[SourceSpan, float] = {}
        for axis in AXIS_ORDER:
            if axis not in request.targets:
                continue
            target = request.targets[axis]
            tracked = waypoint.component(axis)
            if abs(tracked.value - target) <= tol:
                continue
            solved = _solve_trace(tracked.trace, target)
            if solved is None:
                return EditProposal((), Unsolvable(
                    f"no editable literal influences axis {axis.value}"), iterations)
            span, new_value = solved
            literal_index = _literal_index(literals, span)
            previous = history.get(axis)
            leaf_value = literals[literal_index].value
            if (
                previous is not None
                and previous.literal_index == literal_index
                and previous.achieved != tracked.value
                and previous.leaf_value != leaf_value
            ):
                slope = (tracked.value - previous.achieved) / (leaf_value - previous.leaf_value)
                if slope != 0 and math.isfinite(slope):
                    new_value = leaf_value + (target - tracked.value) / slope
            history[axis] = _AxisHistory(literal_index, leaf_value, tracked.value)
            if span in pending and pending[span] != new_value:
                return EditProposal((), Unsolvable(
                    "conflict: axes require different values for one literal"), iterations)
            pending[span] = new_value

        rewrites = [LiteralRewrite(span, value) for span, value in pending.items()]
        next_source = apply_rewrites(current_source, rewrites)
        next_program = parse(next_source)
        next_result = evaluate(next_program, markers)
        if next_result.diagnostics or len(next_result.waypoints) <= request.waypoint_index:
            # The rewrite knocked out the program (changed control flow or
            # hit a runtime error); report how far the previous pass got.
            return EditProposal(compose(), BestEffort(achieved_values()), iterations)
        current_source, current_program, current_result = next_source, next_program, next_result

        if all(abs(value - request.targets[axis]) <= tol for axis, value in achieved_values().items()):
            return EditProposal(compose(), Exact(), iterations)

    return EditProposal(compose(), BestEffort(achieved_values()), iterations)


def apply_edit(source: str, proposal: EditProposal) -> str:
    """Apply a solved proposal to source text; the caller re-evaluates."""
    if isinstance(proposal.status, Unsolvable):
        raise ValueError("cannot apply an unsolvable edit proposal")
    return apply_rewrites(source, list(proposal.rewrites))
