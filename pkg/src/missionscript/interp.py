"""Tree-walking interpreter that evaluates missions with provenance.

Every number flowing through the program is a :class:`TrackedValue`
carrying the trace of literal tokens and marker reads it was computed
from. Evaluation is deterministic, halts at the first runtime error and
returns whatever part of the mission was produced up to that point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from .source import SourceSpan, format_number
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
    ARITHMETIC_OPS,
)
from .trace import (
    Axis,
    BinaryTrace,
    ConstLeaf,
    ExternalLeaf,
    LiteralLeaf,
    TrackedValue,
    UnaryTrace,
)

DEFAULT_MAX_STEPS = 100_000

MARKER_IDS = ("red", "green", "blue")

_MARKER_BUILTINS = {
    "marker_x": Axis.X,
    "marker_y": Axis.Y,
    "marker_z": Axis.Z,
    "marker_yaw": Axis.YAW,
}


class ErrorKind(Enum):
    UNKNOWN_IDENTIFIER = "unknown identifier"
    UNKNOWN_BUILTIN = "unknown builtin"
    ARITY_MISMATCH = "arity mismatch"
    DIVISION_BY_ZERO = "division by zero"
    STEP_LIMIT_EXCEEDED = "step limit exceeded"
    NON_FINITE_RESULT = "non-finite result"


@dataclass(frozen=True)
class Diagnostic:
    span: SourceSpan
    kind: ErrorKind
    message: str


@dataclass(frozen=True)
class MarkerPose:
    x: float
    y: float
    z: float
    yaw: float

    def axis(self, axis: Axis) -> float:
        return getattr(self, axis.value)


@dataclass(frozen=True)
class MarkerSet:
    poses: dict[str, MarkerPose]

    def __post_init__(self) -> None:
        if tuple(sorted(self.poses)) != tuple(sorted(MARKER_IDS)):
            raise ValueError(f"marker set must contain exactly {MARKER_IDS}")
        for pose in self.poses.values():
            for value in (pose.x, pose.y, pose.z, pose.yaw):
                if not math.isfinite(value):
                    raise ValueError("marker poses must be finite")

    @classmethod
    def default(cls) -> "MarkerSet":
        return cls(
            {
                "red": MarkerPose(1.5, 1.5, 0.0, 0.0),
                "green": MarkerPose(-1.5, 1.5, 0.0, 0.0),
                "blue": MarkerPose(0.0, -1.5, 0.0, 0.0),
            }
        )

    def moved(self, marker: str, pose: MarkerPose) -> "MarkerSet":
        if marker not in self.poses:
            raise ValueError(f"unknown marker {marker!r}")
        poses = dict(self.poses)
        poses[marker] = pose
        return MarkerSet(poses)


@dataclass(frozen=True)
class Waypoint:
    index: int
    x: TrackedValue
    y: TrackedValue
    z: TrackedValue
    yaw: TrackedValue
    call_span: SourceSpan
    followed_by_wait: bool

    def component(self, axis: Axis) -> TrackedValue:
        return getattr(self, axis.value)


@dataclass(frozen=True)
class ConsoleLine:
    text: str
    span: SourceSpan


@dataclass(frozen=True)
class SleepItem:
    after_waypoint_index: int
    seconds: TrackedValue


@dataclass(frozen=True)
class MissionResult:
    waypoints: tuple[Waypoint, ...]
    console: tuple[ConsoleLine, ...]
    sleeps: tuple[SleepItem, ...]
    diagnostics: tuple[Diagnostic, ...]


class _Halt(Exception):
    def __init__(self, diagnostic: Diagnostic):
        self.diagnostic = diagnostic


class _Evaluator:
    def __init__(self, markers: MarkerSet, max_steps: int):
        self.markers = markers
        self.max_steps = max_steps
        self.steps = 0
        self.env: dict[str, TrackedValue] = {}
        self.waypoints: list[Waypoint] = []
        self.console: list[ConsoleLine] = []
        self.sleeps: list[SleepItem] = []

    def halt(self, span: SourceSpan, kind: ErrorKind, message: str) -> _Halt:
        return _Halt(Diagnostic(span, kind, message))

    def tick(self, span: SourceSpan) -> None:
        self.steps += 1
        if self.steps > self.max_steps:
            raise self.halt(span, ErrorKind.STEP_LIMIT_EXCEEDED,
                            f"exceeded {self.max_steps} statement executions")

    # -- expressions ---------------------------------------------------------

    def eval_expr(self, expr: Expr) -> TrackedValue:
        if isinstance(expr, NumberLit):
            return TrackedValue(expr.value, LiteralLeaf(expr.span, expr.value))
        if isinstance(expr, Var):
            try:
                return self.env[expr.name]
            except KeyError:
                raise self.halt(expr.span, ErrorKind.UNKNOWN_IDENTIFIER,
                                f"unknown identifier {expr.name!r}") from None
        if isinstance(expr, Unary):
            operand = self.eval_expr(expr.operand)
            return TrackedValue(-operand.value, UnaryTrace(operand.trace))
        if isinstance(expr, Binary):
            return self.eval_binary(expr)
        if isinstance(expr, BuiltinCall):
            return self.eval_marker_read(expr)
        raise self.halt(expr.span, ErrorKind.UNKNOWN_BUILTIN,
                        "string literals are only valid as call arguments")

    def eval_binary(self, expr: Binary) -> TrackedValue:
        lhs = self.eval_expr(expr.lhs)
        rhs = self.eval_expr(expr.rhs)
        if expr.op in ARITHMETIC_OPS:
            if expr.op is BinaryOp.ADD:
                value = lhs.value + rhs.value
            elif expr.op is BinaryOp.SUB:
                value = lhs.value - rhs.value
            elif expr.op is BinaryOp.MUL:
                value = lhs.value * rhs.value
            else:
                if rhs.value == 0:
                    raise self.halt(expr.span, ErrorKind.DIVISION_BY_ZERO, "division by zero")
                value = lhs.value / rhs.value
            if not math.isfinite(value):
                raise self.halt(expr.span, ErrorKind.NON_FINITE_RESULT,
                                "arithmetic produced a non-finite number")
            trace = BinaryTrace(expr.op, lhs.trace, rhs.trace, lhs.value, rhs.value)
            return TrackedValue(value, trace)
        # Comparisons yield plain 0/1 with no code provenance: which branch
        # runs is not part of a value's dataflow history.
        if expr.op is BinaryOp.LT:
            result = lhs.value < rhs.value
        elif expr.op is BinaryOp.LE:
            result = lhs.value <= rhs.value
        elif expr.op is BinaryOp.GT:
            result = lhs.value > rhs.value
        elif expr.op is BinaryOp.GE:
            result = lhs.value >= rhs.value
        elif expr.op is BinaryOp.EQ:
            result = lhs.value == rhs.value
        else:
            result = lhs.value != rhs.value
        value = 1.0 if result else 0.0
        return TrackedValue(value, ConstLeaf(value))

    def eval_marker_read(self, expr: BuiltinCall) -> TrackedValue:
        axis = _MARKER_BUILTINS.get(expr.name)
        if axis is None:
            raise self.halt(expr.span, ErrorKind.UNKNOWN_BUILTIN,
                            f"unknown builtin {expr.name!r} in expression")
        if len(expr.args) != 1 or not isinstance(expr.args[0], StringLit):
            raise self.halt(expr.span, ErrorKind.ARITY_MISMATCH,
                            f"{expr.name} expects one marker name string")
        marker = expr.args[0].value
        pose = self.markers.poses.get(marker)
        if pose is None:
            raise self.halt(expr.args[0].span, ErrorKind.UNKNOWN_IDENTIFIER,
                            f"unknown marker {marker!r}")
        value = pose.axis(axis)
        return TrackedValue(value, ExternalLeaf(marker, axis, value))

    # -- statements ----------------------------------------------------------

    def exec_block(self, body: tuple[Stmt, ...]) -> None:
        for stmt in body:
            self.exec_stmt(stmt)

    def exec_stmt(self, stmt: Stmt) -> None:
        self.tick(stmt.span)
        if isinstance(stmt, Assign):
            self.env[stmt.name] = self.eval_expr(stmt.expr)
        elif isinstance(stmt, Call):
            self.exec_call(stmt)
        elif isinstance(stmt, For):
            self.exec_for(stmt)
        elif isinstance(stmt, If):
            cond = self.eval_expr(stmt.cond)
            if cond.value != 0:
                self.exec_block(stmt.then)
            elif stmt.orelse is not None:
                self.exec_block(stmt.orelse)

    def exec_for(self, stmt: For) -> None:
        start = self.eval_expr(stmt.start)
        stop = self.eval_expr(stmt.stop)
        if stmt.step is not None:
            step = self.eval_expr(stmt.step)
        else:
            step = TrackedValue(1.0, ConstLeaf(1.0))
        k = 0
        while True:
            # The index value and its trace share one expression shape
            # (start + step*k) so replaying the trace is bit-exact.
            offset = step.value * k
            value = start.value + offset
            if step.value >= 0 and value > stop.value:
                break
            if step.value < 0 and value < stop.value:
                break
            trace = BinaryTrace(
                BinaryOp.ADD,
                start.trace,
                BinaryTrace(BinaryOp.MUL, step.trace, ConstLeaf(float(k)), step.value, float(k)),
                start.value,
                offset,
            )
            self.env[stmt.var] = TrackedValue(value, trace)
            self.tick(stmt.span)
            self.exec_block(stmt.body)
            k += 1

    def exec_call(self, stmt: Call) -> None:
        name = stmt.name
        if name == "moveTo":
            self.builtin_move_to(stmt)
        elif name == "wait":
            if stmt.args:
                raise self.halt(stmt.span, ErrorKind.ARITY_MISMATCH, "wait takes no arguments")
            if self.waypoints:
                self.waypoints[-1] = replace(self.waypoints[-1], followed_by_wait=True)
        elif name == "sleep":
            if len(stmt.args) != 1:
                raise self.halt(stmt.span, ErrorKind.ARITY_MISMATCH, "sleep takes one number")
            seconds = self.numeric_arg(stmt, stmt.args[0], "sleep")
            self.sleeps.append(SleepItem(len(self.waypoints) - 1, seconds))
        elif name == "print":
            parts = []
            for arg in stmt.args:
                if isinstance(arg, StringLit):
                    parts.append(arg.value)
                else:
                    parts.append(format_number(self.eval_expr(arg).value))
            self.console.append(ConsoleLine(" ".join(parts), stmt.span))
        elif name in _MARKER_BUILTINS:
            # Marker reads are legal (if pointless) as bare statements.
            self.eval_marker_read(BuiltinCall(stmt.name, stmt.args, stmt.span))
        else:
            raise self.halt(stmt.span, ErrorKind.UNKNOWN_BUILTIN, f"unknown builtin {name!r}")

    def numeric_arg(self, stmt: Call, arg: Expr, name: str) -> TrackedValue:
        if isinstance(arg, StringLit):
            raise self.halt(arg.span, ErrorKind.ARITY_MISMATCH,
                            f"{name} expects numeric arguments")
        return self.eval_expr(arg)

    def builtin_move_to(self, stmt: Call) -> None:
        if len(stmt.args) != 4:
            raise self.halt(stmt.span, ErrorKind.ARITY_MISMATCH,
                            "moveTo takes four numbers (x, y, z, yaw)")
        x, y, z, yaw = (self.numeric_arg(stmt, arg, "moveTo") for arg in stmt.args)
        self.waypoints.append(
            Waypoint(len(self.waypoints), x, y, z, yaw, stmt.span, followed_by_wait=False)
        )

    def result(self, diagnostics: tuple[Diagnostic, ...] = ()) -> MissionResult:
        return MissionResult(
            tuple(self.waypoints), tuple(self.console), tuple(self.sleeps), diagnostics
        )


def evaluate(
    program: Program,
    markers: MarkerSet | None = None,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> MissionResult:
    """Run a parsed program against a marker set.

    Deterministic for a given (program, markers) pair. Halts at the
    first runtime error, returning the partial mission plus one
    diagnostic.
    """
    evaluator = _Evaluator(markers or MarkerSet.default(), max_steps)
    try:
        evaluator.exec_block(program.statements)
    except _Halt as halt:
        return evaluator.result((halt.diagnostic,))
    return evaluator.result()
