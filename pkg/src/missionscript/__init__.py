"""MissionScript: a live quadcopter-mission programming environment.

The toolchain parses a small imperative mission language, evaluates it
while tracking the provenance of every computed number back to its
source literals, and uses those traces for two editor aids: literal
highlighting and direct manipulation of the 3D preview that rewrites
the responsible literals in the code.
"""

from .errors import (
    BadParams,
    LexError,
    MalformedLog,
    MissionScriptError,
    OutOfOrderTimestamp,
    ParseError,
    RewriteError,
    RubricMismatch,
    UnknownWaypoint,
)
from .grading import GradeReport, Rubric, grade, load_rubric
from .interp import MarkerPose, MarkerSet, MissionResult, Waypoint, evaluate
from .lexer import Token, TokenKind, tokenize
from .linkage import (
    BestEffort,
    EditProposal,
    EditRequest,
    Exact,
    HighlightResult,
    Unsolvable,
    apply_edit,
    highlight,
    solve_edit,
)
from .parser import parse
from .rewrite import LiteralRewrite, apply_rewrites
from .session import (
    Condition,
    SessionEvent,
    SessionLog,
    StrategyTraceReport,
    compute_traces,
    record,
    snapshot_due,
)
from .sim import SimParams, SimState, TrajectoryGeometry, build_geometry, start, step
from .source import SourceSpan
from .syntax import Program
from .trace import Axis, TrackedValue, literal_leaves, replay

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "BadParams",
    "BestEffort",
    "Condition",
    "EditProposal",
    "EditRequest",
    "Exact",
    "GradeReport",
    "HighlightResult",
    "LexError",
    "LiteralRewrite",
    "MalformedLog",
    "MarkerPose",
    "MarkerSet",
    "MissionResult",
    "MissionScriptError",
    "OutOfOrderTimestamp",
    "ParseError",
    "Program",
    "RewriteError",
    "Rubric",
    "RubricMismatch",
    "SessionEvent",
    "SessionLog",
    "SimParams",
    "SimState",
    "SourceSpan",
    "StrategyTraceReport",
    "Token",
    "TokenKind",
    "TrackedValue",
    "TrajectoryGeometry",
    "UnknownWaypoint",
    "Waypoint",
    "apply_edit",
    "apply_rewrites",
    "build_geometry",
    "compute_traces",
    "evaluate",
    "grade",
    "highlight",
    "literal_leaves",
    "load_rubric",
    "parse",
    "record",
    "replay",
    "snapshot_due",
    "solve_edit",
    "start",
    "step",
    "tokenize",
]
