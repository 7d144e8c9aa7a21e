"""Wire protocol between the studio client and the session server.

Every message is a JSON document ``{"type": <kind>, "payload": {...}}``
with all numbers decimal and spans as ``{start, end}`` byte offsets.
Each request yields exactly one response; during an active simulation
the server additionally streams ``simFrame`` messages.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .grading import GradeReport
from .interp import MarkerSet, MissionResult
from .linkage import BestEffort, EditProposal, EditRequest, Exact, Unsolvable
from .session import Condition, InteractionSub
from .sim import Pose, SimState, TrajectoryGeometry
from .source import SourceSpan
from .trace import Axis


class ProtocolViolation(Exception):
    """The peer sent a message that does not follow the protocol."""


# -- requests --------------------------------------------------------------


@dataclass(frozen=True)
class CreateSession:
    condition: Condition | None  # None = let the server randomize


@dataclass(frozen=True)
class SetProgram:
    source: str


@dataclass(frozen=True)
class QueryHighlight:
    waypoint_index: int
    axes: frozenset[Axis]


@dataclass(frozen=True)
class ApplyPreviewEdit:
    edit: EditRequest


@dataclass(frozen=True)
class DragMarker:
    marker: str
    pose: Pose


@dataclass(frozen=True)
class RunSimulation:
    pass


@dataclass(frozen=True)
class SimTickRequest:
    dt: float


@dataclass(frozen=True)
class GradeMission:
    task_id: str


@dataclass(frozen=True)
class TaskBoundary:
    action: str  # "start" | "complete"
    task_id: str


@dataclass(frozen=True)
class SaveSession:
    pass


@dataclass(frozen=True)
class ReportInteraction:
    sub: InteractionSub


Request = (
    CreateSession
    | SetProgram
    | QueryHighlight
    | ApplyPreviewEdit
    | DragMarker
    | RunSimulation
    | SimTickRequest
    | GradeMission
    | TaskBoundary
    | SaveSession
    | ReportInteraction
)


def _require(payload: dict, key: str) -> Any:
    if key not in payload:
        raise ProtocolViolation(f"payload is missing {key!r}")
    return payload[key]


def parse_condition(doc: dict) -> Condition:
    return Condition(
        highlights=bool(_require(doc, "highlights")),
        dynamic_linking=bool(_require(doc, "dynamicLinking")),
    )


def condition_doc(condition: Condition) -> dict:
    return {"highlights": condition.highlights, "dynamicLinking": condition.dynamic_linking}


def parse_request(doc: dict) -> Request:
    if not isinstance(doc, dict) or "type" not in doc:
        raise ProtocolViolation("message must be an object with a 'type' field")
    kind = doc["type"]
    payload = doc.get("payload", {})
    if not isinstance(payload, dict):
        raise ProtocolViolation("'payload' must be an object")
    try:
        if kind == "createSession":
            raw = payload.get("condition")
            return CreateSession(parse_condition(raw) if raw is not None else None)
        if kind == "setProgram":
            return SetProgram(str(_require(payload, "source")))
        if kind == "queryHighlight":
            axes = payload.get("axes")
            parsed = frozenset(Axis(a) for a in axes) if axes else frozenset(Axis)
            return QueryHighlight(int(_require(payload, "waypointIndex")), parsed)
        if kind == "applyPreviewEdit":
            targets = {
                Axis(a): float(v) for a, v in _require(payload, "targets").items()
            }
            return ApplyPreviewEdit(
                EditRequest(int(_require(payload, "waypointIndex")), targets)
            )
        if kind == "dragMarker":
            pose = _require(payload, "pose")
            return DragMarker(
                str(_require(payload, "id")),
                Pose(
                    float(pose.get("x", 0.0)),
                    float(pose.get("y", 0.0)),
                    float(pose.get("z", 0.0)),
                    float(pose.get("yaw", 0.0)),
                ),
            )
        if kind == "runSimulation":
            return RunSimulation()
        if kind == "simTick":
            return SimTickRequest(float(_require(payload, "dt")))
        if kind == "gradeMission":
            return GradeMission(str(_require(payload, "taskId")))
        if kind == "taskBoundary":
            action = _require(payload, "action")
            if action not in ("start", "complete"):
                raise ProtocolViolation(f"unknown task boundary action {action!r}")
            return TaskBoundary(action, str(_require(payload, "taskId")))
        if kind == "saveSession":
            return SaveSession()
        if kind == "reportInteraction":
            return ReportInteraction(InteractionSub(_require(payload, "sub")))
    except ProtocolViolation:
        raise
    except (ValueError, TypeError, KeyError) as exc:
        raise ProtocolViolation(f"malformed {kind} payload: {exc}") from exc
    raise ProtocolViolation(f"unknown request type {kind!r}")


# -- responses -------------------------------------------------------------


@dataclass(frozen=True)
class Response:
    type: str
    payload: dict = field(default_factory=dict)

    def to_doc(self) -> dict:
        return {"type": self.type, "payload": self.payload}


def span_doc(span: SourceSpan) -> dict:
    return {"start": span.start, "end": span.end}


def pose_doc(pose: Pose) -> dict:
    return {"x": pose.x, "y": pose.y, "z": pose.z, "yaw": pose.yaw}


def geometry_doc(geometry: TrajectoryGeometry) -> dict:
    return {
        "points": [
            {"x": p.x, "y": p.y, "z": p.z, "yaw": p.yaw, "waypointIndex": p.waypoint_index}
            for p in geometry.points
        ],
        "segments": [list(pair) for pair in geometry.segments],
    }


def markers_doc(markers: MarkerSet) -> dict:
    return {
        name: {"x": p.x, "y": p.y, "z": p.z, "yaw": p.yaw}
        for name, p in markers.poses.items()
    }


def diagnostics_doc(result: MissionResult) -> list[dict]:
    return [
        {"span": span_doc(d.span), "kind": d.kind.value, "message": d.message}
        for d in result.diagnostics
    ]


def session_created(session_id: str, condition: Condition) -> Response:
    return Response(
        "sessionCreated",
        {"sessionId": session_id, "condition": condition_doc(condition)},
    )


def program_state(
    source: str,
    geometry: TrajectoryGeometry,
    markers: MarkerSet,
    console: list[dict],
    diagnostics: list[dict],
) -> Response:
    return Response(
        "programState",
        {
            "source": source,
            "geometry": geometry_doc(geometry),
            "markers": markers_doc(markers),
            "console": console,
            "diagnostics": diagnostics,
        },
    )


def highlight_response(spans: frozenset[SourceSpan]) -> Response:
    ordered = sorted(spans)
    return Response("highlightResponse", {"spans": [span_doc(s) for s in ordered]})


def edit_status_doc(proposal: EditProposal) -> dict:
    status = proposal.status
    if isinstance(status, Exact):
        return {"kind": "exact"}
    if isinstance(status, BestEffort):
        return {
            "kind": "bestEffort",
            "achieved": {axis.value: value for axis, value in status.achieved.items()},
        }
    assert isinstance(status, Unsolvable)
    return {"kind": "unsolvable", "reason": status.reason}


def edit_response(proposal: EditProposal, source: str) -> Response:
    return Response(
        "editResponse",
        {
            "status": edit_status_doc(proposal),
            "source": source,
            "iterations": proposal.iterations,
        },
    )


def sim_frame(state: SimState) -> Response:
    phase: dict = {"kind": state.phase.kind.value}
    if state.phase.to_waypoint is not None:
        phase["toWaypoint"] = state.phase.to_waypoint
    if state.phase.until is not None:
        phase["until"] = state.phase.until
    return Response(
        "simFrame",
        {"pose": pose_doc(state.pose), "phase": phase, "clock": state.clock},
    )


def grade_response(report: GradeReport) -> Response:
    return Response(
        "gradeResponse",
        {
            "missionId": report.mission_id,
            "points": report.points,
            "maxPoints": report.max_points,
            "perCriterion": [
                {"id": r.label, "passed": r.passed, "detail": r.detail}
                for r in report.per_criterion
            ],
        },
    )


def ack(**payload: Any) -> Response:
    return Response("ack", dict(payload))


def error(code: str, message: str) -> Response:
    return Response("error", {"code": code, "message": message})
