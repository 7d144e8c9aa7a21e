"""Session state machine behind the protocol.

One :class:`Session` owns a participant's program, markers, simulation
and event log, and enforces the experimental condition: highlight
queries and preview edits answer with a ``FeatureDisabled`` error
unless the session's condition enables the corresponding aid. The
evaluation core stays pure; this module is the single place where state
changes and logging happen.
"""

from __future__ import annotations

import random
import time
import uuid
from pathlib import Path
from typing import Callable

from .errors import LexError, ParseError, UnknownWaypoint
from .interp import MarkerPose, MarkerSet, MissionResult, evaluate
from .linkage import Unsolvable, apply_edit, highlight, solve_edit
from .parser import parse
from .protocol import (
    ApplyPreviewEdit,
    CreateSession,
    DragMarker,
    GradeMission,
    QueryHighlight,
    ReportInteraction,
    Request,
    Response,
    RunSimulation,
    SaveSession,
    SetProgram,
    SimTickRequest,
    TaskBoundary,
    ack,
    diagnostics_doc,
    edit_response,
    edit_status_doc,
    error,
    grade_response,
    highlight_response,
    program_state,
    session_created,
    sim_frame,
    span_doc,
)
from .grading import grade
from .session import (
    Condition,
    EventKind,
    InteractionSub,
    SessionEvent,
    SessionLog,
    record,
    save_log,
    snapshot_due,
)
from .sim import PhaseKind, SimParams, SimState, build_geometry, start, step
from .syntax import Program
from .tasks import MissionTask

# The four experimental conditions, in the order the randomizer draws them.
CONDITIONS = (
    Condition(highlights=False, dynamic_linking=False),
    Condition(highlights=True, dynamic_linking=False),
    Condition(highlights=False, dynamic_linking=True),
    Condition(highlights=True, dynamic_linking=True),
)

_CLIENT_INTERACTIONS = (InteractionSub.ORBIT, InteractionSub.ZOOM, InteractionSub.SELECT_WAYPOINT)


def randomize_condition(seed: int | None = None) -> Condition:
    """Draw one of the four conditions uniformly; deterministic given a seed."""
    return CONDITIONS[random.Random(seed).randrange(len(CONDITIONS))]


def _monotonic_clock() -> Callable[[], int]:
    started = time.monotonic()
    return lambda: int((time.monotonic() - started) * 1000)


class Session:
    """A single participant's environment; messages are handled in order."""

    def __init__(
        self,
        session_id: str,
        condition: Condition,
        tasks: list[MissionTask],
        clock: Callable[[], int] | None = None,
        log_dir: str | Path | None = None,
        sim_params: SimParams | None = None,
    ):
        self.session_id = session_id
        self.condition = condition
        self.tasks = {task.task_id: task for task in tasks}
        self.clock = clock or _monotonic_clock()
        self.log_dir = Path(log_dir) if log_dir is not None else None
        self.sim_params = sim_params or SimParams()

        self.current_source = ""
        self.valid_program: Program = parse("")
        self.markers = MarkerSet.default()
        self.last_result: MissionResult = evaluate(self.valid_program, self.markers)
        self.last_parse_failed = False
        self.sim: SimState | None = None
        self.log = SessionLog(session_id, condition)
        self._open_tasks: set[str] = set()
        self._finished_tasks: set[str] = set()

    # -- logging helpers ---------------------------------------------------

    def _log(self, kind: EventKind, **payload) -> None:
        record(self.log, SessionEvent(self.clock(), kind, payload))

    def maybe_snapshot(self) -> bool:
        """Capture program state if the 5-second cadence has elapsed."""
        now = self.clock()
        if snapshot_due(self.log, now):
            record(self.log, SessionEvent(now, EventKind.SNAPSHOT, {"source": self.current_source}))
            return True
        return False

    def export_log(self) -> str:
        from .session import dump_log

        return dump_log(self.log)

    # -- request handling ----------------------------------------------------

    def handle(self, request: Request) -> list[Response]:
        if isinstance(request, SetProgram):
            return self._set_program(request.source)
        if isinstance(request, QueryHighlight):
            return self._query_highlight(request)
        if isinstance(request, ApplyPreviewEdit):
            return self._apply_preview_edit(request)
        if isinstance(request, DragMarker):
            return self._drag_marker(request)
        if isinstance(request, RunSimulation):
            return self._run_simulation()
        if isinstance(request, SimTickRequest):
            return self._sim_tick(request.dt)
        if isinstance(request, GradeMission):
            return self._grade(request.task_id)
        if isinstance(request, TaskBoundary):
            return self._task_boundary(request)
        if isinstance(request, SaveSession):
            return self._save_session()
        if isinstance(request, ReportInteraction):
            return self._report_interaction(request.sub)
        return [error("BadRequest", f"request {type(request).__name__} not valid here")]

    def _program_state(self) -> Response:
        console = [
            {"text": line.text, "span": span_doc(line.span)} for line in self.last_result.console
        ]
        return program_state(
            self.current_source,
            build_geometry(self.last_result),
            self.markers,
            console,
            diagnostics_doc(self.last_result),
        )

    def _set_program(self, source: str) -> list[Response]:
        self.current_source = source
        self._log(EventKind.PROGRAM_CHANGED, source=source)
        try:
            program = parse(source)
        except (ParseError, LexError) as exc:
            # Keep the last valid geometry on screen; report the error.
            self.last_parse_failed = True
            state = self._program_state()
            state.payload["diagnostics"] = [
                {"span": span_doc(exc.span), "kind": "syntax", "message": str(exc)}
            ]
            return [state]
        self.last_parse_failed = False
        self.valid_program = program
        self.last_result = evaluate(program, self.markers)
        return [self._program_state()]

    def _query_highlight(self, request: QueryHighlight) -> list[Response]:
        if not self.condition.highlights:
            return [error("FeatureDisabled", "highlighting is not available in this session")]
        try:
            result = highlight(self.last_result, request.waypoint_index, request.axes)
        except UnknownWaypoint as exc:
            return [error("UnknownWaypoint", str(exc))]
        self._log(EventKind.HIGHLIGHT_QUERIED, waypointIndex=request.waypoint_index)
        return [highlight_response(result.spans)]

    def _apply_preview_edit(self, request: ApplyPreviewEdit) -> list[Response]:
        if not self.condition.dynamic_linking:
            return [error("FeatureDisabled", "preview editing is not available in this session")]
        if self.last_parse_failed or self.last_result.diagnostics:
            return [error("InvalidProgram", "fix the program errors before editing the preview")]
        self._log(EventKind.PREVIEW_INTERACTION, sub=InteractionSub.DRAG_WAYPOINT.value)
        try:
            proposal = solve_edit(self.valid_program, self.markers, request.edit)
        except UnknownWaypoint as exc:
            return [error("UnknownWaypoint", str(exc))]
        self._log(EventKind.EDIT_APPLIED, status=edit_status_doc(proposal)["kind"])
        if isinstance(proposal.status, Unsolvable):
            return [edit_response(proposal, self.current_source)]
        new_source = apply_edit(self.current_source, proposal)
        self.current_source = new_source
        self.valid_program = parse(new_source)
        self.last_result = evaluate(self.valid_program, self.markers)
        self._log(EventKind.PROGRAM_CHANGED, source=new_source)
        return [edit_response(proposal, new_source)]

    def _drag_marker(self, request: DragMarker) -> list[Response]:
        try:
            pose = MarkerPose(request.pose.x, request.pose.y, request.pose.z, request.pose.yaw)
            self.markers = self.markers.moved(request.marker, pose)
        except ValueError as exc:
            return [error("UnknownMarker", str(exc))]
        self._log(EventKind.PREVIEW_INTERACTION, sub=InteractionSub.DRAG_MARKER.value)
        # Re-evaluate the last parseable program so the preview geometry
        # always corresponds to the marker poses.
        self.last_result = evaluate(self.valid_program, self.markers)
        return [self._program_state()]

    def _run_simulation(self) -> list[Response]:
        self.sim = start(self.last_result, self.sim_params)
        self._log(EventKind.SIMULATION_STARTED)
        return [sim_frame(self.sim)]

    def handle_sim_stream_tick(self, dt: float) -> list[Response]:
        """Advance the streamed simulation; quiet no-op once it is done."""
        if self.sim is None or self.sim.phase.kind is PhaseKind.DONE:
            return []
        return self._sim_tick(dt)

    def _sim_tick(self, dt: float) -> list[Response]:
        if self.sim is None:
            return [error("NoActiveSimulation", "run the simulation first")]
        if not dt > 0:
            return [error("BadRequest", "dt must be positive")]
        was_done = self.sim.phase.kind is PhaseKind.DONE
        self.sim = step(self.sim, self.last_result, dt)
        if not was_done and self.sim.phase.kind is PhaseKind.DONE:
            self._log(EventKind.SIMULATION_FINISHED)
        return [sim_frame(self.sim)]

    def _grade(self, task_id: str) -> list[Response]:
        task = self.tasks.get(task_id)
        if task is None:
            return [error("UnknownTask", f"no task {task_id!r}")]
        return [grade_response(grade(self.last_result, task.rubric))]

    def _task_boundary(self, request: TaskBoundary) -> list[Response]:
        if request.task_id not in self.tasks:
            return [error("UnknownTask", f"no task {request.task_id!r}")]
        if request.action == "start":
            if request.task_id in self._open_tasks or request.task_id in self._finished_tasks:
                return [error("BadRequest", f"task {request.task_id!r} already started")]
            self._open_tasks.add(request.task_id)
            self._log(EventKind.TASK_STARTED, taskId=request.task_id)
        else:
            if request.task_id not in self._open_tasks:
                return [error("BadRequest", f"task {request.task_id!r} is not running")]
            self._open_tasks.discard(request.task_id)
            self._finished_tasks.add(request.task_id)
            self._log(EventKind.TASK_COMPLETED, taskId=request.task_id)
        return [ack(taskId=request.task_id)]

    def _save_session(self) -> list[Response]:
        self._log(EventKind.MANUAL_SAVE, source=self.current_source)
        saved: str | None = None
        if self.log_dir is not None:
            saved = str(save_log(self.log, self.log_dir))
        return [ack(saved=saved)]

    def _report_interaction(self, sub: InteractionSub) -> list[Response]:
        if sub not in _CLIENT_INTERACTIONS:
            return [error("BadRequest", f"interaction {sub.value!r} is reported implicitly")]
        self._log(EventKind.PREVIEW_INTERACTION, sub=sub.value)
        return [ack()]


class SessionManager:
    """Creates sessions and routes stateless requests to them."""

    def __init__(
        self,
        tasks: list[MissionTask],
        seed: int | None = None,
        log_dir: str | Path | None = None,
        clock_factory: Callable[[], Callable[[], int]] | None = None,
    ):
        self.tasks = tasks
        self.rng = random.Random(seed)
        self.log_dir = log_dir
        self.clock_factory = clock_factory or _monotonic_clock
        self.sessions: dict[str, Session] = {}

    def create_session(self, request: CreateSession) -> tuple[Session, Response]:
        condition = request.condition
        if condition is None:
            condition = CONDITIONS[self.rng.randrange(len(CONDITIONS))]
        session_id = uuid.uuid4().hex[:12]
        session = Session(
            session_id,
            condition,
            self.tasks,
            clock=self.clock_factory(),
            log_dir=self.log_dir,
        )
        self.sessions[session_id] = session
        return session, session_created(session_id, condition)

    def get(self, session_id: str) -> Session | None:
        return self.sessions.get(session_id)

    def close_session(self, session: Session) -> None:
        if self.log_dir is not None:
            save_log(session.log, self.log_dir)
