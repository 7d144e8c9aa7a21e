"""Interaction logging and learning-strategy trace metrics.

A session log is an append-only list of timestamped events (program
changes, preview interactions, simulation runs, task boundaries). Four
metrics are derived from it:

* organizing  - stretches of at least 30 s without a code change during
  which the preview was used; counted and summed.
* elaborating - active time, the union of 5-second buckets containing
  any event inside a task window.
* planning    - per task, the time from finishing the previous task to
  the first code change after the task started.
* monitoring  - number of started simulation runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import MalformedLog, OutOfOrderTimestamp

ORGANIZING_THRESHOLD_MS = 30_000
ACTIVITY_BUCKET_MS = 5_000
SNAPSHOT_INTERVAL_MS = 5_000


class EventKind(Enum):
    PROGRAM_CHANGED = "programChanged"
    PREVIEW_INTERACTION = "previewInteraction"
    HIGHLIGHT_QUERIED = "highlightQueried"
    EDIT_APPLIED = "editApplied"
    SIMULATION_STARTED = "simulationStarted"
    SIMULATION_FINISHED = "simulationFinished"
    TASK_STARTED = "taskStarted"
    TASK_COMPLETED = "taskCompleted"
    SNAPSHOT = "snapshot"
    MANUAL_SAVE = "manualSave"


class InteractionSub(Enum):
    ORBIT = "orbit"
    ZOOM = "zoom"
    DRAG_MARKER = "dragMarker"
    SELECT_WAYPOINT = "selectWaypoint"
    DRAG_WAYPOINT = "dragWaypoint"


@dataclass(frozen=True)
class SessionEvent:
    t: int  # milliseconds since session start
    kind: EventKind
    payload: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Condition:
    highlights: bool
    dynamic_linking: bool


@dataclass
class SessionLog:
    session_id: str
    condition: Condition
    events: list[SessionEvent] = field(default_factory=list)


def record(log: SessionLog, event: SessionEvent) -> SessionLog:
    """Append an event; timestamps must be non-decreasing."""
    if log.events and event.t < log.events[-1].t:
        raise OutOfOrderTimestamp(
            f"event at t={event.t} after t={log.events[-1].t}"
        )
    log.events.append(event)
    return log


def snapshot_due(log: SessionLog, now: int) -> bool:
    """True when at least 5 s have passed since the program state was
    last captured (by a snapshot or a program change)."""
    last = None
    for event in log.events:
        if event.kind in (EventKind.SNAPSHOT, EventKind.PROGRAM_CHANGED):
            last = event.t
    if last is None:
        return True
    return now - last >= SNAPSHOT_INTERVAL_MS


@dataclass(frozen=True)
class StrategyTraceReport:
    organizing_episodes: int
    organizing_seconds: float
    elaborating_seconds: float
    planning_seconds: dict[str, float]
    monitoring_count: int


def _task_windows(events: list[SessionEvent]) -> list[tuple[str, int, int]]:
    """(taskId, start, end) per task; an unfinished task ends at the last event."""
    open_tasks: dict[str, int] = {}
    closed: dict[str, tuple[int, int]] = {}
    order: list[str] = []
    for event in events:
        if event.kind is EventKind.TASK_STARTED:
            task = event.payload["taskId"]
            if task in open_tasks or task in closed:
                raise MalformedLog(f"task {task!r} started twice")
            open_tasks[task] = event.t
            order.append(task)
        elif event.kind is EventKind.TASK_COMPLETED:
            task = event.payload["taskId"]
            if task not in open_tasks:
                raise MalformedLog(f"task {task!r} completed without being started")
            closed[task] = (open_tasks.pop(task), event.t)
    end_of_log = events[-1].t if events else 0
    for task, started in open_tasks.items():
        closed[task] = (started, end_of_log)
    return [(task, *closed[task]) for task in order]


def _organizing(events: list[SessionEvent]) -> tuple[int, float]:
    """Maximal program-change-free windows in which the preview was used
    for at least the 30 s threshold, measured from the window start to
    the last preview interaction inside it."""
    episodes = 0
    total_ms = 0
    window_start = 0
    last_interaction: int | None = None
    for event in events:
        if event.kind is EventKind.PROGRAM_CHANGED:
            if last_interaction is not None:
                length = last_interaction - window_start
                if length >= ORGANIZING_THRESHOLD_MS:
                    episodes += 1
                    total_ms += length
            window_start = event.t
            last_interaction = None
        elif event.kind is EventKind.PREVIEW_INTERACTION:
            last_interaction = event.t
    if last_interaction is not None:
        length = last_interaction - window_start
        if length >= ORGANIZING_THRESHOLD_MS:
            episodes += 1
            total_ms += length
    return episodes, total_ms / 1000.0


def _elaborating(events: list[SessionEvent], windows: list[tuple[str, int, int]]) -> float:
    buckets: set[int] = set()
    for event in events:
        for _, start, end in windows:
            if start <= event.t <= end:
                buckets.add(event.t // ACTIVITY_BUCKET_MS)
                break
    return len(buckets) * (ACTIVITY_BUCKET_MS / 1000.0)


def _planning(events: list[SessionEvent], windows: list[tuple[str, int, int]]) -> dict[str, float]:
    changes = [e.t for e in events if e.kind is EventKind.PROGRAM_CHANGED]
    planning: dict[str, float] = {}
    previous_end = 0
    for task, start, end in windows:
        first_change = next((t for t in changes if t >= start), None)
        if first_change is None:
            # Task finished without a single code change: the whole task
            # window counts as planning.
            first_change = end
        planning[task] = max(0.0, (first_change - previous_end) / 1000.0)
        previous_end = end
    return planning


def compute_traces(log: SessionLog) -> StrategyTraceReport:
    """Derive the four learning-strategy metrics from a session log."""
    windows = _task_windows(log.events)
    episodes, organizing_seconds = _organizing(log.events)
    return StrategyTraceReport(
        organizing_episodes=episodes,
        organizing_seconds=organizing_seconds,
        elaborating_seconds=_elaborating(log.events, windows),
        planning_seconds=_planning(log.events, windows),
        monitoring_count=sum(
            1 for e in log.events if e.kind is EventKind.SIMULATION_STARTED
        ),
    )


# -- persistence ---------------------------------------------------------


def dump_log(log: SessionLog) -> str:
    """Serialize to newline-delimited JSON; first line is session metadata."""
    lines = [
        json.dumps(
            {
                "t": 0,
                "kind": "meta",
                "payload": {
                    "sessionId": log.session_id,
                    "condition": {
                        "highlights": log.condition.highlights,
                        "dynamicLinking": log.condition.dynamic_linking,
                    },
                },
            },
            sort_keys=True,
        )
    ]
    for event in log.events:
        lines.append(
            json.dumps(
                {"t": event.t, "kind": event.kind.value, "payload": event.payload},
                sort_keys=True,
            )
        )
    return "\n".join(lines) + "\n"


def parse_log(text: str) -> SessionLog:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise MalformedLog("empty log file")
    meta = json.loads(lines[0])
    if meta.get("kind") != "meta":
        raise MalformedLog("log does not start with a meta record")
    condition = Condition(
        highlights=bool(meta["payload"]["condition"]["highlights"]),
        dynamic_linking=bool(meta["payload"]["condition"]["dynamicLinking"]),
    )
    log = SessionLog(meta["payload"]["sessionId"], condition)
    for line in lines[1:]:
        doc = json.loads(line)
        log.events.append(SessionEvent(doc["t"], EventKind(doc["kind"]), doc["payload"]))
    return log


def save_log(log: SessionLog, directory: str | Path) -> Path:
    path = Path(directory) / f"{log.session_id}.log"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_log(log), encoding="utf-8")
    return path


def load_log(path: str | Path) -> SessionLog:
    return parse_log(Path(path).read_text(encoding="utf-8"))
