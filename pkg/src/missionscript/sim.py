"""Trajectory geometry and time-stepped playback of a mission.

The preview geometry ignores time entirely: one point per waypoint and
straight segments between consecutive waypoints. Playback flies the
mission with a deliberately simple motion model: on each leg the
quadcopter first slews its yaw along the shortest arc, then translates
in a straight line at constant speed; sleeps hold the pose. The whole
mission is compiled to an analytic timeline once, so stepping is exact:
arrivals land bit-perfectly on the waypoint pose and the completion
clock does not depend on the step size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import BadParams
from .interp import MissionResult, Waypoint

DEFAULT_SPEED = 1.0  # m/s
DEFAULT_YAW_RATE = 90.0  # deg/s


@dataclass(frozen=True)
class Pose:
    x: float
    y: float
    z: float
    yaw: float


ORIGIN = Pose(0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class GeometryPoint:
    x: float
    y: float
    z: float
    yaw: float
    waypoint_index: int


@dataclass(frozen=True)
class TrajectoryGeometry:
    points: tuple[GeometryPoint, ...]
    segments: tuple[tuple[int, int], ...]


def build_geometry(result: MissionResult) -> TrajectoryGeometry:
    points = tuple(
        GeometryPoint(w.x.value, w.y.value, w.z.value, normalize_yaw(w.yaw.value), w.index)
        for w in result.waypoints
    )
    segments = tuple((i, i + 1) for i in range(len(points) - 1))
    return TrajectoryGeometry(points, segments)


def normalize_yaw(yaw: float) -> float:
    return yaw % 360.0


def yaw_arc(from_yaw: float, to_yaw: float) -> float:
    """Signed shortest rotation (degrees in (-180, 180]) between headings."""
    return (to_yaw - from_yaw + 180.0) % 360.0 - 180.0


class PhaseKind(Enum):
    IDLE = "idle"
    FLYING = "flying"
    SLEEPING = "sleeping"
    DONE = "done"


@dataclass(frozen=True)
class Phase:
    kind: PhaseKind
    to_waypoint: int | None = None
    until: float | None = None


@dataclass(frozen=True)
class SimParams:
    speed: float = DEFAULT_SPEED
    yaw_rate: float = DEFAULT_YAW_RATE
    origin: Pose = ORIGIN


@dataclass(frozen=True)
class SimState:
    clock: float
    pose: Pose
    phase: Phase
    cursor: int
    params: SimParams


@dataclass(frozen=True)
class _Segment:
    """One constant-motion stretch of the timeline."""

    start_time: float
    duration: float
    kind: PhaseKind  # FLYING (slew or translate) or SLEEPING
    start_pose: Pose
    end_pose: Pose
    waypoint_index: int | None  # set on the segment that arrives at a waypoint
    item_index: int

    @property
    def end_time(self) -> float:
        return self.start_time + self.duration


def _mission_items(result: MissionResult) -> list[Waypoint | float]:
    """Waypoints and sleep durations in execution order."""
    items: list[Waypoint | float] = [
        max(0.0, s.seconds.value) for s in result.sleeps if s.after_waypoint_index < 0
    ]
    for waypoint in result.waypoints:
        items.append(waypoint)
        for s in result.sleeps:
            if s.after_waypoint_index == waypoint.index:
                items.append(max(0.0, s.seconds.value))
    return items


def _timeline(result: MissionResult, params: SimParams) -> list[_Segment]:
    segments: list[_Segment] = []
    clock = 0.0
    pose = params.origin
    for item_index, item in enumerate(_mission_items(result)):
        if isinstance(item, Waypoint):
            target_yaw = normalize_yaw(item.yaw.value)
            arc = yaw_arc(pose.yaw, target_yaw)
            if arc != 0.0:
                turned = Pose(pose.x, pose.y, pose.z, target_yaw)
                duration = abs(arc) / params.yaw_rate
                segments.append(_Segment(clock, duration, PhaseKind.FLYING, pose, turned,
                                         None, item_index))
                clock += duration
                pose = turned
            target = Pose(item.x.value, item.y.value, item.z.value, target_yaw)
            distance = math.dist((pose.x, pose.y, pose.z), (target.x, target.y, target.z))
            duration = distance / params.speed
            segments.append(_Segment(clock, duration, PhaseKind.FLYING, pose, target,
                                     item.index, item_index))
            clock += duration
            pose = target
        else:
            segments.append(_Segment(clock, item, PhaseKind.SLEEPING, pose, pose,
                                     None, item_index))
            clock += item
    return segments


def mission_duration(result: MissionResult, params: SimParams) -> float:
    segments = _timeline(result, params)
    return segments[-1].end_time if segments else 0.0


def start(result: MissionResult, params: SimParams | None = None) -> SimState:
    """Initial simulation state: idle at the origin with the clock at zero."""
    params = params or SimParams()
    if not params.speed > 0:
        raise BadParams(f"speed must be positive, got {params.speed}")
    if not params.yaw_rate > 0:
        raise BadParams(f"yaw rate must be positive, got {params.yaw_rate}")
    return SimState(0.0, params.origin, Phase(PhaseKind.IDLE), 0, params)


def _pose_at(segment: _Segment, t: float) -> Pose:
    if segment.duration <= 0.0 or t >= segment.end_time:
        return segment.end_pose
    fraction = (t - segment.start_time) / segment.duration
    a, b = segment.start_pose, segment.end_pose
    if segment.kind is PhaseKind.SLEEPING:
        return a
    if a.yaw != b.yaw:  # slewing in place
        return Pose(a.x, a.y, a.z, normalize_yaw(a.yaw + yaw_arc(a.yaw, b.yaw) * fraction))
    return Pose(
        a.x + (b.x - a.x) * fraction,
        a.y + (b.y - a.y) * fraction,
        a.z + (b.z - a.z) * fraction,
        a.yaw,
    )


def step(state: SimState, result: MissionResult, dt: float) -> SimState:
    """Advance a simulation by ``dt`` seconds.

    Time consumption stops exactly at mission completion within the
    completing step; stepping an already-finished state only advances
    the clock.
    """
    if not dt > 0:
        raise BadParams(f"dt must be positive, got {dt}")
    if state.phase.kind is PhaseKind.DONE:
        return SimState(state.clock + dt, state.pose, state.phase, state.cursor, state.params)
    segments = _timeline(result, state.params)
    total = segments[-1].end_time if segments else 0.0
    t = state.clock + dt
    if t >= total:
        end_pose = segments[-1].end_pose if segments else state.params.origin
        item_count = segments[-1].item_index + 1 if segments else 0
        return SimState(total, end_pose, Phase(PhaseKind.DONE), item_count, state.params)
    for segment in segments:
        if t < segment.end_time:
            if segment.kind is PhaseKind.SLEEPING:
                phase = Phase(PhaseKind.SLEEPING, until=segment.end_time)
            else:
                index = segment.waypoint_index
                if index is None:  # slew segment: still heading to that waypoint
                    index = _next_waypoint_index(segments, segment)
                phase = Phase(PhaseKind.FLYING, to_waypoint=index)
            return SimState(t, _pose_at(segment, t), phase, segment.item_index, state.params)
    raise AssertionError("unreachable: time within mission but no segment found")


def _next_waypoint_index(segments: list[_Segment], current: _Segment) -> int | None:
    for segment in segments:
        if segment.start_time >= current.end_time and segment.waypoint_index is not None:
            return segment.waypoint_index
    return None


def run_to_completion(
    state: SimState, result: MissionResult, dt: float, max_steps: int = 1_000_000
) -> tuple[SimState, list[SimState]]:
    """Step until Done; returns the final state and every intermediate state."""
    states = []
    for _ in range(max_steps):
        if state.phase.kind is PhaseKind.DONE:
            return state, states
        state = step(state, result, dt)
        states.append(state)
    raise AssertionError("simulation did not finish within max_steps")
