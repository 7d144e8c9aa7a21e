"""Rubric-based scoring of mission results.

Rubrics are data (YAML files), one point per criterion, so new missions
can be graded without code changes. The built-in criterion kinds cover
the square-patrol mission; parameterized custom predicates cover the
other missions' provisional rubrics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import yaml

from .interp import MissionResult, Waypoint
from .sim import normalize_yaw, yaw_arc

DEFAULT_POS_TOL = 0.01  # meters
DEFAULT_YAW_TOL = 5.0  # degrees


class CriterionKind(Enum):
    FLIES = "flies"
    FOUR_WAYPOINTS = "four_waypoints"
    IS_SQUARE = "is_square"
    ANGLE_CHANGED = "angle_changed"
    ANGLES_CORRECT = "angles_correct"
    WAIT_AFTER_MOVE = "wait_after_move"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Criterion:
    kind: CriterionKind
    pos_tol: float = DEFAULT_POS_TOL
    yaw_tol: float = DEFAULT_YAW_TOL
    expected_yaws: tuple[float, ...] = ()
    name: str = ""
    predicate: str = ""
    params: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return self.name if self.kind is CriterionKind.CUSTOM else self.kind.value


@dataclass(frozen=True)
class Rubric:
    mission_id: str
    criteria: tuple[Criterion, ...]
    title: str = ""
    provisional: bool = False

    @property
    def max_points(self) -> int:
        return len(self.criteria)


@dataclass(frozen=True)
class CriterionResult:
    label: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class GradeReport:
    mission_id: str
    per_criterion: tuple[CriterionResult, ...]
    points: int
    max_points: int


def _positions(waypoints: tuple[Waypoint, ...]) -> list[tuple[float, float, float]]:
    return [(w.x.value, w.y.value, w.z.value) for w in waypoints]


def _yaw_distance(a: float, b: float) -> float:
    return abs(yaw_arc(normalize_yaw(a), normalize_yaw(b)))


def _check_flies(result: MissionResult, c: Criterion) -> tuple[bool, str]:
    top = max((w.z.value for w in result.waypoints), default=0.0)
    if top > 0:
        return True, f"reaches altitude {top:g}"
    return False, "no waypoint has altitude above zero"


def _check_four_waypoints(result: MissionResult, c: Criterion) -> tuple[bool, str]:
    points = _positions(result.waypoints)
    if len(points) != 4:
        return False, f"expected exactly 4 waypoints, found {len(points)}"
    for i in range(4):
        for j in range(i + 1, 4):
            if math.dist(points[i], points[j]) <= c.pos_tol:
                return False, f"waypoints {i} and {j} coincide"
    return True, "4 distinct waypoints"


def _check_is_square(result: MissionResult, c: Criterion) -> tuple[bool, str]:
    points = _positions(result.waypoints)
    if len(points) != 4:
        return False, f"a square needs exactly 4 waypoints, found {len(points)}"
    zs = [p[2] for p in points]
    if max(zs) - min(zs) > c.pos_tol:
        return False, "waypoints are not at a constant altitude"
    sides = [math.dist(points[i], points[(i + 1) % 4]) for i in range(4)]
    diagonals = [math.dist(points[0], points[2]), math.dist(points[1], points[3])]
    if min(sides) <= c.pos_tol:
        return False, "degenerate square (a side has zero length)"
    if max(sides) - min(sides) > c.pos_tol:
        return False, f"side lengths differ: {', '.join(f'{s:.3f}' for s in sides)}"
    if abs(diagonals[0] - diagonals[1]) > c.pos_tol:
        return False, "diagonals differ (rectangle or skewed path)"
    return True, f"square of side {sides[0]:.3f}"


def _check_angle_changed(result: MissionResult, c: Criterion) -> tuple[bool, str]:
    yaws = [w.yaw.value for w in result.waypoints]
    for i in range(len(yaws)):
        for j in range(i + 1, len(yaws)):
            if _yaw_distance(yaws[i], yaws[j]) > c.yaw_tol:
                return True, f"waypoints {i} and {j} use different headings"
    for i, yaw in enumerate(yaws):
        if _yaw_distance(yaw, 0.0) > c.yaw_tol:
            return True, f"waypoint {i} turns away from the initial heading"
    return False, "heading is never adjusted"


def _check_angles_correct(result: MissionResult, c: Criterion) -> tuple[bool, str]:
    yaws = [w.yaw.value for w in result.waypoints]
    if len(c.expected_yaws) > len(yaws):
        return False, (
            f"rubric expects {len(c.expected_yaws)} headings but only "
            f"{len(yaws)} waypoints exist"
        )
    if len(c.expected_yaws) < len(yaws):
        return False, f"expected {len(c.expected_yaws)} waypoints, found {len(yaws)}"
    for i, (actual, expected) in enumerate(zip(yaws, c.expected_yaws)):
        if _yaw_distance(actual, expected) > c.yaw_tol:
            return False, f"waypoint {i} heading {normalize_yaw(actual):g} != expected {expected:g}"
    return True, "all headings match"


def _check_wait_after_move(result: MissionResult, c: Criterion) -> tuple[bool, str]:
    slept_after = {s.after_waypoint_index for s in result.sleeps}
    for w in result.waypoints:
        if not w.followed_by_wait and w.index not in slept_after:
            return False, f"waypoint {w.index} is not followed by a wait or sleep"
    return True, "every move is followed by a wait or sleep"


def _check_custom(result: MissionResult, c: Criterion) -> tuple[bool, str]:
    params = c.params
    if c.predicate == "min_waypoints":
        count = int(params.get("count", 1))
        ok = len(result.waypoints) >= count
        return ok, f"{len(result.waypoints)} waypoints (need at least {count})"
    if c.predicate == "min_altitude":
        z = float(params.get("z", 1.0))
        top = max((w.z.value for w in result.waypoints), default=0.0)
        return top >= z, f"peak altitude {top:g} (need at least {z:g})"
    if c.predicate == "distinct_altitudes":
        count = int(params.get("count", 2))
        tol = float(params.get("tol", DEFAULT_POS_TOL))
        levels: list[float] = []
        for w in result.waypoints:
            if all(abs(w.z.value - level) > tol for level in levels):
                levels.append(w.z.value)
        return len(levels) >= count, f"{len(levels)} altitude levels (need at least {count})"
    if c.predicate == "closed_loop":
        tol = float(params.get("tol", DEFAULT_POS_TOL))
        points = _positions(result.waypoints)
        if len(points) < 2:
            return False, "too few waypoints to close a loop"
        gap = math.dist(points[0], points[-1])
        return gap <= tol, f"start/end gap {gap:.3f} (tolerance {tol:g})"
    return False, f"unknown custom predicate {c.predicate!r}"


_CHECKS = {
    CriterionKind.FLIES: _check_flies,
    CriterionKind.FOUR_WAYPOINTS: _check_four_waypoints,
    CriterionKind.IS_SQUARE: _check_is_square,
    CriterionKind.ANGLE_CHANGED: _check_angle_changed,
    CriterionKind.ANGLES_CORRECT: _check_angles_correct,
    CriterionKind.WAIT_AFTER_MOVE: _check_wait_after_move,
    CriterionKind.CUSTOM: _check_custom,
}


def grade(result: MissionResult, rubric: Rubric) -> GradeReport:
    """Score a mission result: one point per satisfied criterion.

    A result with diagnostics is graded on whatever it produced before
    evaluation halted; its details say so.
    """
    suffix = ""
    if result.diagnostics:
        suffix = " (evaluation halted early)"
    per_criterion = []
    for criterion in rubric.criteria:
        passed, detail = _CHECKS[criterion.kind](result, criterion)
        per_criterion.append(CriterionResult(criterion.label, passed, detail + suffix))
    points = sum(1 for r in per_criterion if r.passed)
    return GradeReport(rubric.mission_id, tuple(per_criterion), points, rubric.max_points)


def load_rubric(path: str | Path) -> Rubric:
    """Read a rubric from a YAML key/value document."""
    doc = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    criteria = []
    for entry in doc.get("criteria", []):
        kind = CriterionKind(entry["id"])
        criteria.append(
            Criterion(
                kind=kind,
                pos_tol=float(entry.get("pos_tol", DEFAULT_POS_TOL)),
                yaw_tol=float(entry.get("yaw_tol", DEFAULT_YAW_TOL)),
                expected_yaws=tuple(float(y) for y in entry.get("expected_yaws", [])),
                name=entry.get("name", ""),
                predicate=entry.get("predicate", ""),
                params=dict(entry.get("params", {})),
            )
        )
    return Rubric(
        mission_id=doc["mission"],
        criteria=tuple(criteria),
        title=doc.get("title", ""),
        provisional=bool(doc.get("provisional", False)),
    )
