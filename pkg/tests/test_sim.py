from __future__ import annotations

import math
import random

import pytest

from missionscript.errors import BadParams
from missionscript.interp import MissionResult, evaluate
from missionscript.parser import parse
from missionscript.sim import (
    Phase,
    PhaseKind,
    Pose,
    SimParams,
    build_geometry,
    mission_duration,
    normalize_yaw,
    run_to_completion,
    start,
    step,
    yaw_arc,
)

from gen import gen_mission_program


def run(source: str) -> MissionResult:
    result = evaluate(parse(source))
    assert not result.diagnostics
    return result


def analytic_times(result: MissionResult, params: SimParams) -> tuple[float, list[float]]:
    """Independent re-derivation of total time and per-waypoint arrival times."""
    items: list = [max(0.0, s.seconds.value) for s in result.sleeps if s.after_waypoint_index < 0]
    for wp in result.waypoints:
        items.append(wp)
        items.extend(
            max(0.0, s.seconds.value)
            for s in result.sleeps
            if s.after_waypoint_index == wp.index
        )
    clock = 0.0
    pose = (params.origin.x, params.origin.y, params.origin.z, params.origin.yaw)
    arrivals = []
    for item in items:
        if isinstance(item, float):
            clock += item
            continue
        target_yaw = normalize_yaw(item.yaw.value)
        arc = yaw_arc(pose[3], target_yaw)
        if arc != 0.0:
            clock += abs(arc) / params.yaw_rate
        target = (item.x.value, item.y.value, item.z.value, target_yaw)
        clock += math.dist(pose[:3], target[:3]) / params.speed
        arrivals.append(clock)
        pose = target
    return clock, arrivals


def test_geometry_counts():
    assert build_geometry(run("wait()")).points == ()
    one = build_geometry(run("moveTo(0, 0, 1, 0)"))
    assert len(one.points) == 1 and one.segments == ()
    square = build_geometry(
        run("moveTo(0,0,1,0) moveTo(2,0,1,0) moveTo(2,2,1,0) moveTo(0,2,1,0)")
    )
    assert len(square.points) == 4
    assert square.segments == ((0, 1), (1, 2), (2, 3))


def test_geometry_mirrors_waypoints_and_normalizes_yaw():
    geometry = build_geometry(run("moveTo(1, -2, 3, 450)"))
    (p,) = geometry.points
    assert (p.x, p.y, p.z) == (1.0, -2.0, 3.0)
    assert p.yaw == 90.0
    assert p.waypoint_index == 0


def test_start_state():
    state = start(run("moveTo(0, 0, 1, 0)"), SimParams(speed=1.0))
    assert state.clock == 0.0
    assert state.pose == Pose(0, 0, 0, 0)
    assert state.phase == Phase(PhaseKind.IDLE)


def test_start_rejects_bad_params():
    result = run("moveTo(0, 0, 1, 0)")
    with pytest.raises(BadParams):
        start(result, SimParams(speed=0.0))
    with pytest.raises(BadParams):
        start(result, SimParams(yaw_rate=-90.0))


def test_linear_motion():
    result = run("moveTo(0, 0, 1, 0)")
    state = step(start(result), result, 0.5)
    assert state.pose == Pose(0, 0, 0.5, 0)
    assert state.phase == Phase(PhaseKind.FLYING, to_waypoint=0)


def test_excess_time_carries_into_next_leg():
    # two vertical legs of 1 m and 2 m at 1 m/s
    result = run("moveTo(0, 0, 1, 0) moveTo(0, 0, 3, 0)")
    state = step(start(result), result, 1.5)
    assert state.pose.z == pytest.approx(1.5)
    assert state.phase.to_waypoint == 1
    final, _ = run_to_completion(start(result), result, 0.25)
    assert final.clock == pytest.approx(3.0, abs=1e-9)


def test_yaw_slews_before_translation():
    # quarter turn at 90 deg/s takes 1 s before the 1 m climb starts
    result = run("moveTo(0, 0, 1, 90)")
    mid_turn = step(start(result), result, 0.5)
    assert mid_turn.pose == Pose(0, 0, 0, 45.0)
    turned = step(mid_turn, result, 0.5)
    assert turned.pose == Pose(0, 0, 0, 90.0)
    climbing = step(turned, result, 0.5)
    assert climbing.pose == Pose(0, 0, 0.5, 90.0)


def test_yaw_takes_shortest_arc():
    result = run("moveTo(0, 0, 1, 270)")
    # 270 is a quarter turn the negative way round: 1 s, not 3 s
    state = step(start(result), result, 0.5)
    assert state.pose.yaw == pytest.approx(315.0)
    total = mission_duration(result, SimParams())
    assert total == pytest.approx(1.0 + 1.0)


def test_sleep_holds_pose():
    result = run("moveTo(0, 0, 1, 0) sleep(2)")
    state = step(start(result), result, 1.5)
    assert state.pose == Pose(0, 0, 1, 0)
    assert state.phase.kind is PhaseKind.SLEEPING
    assert state.phase.until == pytest.approx(3.0)


def test_done_is_absorbing():
    result = run("moveTo(0, 0, 1, 0)")
    final, _ = run_to_completion(start(result), result, 0.3)
    assert final.phase.kind is PhaseKind.DONE
    later = step(final, result, 5.0)
    assert later.phase.kind is PhaseKind.DONE
    assert later.pose == final.pose
    assert later.cursor == final.cursor
    assert later.clock == final.clock + 5.0


def test_empty_mission_finishes_immediately():
    result = run("print(1)")
    state = step(start(result), result, 0.1)
    assert state.phase.kind is PhaseKind.DONE
    assert state.clock == 0.0


def test_completion_clock_equals_analytic_total():
    rng = random.Random(61)
    for _ in range(30):
        result = evaluate(parse(gen_mission_program(rng)))
        params = SimParams(speed=rng.uniform(0.5, 3.0), yaw_rate=rng.uniform(30, 180))
        expected_total, _ = analytic_times(result, params)
        final, _ = run_to_completion(start(result, params), result, 0.13)
        assert final.clock == pytest.approx(expected_total, abs=1e-6)


def test_step_size_independence():
    rng = random.Random(67)
    for _ in range(10):
        result = evaluate(parse(gen_mission_program(rng)))
        fine, fine_states = run_to_completion(start(result), result, 0.01)
        coarse, coarse_states = run_to_completion(start(result), result, 0.1)
        assert fine.clock == coarse.clock
        fine_order = [s.cursor for s in fine_states]
        coarse_order = [s.cursor for s in coarse_states]
        assert sorted(set(fine_order)) == fine_order_unique(fine_order)
        assert set(fine_order) >= set(coarse_order)


def fine_order_unique(order: list[int]) -> list[int]:
    seen = []
    for item in order:
        if not seen or item != seen[-1]:
            seen.append(item)
    assert seen == sorted(seen)
    return sorted(set(order))


def test_waypoints_visited_in_order_with_exact_arrival():
    rng = random.Random(71)
    for _ in range(20):
        result = evaluate(parse(gen_mission_program(rng)))
        if not result.waypoints:
            continue
        params = SimParams()
        _, arrivals = analytic_times(result, params)
        fresh = start(result, params)
        for wp, arrival in zip(result.waypoints, arrivals):
            state = step(fresh, result, arrival)
            assert state.pose.x == wp.x.value
            assert state.pose.y == wp.y.value
            assert state.pose.z == wp.z.value
            assert state.pose.yaw == normalize_yaw(wp.yaw.value)
        # stepping order: cursors never decrease
        _, states = run_to_completion(start(result, params), result, 0.07)
        cursors = [s.cursor for s in states]
        assert cursors == sorted(cursors)
        assert states[-1].phase.kind is PhaseKind.DONE
