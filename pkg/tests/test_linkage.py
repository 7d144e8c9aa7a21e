from __future__ import annotations

import random

import pytest

from missionscript.errors import UnknownWaypoint
from missionscript.interp import MarkerSet, evaluate
from missionscript.lexer import TokenKind, tokenize
from missionscript.linkage import (
    EditRequest,
    Exact,
    Unsolvable,
    apply_edit,
    highlight,
    solve_edit,
)
from missionscript.parser import parse
from missionscript.source import SourceSpan
from missionscript.trace import Axis, literal_leaves

from gen import gen_straight_line_program

MARKERS = MarkerSet.default()


def run(source: str):
    return evaluate(parse(source), MARKERS)


# -- highlight -------------------------------------------------------------


def test_highlight_single_axis():
    result = run("moveTo(1, 2, 3, 0)")
    got = highlight(result, 0, frozenset({Axis.Z}))
    assert got.spans == {SourceSpan(13, 14)}


def test_highlight_union_over_axes():
    source = "s = 2\nmoveTo(s, s*2, 1, 0)"
    result = run(source)
    got = highlight(result, 0)
    assert got.spans == {
        SourceSpan(4, 5),    # the 2 bound to s
        SourceSpan(18, 19),  # the 2 in s*2
        SourceSpan(21, 22),  # the altitude 1
        SourceSpan(24, 25),  # the yaw 0
    }


def test_highlight_external_only_is_empty():
    result = run('moveTo(marker_x("red"), 0, 1, 0)')
    got = highlight(result, 0, frozenset({Axis.X}))
    assert got.spans == frozenset()


def test_highlight_unknown_waypoint():
    result = run("moveTo(1, 2, 3, 0)")
    with pytest.raises(UnknownWaypoint):
        highlight(result, 5)


def test_highlight_rejects_empty_axes():
    result = run("moveTo(1, 2, 3, 0)")
    with pytest.raises(ValueError):
        highlight(result, 0, frozenset())


# -- solve_edit ------------------------------------------------------------


def test_single_literal_inversion():
    program = parse("moveTo(1, 2, 3, 0)")
    proposal = solve_edit(program, MARKERS, EditRequest(0, {Axis.Z: 5.0}))
    assert proposal.status == Exact()
    assert len(proposal.rewrites) == 1
    assert proposal.rewrites[0].span == SourceSpan(13, 14)
    assert proposal.rewrites[0].new_value == 5.0
    assert proposal.iterations == 1


def test_offset_solved_through_variable():
    # x = s + 1 with target 4: the offset stays fixed, s becomes 3
    program = parse("s = 2\nmoveTo(s+1, 0, 1, 0)")
    proposal = solve_edit(program, MARKERS, EditRequest(0, {Axis.X: 4.0}))
    assert proposal.status == Exact()
    assert len(proposal.rewrites) == 1
    assert proposal.rewrites[0].span == SourceSpan(4, 5)
    assert proposal.rewrites[0].new_value == 3.0


def test_self_dependent_sum_converges():
    program = parse("a = 2\nmoveTo(a+a, 0, 1, 0)")
    proposal = solve_edit(program, MARKERS, EditRequest(0, {Axis.X: 10.0}))
    assert proposal.status == Exact()
    assert proposal.iterations <= 16
    assert len(proposal.rewrites) == 1
    assert proposal.rewrites[0].span == SourceSpan(4, 5)
    assert proposal.rewrites[0].new_value == pytest.approx(5.0)
    out = apply_edit(program.source, proposal)
    assert evaluate(parse(out), MARKERS).waypoints[0].x.value == pytest.approx(10.0, abs=1e-6)


def test_external_only_is_unsolvable():
    program = parse('moveTo(marker_x("red"), 0, 1, 0)')
    proposal = solve_edit(program, MARKERS, EditRequest(0, {Axis.X: 9.0}))
    assert isinstance(proposal.status, Unsolvable)
    assert proposal.rewrites == ()


def test_mixed_trace_solves_through_literal_branch():
    program = parse('moveTo(marker_x("red") + 1, 0, 1, 0)')
    proposal = solve_edit(program, MARKERS, EditRequest(0, {Axis.X: 9.0}))
    assert proposal.status == Exact()
    out = apply_edit(program.source, proposal)
    assert evaluate(parse(out), MARKERS).waypoints[0].x.value == pytest.approx(9.0)


def test_conflicting_axes_unsolvable():
    program = parse("s = 2\nmoveTo(s, s, 1, 0)")
    proposal = solve_edit(program, MARKERS, EditRequest(0, {Axis.X: 5.0, Axis.Y: 7.0}))
    assert isinstance(proposal.status, Unsolvable)
    assert "conflict" in proposal.status.reason


def test_shared_literal_consistent_targets():
    program = parse("s = 2\nmoveTo(s, s, 1, 0)")
    proposal = solve_edit(program, MARKERS, EditRequest(0, {Axis.X: 5.0, Axis.Y: 5.0}))
    assert proposal.status == Exact()
    assert len(proposal.rewrites) == 1


def test_already_satisfied_returns_empty_exact():
    program = parse("moveTo(1, 2, 3, 0)")
    proposal = solve_edit(program, MARKERS, EditRequest(0, {Axis.Z: 3.0}))
    assert proposal.status == Exact()
    assert proposal.rewrites == ()
    assert apply_edit(program.source, proposal) == program.source


def test_unknown_waypoint_rejected():
    program = parse("moveTo(1, 2, 3, 0)")
    with pytest.raises(UnknownWaypoint):
        solve_edit(program, MARKERS, EditRequest(3, {Axis.Z: 5.0}))


def test_unsolvable_proposal_cannot_be_applied():
    program = parse('moveTo(marker_x("red"), 0, 1, 0)')
    proposal = solve_edit(program, MARKERS, EditRequest(0, {Axis.X: 9.0}))
    with pytest.raises(ValueError):
        apply_edit(program.source, proposal)


def test_solve_does_not_mutate_input():
    source = "a = 2\nmoveTo(a+a, 0, 1, 0)"
    program = parse(source)
    solve_edit(program, MARKERS, EditRequest(0, {Axis.X: 10.0}))
    assert program.source == source
    assert parse(source) == program


def test_negative_target_through_multiplication():
    program = parse("s = 2\nmoveTo(s*3, 0, 1, 0)")
    proposal = solve_edit(program, MARKERS, EditRequest(0, {Axis.X: -6.0}))
    assert proposal.status == Exact()
    out = apply_edit(program.source, proposal)
    assert evaluate(parse(out), MARKERS).waypoints[0].x.value == pytest.approx(-6.0)


def test_division_inversion():
    program = parse("moveTo(8/4, 0, 1, 0)")
    proposal = solve_edit(program, MARKERS, EditRequest(0, {Axis.X: 5.0}))
    assert proposal.status == Exact()
    out = apply_edit(program.source, proposal)
    assert evaluate(parse(out), MARKERS).waypoints[0].x.value == pytest.approx(5.0)


def test_loop_first_iteration_backtracks_to_start_bound():
    # at k=0 the step*k product is singular; the solver must fall back to
    # the loop start bound
    program = parse("for i = 2, 4 do moveTo(i, 0, 1, 0) end")
    proposal = solve_edit(program, MARKERS, EditRequest(0, {Axis.X: 3.0}))
    assert proposal.status == Exact()
    out = apply_edit(program.source, proposal)
    assert evaluate(parse(out), MARKERS).waypoints[0].x.value == pytest.approx(3.0)


def test_square_scaling_via_loop():
    source = (
        "s = 2\n"
        "for i = 0, 3 do\n"
        "  x = 0\n"
        "  y = 0\n"
        "  if i == 1 then x = s end\n"
        "  if i == 2 then\n"
        "    x = s\n"
        "    y = s\n"
        "  end\n"
        "  if i == 3 then y = s end\n"
        "  moveTo(x, y, 1, i * 90)\n"
        "  wait()\n"
        "end"
    )
    program = parse(source)
    result = evaluate(program, MARKERS)
    corners = [(w.x.value, w.y.value) for w in result.waypoints]
    assert corners == [(0, 0), (2, 0), (2, 2), (0, 2)]
    # drag corner 2 diagonally outward to grow the square to side 3
    proposal = solve_edit(program, MARKERS, EditRequest(2, {Axis.X: 3.0, Axis.Y: 3.0}))
    assert proposal.status == Exact()
    assert len(proposal.rewrites) == 1  # the single shared size constant
    out = apply_edit(source, proposal)
    scaled = evaluate(parse(out), MARKERS)
    assert [(w.x.value, w.y.value) for w in scaled.waypoints] == [(0, 0), (3, 0), (3, 3), (0, 3)]


# -- invariants over the random corpus ---------------------------------------


def _solvable_requests(rng, result, count=3):
    requests = []
    for wp in result.waypoints:
        for axis in Axis:
            if literal_leaves(wp.component(axis).trace):
                requests.append((wp.index, axis, wp.component(axis).value))
    rng.shuffle(requests)
    return requests[:count]


def test_highlight_edit_coherence_and_roundtrip():
    rng = random.Random(53)
    exact_seen = 0
    for _ in range(40):
        source = gen_straight_line_program(rng, markers=True)
        program = parse(source)
        result = evaluate(program, MARKERS)
        if result.diagnostics:
            continue
        for index, axis, value in _solvable_requests(rng, result):
            target = value + rng.uniform(-3, 3)
            proposal = solve_edit(program, MARKERS, EditRequest(index, {axis: target}))
            if isinstance(proposal.status, Unsolvable):
                continue
            allowed = highlight(result, index, frozenset({axis})).spans
            for rewrite in proposal.rewrites:
                assert rewrite.span in allowed
            if isinstance(proposal.status, Exact):
                exact_seen += 1
                out = apply_edit(source, proposal)
                achieved = evaluate(parse(out), MARKERS).waypoints[index].component(axis).value
                assert achieved == pytest.approx(target, abs=1e-6)
    assert exact_seen >= 50


def test_edit_conserves_program_shape():
    rng = random.Random(59)
    for _ in range(30):
        source = gen_straight_line_program(rng)
        program = parse(source)
        result = evaluate(program, MARKERS)
        if result.diagnostics or not result.waypoints:
            continue
        for index, axis, value in _solvable_requests(rng, result, count=1):
            proposal = solve_edit(program, MARKERS, EditRequest(index, {axis: value + 1.5}))
            if isinstance(proposal.status, Unsolvable):
                continue
            out = apply_edit(source, proposal)
            old = [t.text for t in tokenize(source) if t.kind is not TokenKind.NUMBER]
            new = [t.text for t in tokenize(out) if t.kind is not TokenKind.NUMBER]
            assert old == new
            assert len(parse(out).statements) == len(program.statements)
