"""Random program generation shared by the corpus-based tests.

The straight-line corpus deliberately avoids control flow so a literal
perturbation can never change which waypoints exist: that keeps the
finite-difference provenance oracle exact. Divisors are positive
literals only, and magnitudes are kept small, so a +1.0 perturbation
can neither divide by zero nor overflow.
"""

from __future__ import annotations

import random

from missionscript.source import format_number

VARS = ("a", "b", "c", "d", "e")
MARKERS = ("red", "green", "blue")
MARKER_READS = ("marker_x", "marker_y", "marker_z", "marker_yaw")


def _literal(rng: random.Random) -> str:
    return format_number(round(rng.uniform(-4.0, 4.0), 4))


def _positive_literal(rng: random.Random) -> str:
    return format_number(round(rng.uniform(1.0, 4.0), 4))


def gen_expr(rng: random.Random, env: list[str], depth: int, markers: bool) -> str:
    roll = rng.random()
    if depth <= 0 or roll < 0.35:
        if env and rng.random() < 0.45:
            return rng.choice(env)
        if markers and rng.random() < 0.15:
            return f'{rng.choice(MARKER_READS)}("{rng.choice(MARKERS)}")'
        return _literal(rng)
    if roll < 0.45:
        return f"-({gen_expr(rng, env, depth - 1, markers)})"
    op = rng.choice(("+", "-", "*", "/"))
    lhs = gen_expr(rng, env, depth - 1, markers)
    if op == "/":
        return f"({lhs}) / {_positive_literal(rng)}"
    rhs = gen_expr(rng, env, depth - 1, markers)
    return f"({lhs}) {op} ({rhs})"


def gen_straight_line_program(
    rng: random.Random,
    max_statements: int = 30,
    markers: bool = False,
) -> str:
    """Source of a straight-line mission: assignments + builtin calls."""
    lines: list[str] = []
    env: list[str] = []
    statement_count = rng.randint(2, max_statements)
    move_count = 0
    for _ in range(statement_count - 1):
        roll = rng.random()
        if roll < 0.45:
            name = rng.choice(VARS)
            lines.append(f"{name} = {gen_expr(rng, env, rng.randint(0, 3), markers)}")
            if name not in env:
                env.append(name)
        elif roll < 0.8:
            args = ", ".join(gen_expr(rng, env, rng.randint(0, 2), markers) for _ in range(4))
            lines.append(f"moveTo({args})")
            move_count += 1
        elif roll < 0.9 and move_count:
            lines.append("wait()")
        elif roll < 0.95 and move_count:
            lines.append(f"sleep({_positive_literal(rng)})")
        else:
            lines.append(f'print("v", {gen_expr(rng, env, 1, markers)})')
    if move_count == 0:
        args = ", ".join(gen_expr(rng, env, 1, markers) for _ in range(4))
        lines.append(f"moveTo({args})")
    return "\n".join(lines)


def gen_mission_program(rng: random.Random, max_waypoints: int = 8) -> str:
    """Plain-literal mission (moveTo/wait/sleep only) for simulation tests."""
    lines = []
    for _ in range(rng.randint(1, max_waypoints)):
        x, y, z = (format_number(round(rng.uniform(-5, 5), 3)) for _ in range(3))
        yaw = format_number(round(rng.uniform(-400, 400), 2))
        lines.append(f"moveTo({x}, {y}, {z}, {yaw})")
        if rng.random() < 0.5:
            lines.append("wait()")
        if rng.random() < 0.3:
            lines.append(f"sleep({format_number(round(rng.uniform(0.1, 2.0), 3))})")
    return "\n".join(lines)
