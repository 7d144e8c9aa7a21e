"""Mission task definitions: instruction text plus a grading rubric."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .grading import Rubric, load_rubric


@dataclass(frozen=True)
class MissionTask:
    task_id: str
    title: str
    instructions: str
    rubric: Rubric


def load_mission_set(rubrics_dir: str | Path, missions_dir: str | Path) -> list[MissionTask]:
    """Pair every rubric file with its instruction document.

    Rubric files are ``<rubrics_dir>/*.yaml``; instructions are plain
    text at ``<missions_dir>/<missionId>.md`` (optional: a task without
    instructions gets an empty document).
    """
    rubrics_dir = Path(rubrics_dir)
    missions_dir = Path(missions_dir)
    tasks = []
    for path in sorted(rubrics_dir.glob("*.yaml")):
        rubric = load_rubric(path)
        instructions_path = missions_dir / f"{rubric.mission_id}.md"
        instructions = (
            instructions_path.read_text(encoding="utf-8")
            if instructions_path.exists()
            else ""
        )
        tasks.append(
            MissionTask(rubric.mission_id, rubric.title or rubric.mission_id, instructions, rubric)
        )
    return tasks
