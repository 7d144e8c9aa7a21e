"""Command-line entry point for the session server."""

from __future__ import annotations

import argparse
from pathlib import Path

import uvicorn

from .app import build_app
from .engine import SessionManager
from .tasks import load_mission_set


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(
        prog="missionscript-server",
        description="Serve the live mission programming environment.",
    )
    parser.add_argument("--listen", default="127.0.0.1:8765",
                        help="host:port to bind (default %(default)s)")
    parser.add_argument("--rubrics", default="rubrics",
                        help="directory of rubric YAML files (default %(default)s)")
    parser.add_argument("--missions", default="missions",
                        help="directory of mission instruction documents (default %(default)s)")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for the condition randomizer (default: system entropy)")
    parser.add_argument("--logs", default="session_logs",
                        help="directory for persisted session logs (default %(default)s)")
    parser.add_argument("--frontend", default=None,
                        help="directory of built studio assets to serve at / (optional)")
    args = parser.parse_args(argv)

    host, _, port = args.listen.rpartition(":")
    tasks = load_mission_set(args.rubrics, args.missions)
    manager = SessionManager(tasks, seed=args.seed, log_dir=Path(args.logs))
    app = build_app(manager, frontend_dir=args.frontend)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")


if __name__ == "__main__":
    main()
