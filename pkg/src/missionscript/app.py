"""HTTP/WebSocket surface of the session server.

``/session`` is a persistent bidirectional channel: the client sends
one ``createSession`` message, then requests; each yields exactly one
response, and during an active simulation the server pushes additional
``simFrame`` messages. Stateless endpoints serve rubrics, mission
instructions and session log exports.
"""

from __future__ import annotations

import asyncio
import json
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from .engine import Session, SessionManager
from .protocol import (
    CreateSession,
    ProtocolViolation,
    RunSimulation,
    error,
    parse_request,
)
from .sim import PhaseKind

SIM_STREAM_INTERVAL = 0.05  # seconds of real and simulated time per pushed frame
SNAPSHOT_POLL_INTERVAL = 1.0


def build_app(manager: SessionManager, frontend_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="missionscript")

    @app.get("/rubrics/{task_id}")
    def get_rubric(task_id: str):
        for task in manager.tasks:
            if task.task_id == task_id:
                rubric = task.rubric
                return JSONResponse(
                    {
                        "mission": rubric.mission_id,
                        "title": rubric.title,
                        "provisional": rubric.provisional,
                        "maxPoints": rubric.max_points,
                        "criteria": [
                            {
                                "id": c.kind.value,
                                "name": c.name,
                                "posTol": c.pos_tol,
                                "yawTol": c.yaw_tol,
                                "expectedYaws": list(c.expected_yaws),
                                "predicate": c.predicate,
                                "params": c.params,
                            }
                            for c in rubric.criteria
                        ],
                    }
                )
        return JSONResponse({"error": f"no task {task_id!r}"}, status_code=404)

    @app.get("/missions")
    def list_missions():
        return JSONResponse(
            [{"taskId": t.task_id, "title": t.title} for t in manager.tasks]
        )

    @app.get("/missions/{task_id}")
    def get_mission(task_id: str):
        for task in manager.tasks:
            if task.task_id == task_id:
                return PlainTextResponse(task.instructions)
        return PlainTextResponse(f"no task {task_id!r}", status_code=404)

    @app.get("/session/{session_id}/log")
    def export_log(session_id: str):
        session = manager.get(session_id)
        if session is None:
            return PlainTextResponse(f"no session {session_id!r}", status_code=404)
        return PlainTextResponse(session.export_log(), media_type="application/x-ndjson")

    @app.websocket("/session")
    async def session_channel(ws: WebSocket):
        await ws.accept()
        session: Session | None = None
        sim_task: asyncio.Task | None = None
        snapshot_task: asyncio.Task | None = None
        send_lock = asyncio.Lock()

        async def send(doc: dict) -> None:
            async with send_lock:
                await ws.send_text(json.dumps(doc))

        async def stream_sim(current: Session) -> None:
            while current.sim is not None and current.sim.phase.kind is not PhaseKind.DONE:
                await asyncio.sleep(SIM_STREAM_INTERVAL)
                responses = current.handle_sim_stream_tick(SIM_STREAM_INTERVAL)
                for response in responses:
                    await send(response.to_doc())

        async def poll_snapshots(current: Session) -> None:
            while True:
                await asyncio.sleep(SNAPSHOT_POLL_INTERVAL)
                current.maybe_snapshot()

        try:
            while True:
                raw = await ws.receive_text()
                try:
                    request = parse_request(json.loads(raw))
                except (json.JSONDecodeError, ProtocolViolation) as exc:
                    await send(error("BadRequest", str(exc)).to_doc())
                    continue
                if session is None:
                    if not isinstance(request, CreateSession):
                        await send(error("BadRequest", "create a session first").to_doc())
                        continue
                    session, response = manager.create_session(request)
                    snapshot_task = asyncio.create_task(poll_snapshots(session))
                    await send(response.to_doc())
                    continue
                if isinstance(request, CreateSession):
                    await send(error("BadRequest", "session already created").to_doc())
                    continue
                responses = session.handle(request)
                for response in responses:
                    await send(response.to_doc())
                if isinstance(request, RunSimulation):
                    if sim_task is not None:
                        sim_task.cancel()
                    sim_task = asyncio.create_task(stream_sim(session))
        except WebSocketDisconnect:
            pass
        finally:
            for task in (sim_task, snapshot_task):
                if task is not None:
                    task.cancel()
            if session is not None:
                manager.close_session(session)

    if frontend_dir is not None and Path(frontend_dir).exists():
        app.mount("/", StaticFiles(directory=str(frontend_dir), html=True), name="studio")

    return app
