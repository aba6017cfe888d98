"""HTTP service over scenes, assets, game sessions, and analytics.

Sessions live in memory and are durably backed by JSON-lines interaction
logs: every state-changing request is appended to the session's log file
before the response goes out, so a restart can rebuild every session by
replaying its log. Requests within one session are serialized by a
per-session lock; different sessions run fully concurrently.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from ..analytics import (
    MwuError,
    SusError,
    SusResponse,
    mann_whitney_u,
    sus_summary,
)
from ..game.session import (
    GameError,
    GameSession,
    NotFoundError,
    enter_game,
    grab,
    new_session,
    release,
    return_to_roaming,
    submit_answer,
    teleport,
)
from ..game.config import Pose
from ..scene.model import MuseumScene
from ..scene.validate import validate_scene
from ..sessionlog.events import InteractionEvent
from ..sessionlog.log import SessionLog, read_jsonl, record
from ..sessionlog.replay import replay


class SceneRejectedError(ValueError):
    """The scene has validation findings and cannot be served."""

    def __init__(self, findings):
        self.findings = findings
        lines = "; ".join(f"{f.code}({f.subject})" for f in findings[:10])
        super().__init__(f"scene failed validation with {len(findings)} findings: {lines}")


@dataclass
class ApiSession:
    session_id: str
    created_at: str
    scene_version: str
    state: GameSession
    log: SessionLog
    log_path: Path
    lock: threading.Lock = field(default_factory=threading.Lock)
    idempotency: dict[str, tuple[int, dict]] = field(default_factory=dict)

    def append_event(self, event: InteractionEvent) -> None:
        # write-ahead: the line hits disk before the caller responds
        record(self.log, event)
        with open(self.log_path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event.to_dict(), sort_keys=True) + "\n")
            fh.flush()


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": code, "message": message})


# action type -> (required fields, event builder)
_ACTION_FIELDS = {
    "Teleport": ("point_id",),
    "Touch": ("item_id",),
    "Grab": ("item_id",),
    "Rotate": ("item_id", "rotation"),
    "Release": ("item_id", "pose"),
    "PanelOpen": ("exhibit_id",),
    "EnterGame": (),
    "ReturnToRoaming": (),
}


def create_app(scene: MuseumScene, asset_dir: Optional[Path] = None,
               data_dir: Optional[Path] = None) -> FastAPI:
    findings = validate_scene(scene)
    if findings:
        raise SceneRejectedError(findings)

    asset_dir = Path(asset_dir) if asset_dir else None
    data_dir = Path(data_dir) if data_dir else None
    if data_dir:
        data_dir.mkdir(parents=True, exist_ok=True)

    app = FastAPI(title="virtual museum gateway")
    sessions: dict[str, ApiSession] = {}
    sessions_lock = threading.Lock()
    scene_json = scene.to_dict()

    def _recover() -> None:
        if not data_dir:
            return
        for path in sorted(data_dir.glob("*.session.jsonl")):
            try:
                log = read_jsonl(path)
                state, _findings = replay(log, scene)
            except (ValueError, OSError):
                continue  # unreadable log, leave the file alone
            sessions[log.session_id] = ApiSession(
                session_id=log.session_id,
                created_at="",
                scene_version=log.scene_version,
                state=state,
                log=log,
                log_path=path,
            )

    _recover()

    def _get(session_id: str) -> Optional[ApiSession]:
        with sessions_lock:
            return sessions.get(session_id)

    def _session_body(api: ApiSession, extra: Optional[dict] = None) -> dict:
        body = {
            "session_id": api.session_id,
            "created_at": api.created_at,
            "scene_version": api.scene_version,
            "state": api.state.to_dict(),
        }
        if extra:
            body.update(extra)
        return body

    def _next_t(api: ApiSession, requested) -> Optional[int]:
        if requested is None:
            return api.log.last_t + 1 if api.log.events else 0
        t = int(requested)
        if api.log.events and t < api.log.last_t:
            return None  # regression, caller turns this into a 400
        return t

    @app.get("/api/scene")
    def get_scene() -> Response:
        return JSONResponse(content=scene_json, headers={"X-Scene-Version": scene.version})

    @app.get("/api/assets/{exhibit_id}.glb")
    def get_asset(exhibit_id: str) -> Response:
        ex = scene.exhibit(exhibit_id)
        if ex is None:
            return _error(404, "not-found", f"unknown exhibit {exhibit_id!r}")
        if asset_dir is None:
            return _error(404, "not-found", "no asset directory configured")
        path = asset_dir / ex.mesh_asset
        if not path.is_file():
            return _error(404, "not-found", f"asset {ex.mesh_asset!r} not on disk")
        return Response(content=path.read_bytes(), media_type="model/gltf-binary")

    @app.get("/api/exhibits/{exhibit_id}/knowledge")
    def get_knowledge(exhibit_id: str) -> Response:
        ex = scene.exhibit(exhibit_id)
        if ex is None:
            return _error(404, "not-found", f"unknown exhibit {exhibit_id!r}")
        return JSONResponse({
            "exhibit_id": ex.id,
            "display_name": ex.display_name,
            "knowledge_text": ex.knowledge_text,
        })

    @app.post("/api/sessions", status_code=201)
    async def create_session(request: Request) -> Response:
        try:
            body = await request.json()
        except Exception:
            body = {}
        if not isinstance(body, dict):
            return _error(400, "malformed", "body must be a JSON object")
        session_id = str(body.get("session_id") or uuid.uuid4().hex)
        with sessions_lock:
            if session_id in sessions:
                return _error(409, "conflict", f"session {session_id!r} already exists")
            state = new_session(scene, session_id=session_id)
            log = SessionLog(session_id=session_id, scene_version=scene.version)
            log_path = (data_dir / f"{session_id}.session.jsonl") if data_dir else Path("/dev/null")
            api = ApiSession(
                session_id=session_id,
                created_at=datetime.now(timezone.utc).isoformat(),
                scene_version=scene.version,
                state=state,
                log=log,
                log_path=log_path,
            )
            sessions[session_id] = api
        if data_dir:
            with open(api.log_path, "w", encoding="utf-8") as fh:
                fh.write(json.dumps(log.header_dict(), sort_keys=True) + "\n")
        return JSONResponse(status_code=201, content=_session_body(api))

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str) -> Response:
        api = _get(session_id)
        if api is None:
            return _error(404, "not-found", f"unknown session {session_id!r}")
        with api.lock:
            return JSONResponse(_session_body(api))

    def _apply_action(api: ApiSession, body: dict) -> tuple[int, dict]:
        action = body.get("type")
        if action not in _ACTION_FIELDS:
            return 400, {"error": "malformed", "message": f"unknown action type {action!r}"}
        missing = [f for f in _ACTION_FIELDS[action] if f not in body]
        if missing:
            return 400, {"error": "malformed", "message": f"missing fields {missing}"}
        t = _next_t(api, body.get("t"))
        if t is None:
            return 400, {"error": "malformed", "message": "timestamp went backwards"}

        state = api.state
        try:
            if action == "Teleport":
                state = teleport(state, scene, body["point_id"])
            elif action == "EnterGame":
                state = enter_game(state, scene)
            elif action == "ReturnToRoaming":
                state = return_to_roaming(state, scene)
            elif action == "Grab":
                state = grab(state, scene, body["item_id"])
            elif action == "Release":
                if api.state.grabbed != body["item_id"]:
                    raise GameError(f"release of {body['item_id']!r} while holding {api.state.grabbed!r}")
                state = release(state, scene, Pose.from_dict(body["pose"]))
            elif action == "Rotate":
                if api.state.grabbed != body["item_id"]:
                    raise GameError(f"rotate of {body['item_id']!r} while not holding it")
            elif action == "Touch":
                if scene.exhibit(body["item_id"]) is None:
                    raise NotFoundError(f"unknown item {body['item_id']!r}")
            elif action == "PanelOpen":
                if scene.exhibit(body["exhibit_id"]) is None:
                    raise NotFoundError(f"unknown exhibit {body['exhibit_id']!r}")
        except NotFoundError as exc:
            return 404, {"error": exc.code, "message": str(exc)}
        except GameError as exc:
            return 409, {"error": exc.code, "message": str(exc)}
        except (KeyError, TypeError, ValueError) as exc:
            return 400, {"error": "malformed", "message": str(exc)}

        data = {k: v for k, v in body.items()
                if k in ("point_id", "item_id", "exhibit_id", "rotation", "pose")}
        api.append_event(InteractionEvent(t=t, kind=action, data=data))
        api.state = state
        return 200, _session_body(api)

    @app.post("/api/sessions/{session_id}/actions")
    async def post_action(session_id: str, request: Request) -> Response:
        api = _get(session_id)
        if api is None:
            return _error(404, "not-found", f"unknown session {session_id!r}")
        try:
            body = await request.json()
        except Exception:
            return _error(400, "malformed", "body is not valid JSON")
        if not isinstance(body, dict):
            return _error(400, "malformed", "body must be a JSON object")
        key = request.headers.get("Idempotency-Key") or body.get("idempotency_key")
        with api.lock:
            if key and key in api.idempotency:
                status, cached = api.idempotency[key]
                return JSONResponse(status_code=status, content=cached)
            status, content = _apply_action(api, body)
            if key:
                api.idempotency[key] = (status, content)
            return JSONResponse(status_code=status, content=content)

    @app.post("/api/sessions/{session_id}/submit")
    async def post_submit(session_id: str, request: Request) -> Response:
        api = _get(session_id)
        if api is None:
            return _error(404, "not-found", f"unknown session {session_id!r}")
        try:
            body = await request.json()
        except Exception:
            body = {}
        if not isinstance(body, dict):
            return _error(400, "malformed", "body must be a JSON object")
        key = request.headers.get("Idempotency-Key") or body.get("idempotency_key")
        with api.lock:
            if key and key in api.idempotency:
                status, cached = api.idempotency[key]
                return JSONResponse(status_code=status, content=cached)
            t = _next_t(api, body.get("t"))
            if t is None:
                status, content = 400, {"error": "malformed", "message": "timestamp went backwards"}
            else:
                level = api.state.current_level
                try:
                    state, result = submit_answer(api.state, scene)
                except GameError as exc:
                    status, content = 409, {"error": exc.code, "message": str(exc)}
                else:
                    api.append_event(InteractionEvent(t=t, kind="SubmitClick"))
                    gate = None
                    if result.passed:
                        opened = state.gates_open - api.state.gates_open
                        gate = sorted(opened)[0] if opened else None
                    api.state = state
                    status, content = 200, _session_body(api, {
                        "result": result.to_dict(),
                        "accuracy": result.accuracy,
                        "passed": result.passed,
                        "level": level,
                        "gate_opened": gate,
                    })
            if key:
                api.idempotency[key] = (status, content)
            return JSONResponse(status_code=status, content=content)

    @app.post("/api/analytics/sus")
    async def post_sus(request: Request) -> Response:
        try:
            body = await request.json()
        except Exception:
            return _error(400, "malformed", "body is not valid JSON")
        try:
            rows = body["responses"]
            responses = [
                SusResponse(respondent_id=str(r.get("respondent_id", i)),
                            items=tuple(int(v) for v in r["items"]))
                for i, r in enumerate(rows)
            ]
            summary = sus_summary(responses)
        except (SusError, KeyError, TypeError, ValueError) as exc:
            return _error(400, "malformed", str(exc))
        return JSONResponse(summary.to_dict())

    @app.post("/api/analytics/compare")
    async def post_compare(request: Request) -> Response:
        try:
            body = await request.json()
        except Exception:
            return _error(400, "malformed", "body is not valid JSON")
        try:
            report = mann_whitney_u(
                [float(v) for v in body["group1"]],
                [float(v) for v in body["group2"]],
                exact=body.get("exact", "auto"),
                seed=int(body.get("seed", 42)),
            )
        except (MwuError, KeyError, TypeError, ValueError) as exc:
            return _error(400, "malformed", str(exc))
        return JSONResponse({**report.to_dict(), "rendered": report.rendered()})

    return app
