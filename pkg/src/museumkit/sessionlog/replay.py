"""Deterministic replay of an interaction log through the game rules.

Replay is late-binding: item and teleport ids are resolved against the
scene at replay time, so a log can be checked against a newer scene. An
event that breaks a game rule is reported as a finding and leaves the
session state unchanged, which makes replay total over arbitrary logs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

from ..game.config import LevelConfig, Pose
from ..game.session import (
    GameError,
    GameSession,
    PHASE_FINISHED,
    enter_game,
    grab,
    new_session,
    release,
    return_to_roaming,
    submit_answer,
    teleport,
)
from .events import InteractionEvent
from .log import SessionLog

if TYPE_CHECKING:
    from ..scene.model import MuseumScene


class ReplayError(ValueError):
    """The log cannot be replayed at all (bad header, wrong scene)."""


class IncompleteSessionError(ReplayError):
    """The log never reaches the Finished phase."""


@dataclass(frozen=True)
class ReplayFinding:
    index: int  # position of the offending event in the log
    event: InteractionEvent
    code: str
    message: str


def _apply(session: GameSession, scene: "MuseumScene",
           ev: InteractionEvent) -> tuple[GameSession, Optional[str]]:
    """Returns the next state, or (unchanged, error message)."""
    kind = ev.kind
    if kind == "Teleport":
        return teleport(session, scene, ev.data["point_id"]), None
    if kind == "EnterGame":
        return enter_game(session, scene), None
    if kind == "ReturnToRoaming":
        return return_to_roaming(session, scene), None
    if kind == "Grab":
        return grab(session, scene, ev.data["item_id"]), None
    if kind == "Release":
        pose = Pose.from_dict(ev.data["pose"]) if "pose" in ev.data else Pose((0.0, 0.0, 0.0))
        item = ev.data.get("item_id")
        if item is not None and session.grabbed != item:
            raise GameError(f"release of {item!r} while holding {session.grabbed!r}")
        return release(session, scene, pose), None
    if kind == "Rotate":
        if session.grabbed != ev.data["item_id"]:
            raise GameError(f"rotate of {ev.data['item_id']!r} while holding {session.grabbed!r}")
        return session, None
    if kind == "Touch":
        if scene.exhibit(ev.data["item_id"]) is None:
            raise GameError(f"touch of unknown item {ev.data['item_id']!r}")
        return session, None
    if kind == "PanelOpen":
        if scene.exhibit(ev.data["exhibit_id"]) is None:
            raise GameError(f"panel for unknown exhibit {ev.data['exhibit_id']!r}")
        return session, None
    if kind == "SubmitClick":
        next_session, _result = submit_answer(session, scene)
        return next_session, None
    raise GameError(f"unknown event kind {kind!r}")


def replay(log: SessionLog, scene: "MuseumScene",
           configs: Optional[list[LevelConfig]] = None,
           ) -> tuple[GameSession, list[ReplayFinding]]:
    """Run every event through the rules; collect findings, never raise
    for in-log problems."""
    if log.scene_version != scene.version:
        raise ReplayError(
            f"log was recorded against scene version {log.scene_version!r}, "
            f"scene is {scene.version!r}"
        )
    session = new_session(scene, session_id=log.session_id, configs=configs)
    findings: list[ReplayFinding] = []
    last_t = None
    for i, ev in enumerate(log.events):
        if last_t is not None and ev.t < last_t:
            findings.append(ReplayFinding(i, ev, "ordering", "timestamp regression"))
            continue
        last_t = ev.t
        try:
            session, _ = _apply(session, scene, ev)
        except GameError as exc:
            findings.append(ReplayFinding(i, ev, exc.code, str(exc)))
        except KeyError as exc:
            findings.append(ReplayFinding(i, ev, "malformed-event", f"missing field {exc}"))
    return session, findings


def clearance_time(log: SessionLog, scene: "MuseumScene",
                   configs: Optional[list[LevelConfig]] = None) -> int:
    """Milliseconds from the first event to the submit that finishes the
    museum. Raises IncompleteSessionError when the log never finishes."""
    if not log.events:
        raise IncompleteSessionError("empty log")
    if log.scene_version != scene.version:
        raise ReplayError(
            f"log was recorded against scene version {log.scene_version!r}, "
            f"scene is {scene.version!r}"
        )
    session = new_session(scene, session_id=log.session_id, configs=configs)
    start = log.events[0].t
    last_t = None
    for ev in log.events:
        if last_t is not None and ev.t < last_t:
            continue
        last_t = ev.t
        try:
            session, _ = _apply(session, scene, ev)
        except (GameError, KeyError):
            continue
        if ev.kind == "SubmitClick" and session.phase == PHASE_FINISHED:
            return ev.t - start
    raise IncompleteSessionError("session never reached the Finished phase")
