"""The three-level "learn first, play later" session state machine.

All operations are pure: they return a new ``GameSession`` and never mutate
their input. Scoring is a pure function of (placements, config).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Optional

from .config import Container, LevelConfig, Pose, validate_level_configs

if TYPE_CHECKING:  # avoids a scene <-> game import cycle at runtime
    from ..scene.model import MuseumScene

PHASE_ROAMING = "Roaming"
PHASE_GAME = "Game"
PHASE_FINISHED = "Finished"

THEME_ATTR = {"Category": "category", "Purpose": "purpose", "Dynasty": "dynasty"}


class GameError(ValueError):
    """Game-rule violation."""

    code = "game-error"


class IllegalTransition(GameError):
    code = "illegal-transition"


class GateClosedError(GameError):
    code = "gate-closed"


class NotFoundError(GameError):
    code = "not-found"


@dataclass(frozen=True)
class GameSession:
    session_id: str
    current_level: int = 1
    phase: str = PHASE_ROAMING
    placements: dict[str, Pose] = field(default_factory=dict)
    grabbed: Optional[str] = None
    attempts: dict[int, int] = field(default_factory=lambda: {1: 0, 2: 0, 3: 0})
    gates_open: frozenset[str] = frozenset()
    passed_levels: frozenset[int] = frozenset()
    player_position: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "current_level": self.current_level,
            "phase": self.phase,
            "placements": {k: self.placements[k].to_dict() for k in sorted(self.placements)},
            "grabbed": self.grabbed,
            "attempts": {str(k): self.attempts[k] for k in sorted(self.attempts)},
            "gates_open": sorted(self.gates_open),
            "passed_levels": sorted(self.passed_levels),
            "player_position": list(self.player_position),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "GameSession":
        return cls(
            session_id=d["session_id"],
            current_level=int(d["current_level"]),
            phase=d["phase"],
            placements={k: Pose.from_dict(v) for k, v in d.get("placements", {}).items()},
            grabbed=d.get("grabbed"),
            attempts={int(k): int(v) for k, v in d.get("attempts", {}).items()},
            gates_open=frozenset(d.get("gates_open", [])),
            passed_levels=frozenset(d.get("passed_levels", [])),
            player_position=tuple(d.get("player_position", (0.0, 0.0, 0.0))),
        )


@dataclass(frozen=True)
class ItemScore:
    assigned_container: Optional[str]
    correct: bool


@dataclass(frozen=True)
class AccuracyResult:
    per_item: dict[str, ItemScore]
    correct_count: int
    accuracy: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "per_item": {
                k: {"assigned_container": v.assigned_container, "correct": v.correct}
                for k, v in sorted(self.per_item.items())
            },
            "correct_count": self.correct_count,
            "accuracy": self.accuracy,
            "passed": self.passed,
        }


def _initial_gates(scene: MuseumScene) -> frozenset[str]:
    # NextLevel gates start closed no matter what the document says.
    return frozenset(p.id for p in scene.teleport.points if p.initially_open and p.kind != "NextLevel")


def new_session(scene: MuseumScene, session_id: str = "session",
                configs: Optional[list[LevelConfig]] = None) -> GameSession:
    configs = configs if configs is not None else scene.level_configs
    validate_level_configs(configs)
    start = next((p for p in scene.teleport.points if p.kind == "Plain" and p.level == 1), None)
    return GameSession(
        session_id=session_id,
        gates_open=_initial_gates(scene),
        player_position=start.position if start else (0.0, 0.0, 0.0),
    )


def enter_game(session: GameSession, scene: MuseumScene) -> GameSession:
    if session.phase != PHASE_ROAMING:
        raise IllegalTransition(f"enter_game requires Roaming phase, session is {session.phase}")
    cfg = scene.config(session.current_level)
    return replace(session, phase=PHASE_GAME, placements=dict(cfg.initial_poses), grabbed=None)


def return_to_roaming(session: GameSession, scene: MuseumScene) -> GameSession:
    """Placements are NOT saved: the next enter_game starts all over again."""
    if session.phase != PHASE_GAME:
        raise IllegalTransition(f"return_to_roaming requires Game phase, session is {session.phase}")
    return replace(session, phase=PHASE_ROAMING, placements={}, grabbed=None)


def _placeable_items(session: GameSession, scene: MuseumScene) -> set[str]:
    if session.phase == PHASE_GAME:
        return set(scene.config(session.current_level).game_item_ids)
    return {e.id for e in scene.roaming_exhibits(session.current_level)}


def grab(session: GameSession, scene: MuseumScene, item_id: str) -> GameSession:
    if session.phase not in (PHASE_ROAMING, PHASE_GAME):
        raise IllegalTransition("cannot grab after finishing")
    if session.grabbed is not None:
        raise GameError(f"already holding {session.grabbed!r}")
    cfg = scene.config(session.current_level)
    if session.phase == PHASE_GAME and item_id == cfg.display_item_id:
        raise GameError(f"{item_id!r} is display-only and cannot be grabbed")
    if item_id not in _placeable_items(session, scene):
        raise NotFoundError(f"no grabbable item {item_id!r} in level {session.current_level} {session.phase}")
    return replace(session, grabbed=item_id)


def release(session: GameSession, scene: MuseumScene, pose: Pose) -> GameSession:
    if session.grabbed is None:
        raise GameError("release without a grabbed item")
    if session.phase == PHASE_GAME:
        placements = dict(session.placements)
        placements[session.grabbed] = pose
        return replace(session, placements=placements, grabbed=None)
    # Roaming grabs are inspection-only: the bronze snaps back to its stand.
    return replace(session, grabbed=None)


def assign_container(position: tuple[float, float, float], containers: list[Container],
                     override_radius: Optional[float] = None) -> Optional[str]:
    """The nearest container closer than its radius A (ties by id order)."""
    if not containers:
        raise GameError("no containers to assign to")
    best = None
    for c in sorted(containers, key=lambda c: c.id):
        radius = override_radius if override_radius is not None else c.interaction_radius_a
        dist = math.dist(position, c.position)
        if dist < radius and (best is None or dist < best[0]):
            best = (dist, c.id)
    return best[1] if best else None


def score_placements(placements: dict[str, Pose], cfg: LevelConfig, scene: MuseumScene) -> AccuracyResult:
    """Pure scoring: detect each placed bronze against container radius A,
    honor capacities (nearest-first), divide by required placements."""
    attr = THEME_ATTR[cfg.theme]
    by_container: dict[str, list[tuple[float, str]]] = {}
    assigned: dict[str, Optional[str]] = {}
    for item in cfg.game_item_ids:
        pose = placements.get(item)
        cid = assign_container(pose.position, cfg.containers) if pose else None
        assigned[item] = cid
        if cid is not None:
            dist = math.dist(pose.position, next(c for c in cfg.containers if c.id == cid).position)
            by_container.setdefault(cid, []).append((dist, item))

    within_capacity: set[str] = set()
    for c in cfg.containers:
        entries = sorted(by_container.get(c.id, []))
        within_capacity.update(item for _, item in entries[: c.capacity])

    per_item: dict[str, ItemScore] = {}
    correct_count = 0
    for item in cfg.game_item_ids:
        cid = assigned[item]
        ok = False
        if cid is not None and item in within_capacity:
            container = next(c for c in cfg.containers if c.id == cid)
            ok = getattr(scene.exhibit(item), attr) == container.accepts
        per_item[item] = ItemScore(assigned_container=cid, correct=ok)
        correct_count += int(ok)

    accuracy = correct_count / cfg.required_placements
    passed = accuracy > cfg.pass_threshold if cfg.threshold_strict else accuracy >= cfg.pass_threshold
    return AccuracyResult(per_item=per_item, correct_count=correct_count, accuracy=accuracy, passed=passed)


def _next_level_gates(scene: MuseumScene, level: int) -> frozenset[str]:
    return frozenset(p.id for p in scene.teleport.points if p.kind == "NextLevel" and p.level == level)


def submit_answer(session: GameSession, scene: MuseumScene) -> tuple[GameSession, AccuracyResult]:
    if session.phase != PHASE_GAME:
        raise IllegalTransition(f"submit requires Game phase, session is {session.phase}")
    level = session.current_level
    cfg = scene.config(level)
    result = score_placements(session.placements, cfg, scene)
    attempts = dict(session.attempts)
    attempts[level] = attempts.get(level, 0) + 1
    if not result.passed:
        return replace(session, attempts=attempts), result
    session = replace(
        session,
        attempts=attempts,
        passed_levels=session.passed_levels | {level},
        gates_open=session.gates_open | _next_level_gates(scene, level),
    )
    if level == 3:
        session = replace(session, phase=PHASE_FINISHED, grabbed=None)
    return session, result


def teleport(session: GameSession, scene: MuseumScene, point_id: str) -> GameSession:
    point = scene.teleport.point(point_id)
    if point is None:
        raise NotFoundError(f"unknown teleport point {point_id!r}")
    if point.id not in session.gates_open:
        raise GateClosedError(f"teleport point {point_id!r} is not opened")
    session = replace(session, player_position=point.position)
    if point.kind == "NextLevel":
        if session.current_level != point.level or session.phase == PHASE_FINISHED:
            raise IllegalTransition(f"gate {point_id!r} does not lead out of level {session.current_level}")
        return replace(session, current_level=point.level + 1, phase=PHASE_ROAMING,
                       placements={}, grabbed=None)
    if point.kind == "ReturnToRoaming" and session.phase == PHASE_GAME:
        return replace(session, phase=PHASE_ROAMING, placements={}, grabbed=None)
    return session
