"""Declarative museum scene model and its JSON document form.

A scene document is plain JSON with a ``version`` field (see
``docs/scene-schema.md``). Scenes are immutable after load in practice:
nothing in the toolkit mutates a loaded scene.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from ..game.config import LevelConfig

SCHEMA_VERSION = "1"

EXHIBIT_CATEGORIES = ("Bottle", "Tripod", "Ge", "Gui", "Other")
TELEPORT_KINDS = ("Plain", "NextLevel", "ReturnToRoaming")
ROOM_KINDS = ("roaming", "game")


class SceneError(ValueError):
    """Base class for scene document problems."""


class SchemaError(SceneError):
    """Document shape violation; carries the offending path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class LinkError(SceneError):
    """Dangling reference; carries the missing id."""

    def __init__(self, missing_id: str, context: str):
        super().__init__(f"dangling reference {missing_id!r} in {context}")
        self.missing_id = missing_id


class InvariantError(SceneError):
    """Structural invariant violated (room counts, exhibit counts)."""


@dataclass
class Exhibit:
    id: str
    mesh_asset: str
    display_name: str
    knowledge_text: str  # age / decoration / casting technology / historical value
    category: str
    purpose: str
    dynasty: str
    level: int

    def to_dict(self) -> dict:
        return {
            "id": self.id, "mesh_asset": self.mesh_asset, "display_name": self.display_name,
            "knowledge_text": self.knowledge_text, "category": self.category,
            "purpose": self.purpose, "dynasty": self.dynasty, "level": self.level,
        }


@dataclass
class Panel:
    button_position: tuple[float, float, float]
    text_height: float

    def to_dict(self) -> dict:
        return {"button_position": [float(v) for v in self.button_position], "text_height": float(self.text_height)}


@dataclass
class Stand:
    id: str
    room_id: str
    position: tuple[float, float, float]
    height: float
    exhibit_id: str
    panel: Panel

    def to_dict(self) -> dict:
        return {
            "id": self.id, "room_id": self.room_id, "position": [float(v) for v in self.position],
            "height": float(self.height), "exhibit_id": self.exhibit_id, "panel": self.panel.to_dict(),
        }


@dataclass
class TeleportArea:
    id: str
    polygon: list[tuple[float, float]]  # convex, on the floor (x, z)

    def to_dict(self) -> dict:
        return {"id": self.id, "polygon": [[float(x), float(z)] for x, z in self.polygon]}


@dataclass
class TeleportPoint:
    id: str
    position: tuple[float, float, float]
    kind: str
    initially_open: bool = True
    level: int = 1  # which level's room the point belongs to

    def to_dict(self) -> dict:
        return {
            "id": self.id, "position": [float(v) for v in self.position], "kind": self.kind,
            "initially_open": self.initially_open, "level": self.level,
        }


@dataclass
class TeleportGraph:
    areas: list[TeleportArea] = field(default_factory=list)
    points: list[TeleportPoint] = field(default_factory=list)

    def point(self, point_id: str) -> Optional[TeleportPoint]:
        return next((p for p in self.points if p.id == point_id), None)

    def to_dict(self) -> dict:
        return {"areas": [a.to_dict() for a in self.areas], "points": [p.to_dict() for p in self.points]}


@dataclass
class Spotlight:
    target_exhibit_id: str
    position: tuple[float, float, float]
    cone_angle_deg: float

    def to_dict(self) -> dict:
        return {
            "target_exhibit_id": self.target_exhibit_id,
            "position": [float(v) for v in self.position],
            "cone_angle_deg": float(self.cone_angle_deg),
        }


@dataclass
class LightingMeta:
    ambient_intensity: float
    directional_direction: tuple[float, float, float]
    directional_intensity: float
    spotlights: list[Spotlight]
    reflection_probe_position: tuple[float, float, float]
    light_probes: dict[str, list[tuple[float, float, float]]]  # exhibit id -> probe positions
    static_ids: set[str]

    def to_dict(self) -> dict:
        return {
            "ambient_intensity": float(self.ambient_intensity),
            "directional": {"direction": [float(v) for v in self.directional_direction], "intensity": float(self.directional_intensity)},
            "spotlights": [s.to_dict() for s in self.spotlights],
            "reflection_probe_position": list(self.reflection_probe_position),
            "light_probes": {k: [[float(c) for c in p] for p in v] for k, v in sorted(self.light_probes.items())},
            "static_ids": sorted(self.static_ids),
        }


@dataclass
class Room:
    id: str
    kind: str  # roaming | game
    level: int
    floor_min: tuple[float, float]  # (x, z)
    floor_max: tuple[float, float]

    def to_dict(self) -> dict:
        return {
            "id": self.id, "kind": self.kind, "level": self.level,
            "floor_min": [float(v) for v in self.floor_min], "floor_max": [float(v) for v in self.floor_max],
        }


@dataclass
class MuseumScene:
    version: str
    name: str
    rooms: list[Room]
    exhibits: list[Exhibit]
    stands: list[Stand]
    teleport: TeleportGraph
    lighting: LightingMeta
    level_configs: list[LevelConfig]

    def exhibit(self, exhibit_id: str) -> Optional[Exhibit]:
        return next((e for e in self.exhibits if e.id == exhibit_id), None)

    def room(self, kind: str, level: int) -> Optional[Room]:
        return next((r for r in self.rooms if r.kind == kind and r.level == level), None)

    def config(self, level: int) -> LevelConfig:
        cfg = next((c for c in self.level_configs if c.level == level), None)
        if cfg is None:
            raise KeyError(f"no config for level {level}")
        return cfg

    def roaming_exhibits(self, level: int) -> list[Exhibit]:
        room = self.room("roaming", level)
        if room is None:
            return []
        ids = [s.exhibit_id for s in self.stands if s.room_id == room.id]
        return [e for e in self.exhibits if e.id in ids]

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "name": self.name,
            "rooms": [r.to_dict() for r in self.rooms],
            "exhibits": [e.to_dict() for e in self.exhibits],
            "stands": [s.to_dict() for s in self.stands],
            "teleport": self.teleport.to_dict(),
            "lighting": self.lighting.to_dict(),
            "level_configs": [c.to_dict() for c in self.level_configs],
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)


# ---------------------------------------------------------------------------
# Loading

def _req(d: dict, key: str, path: str):
    if not isinstance(d, dict) or key not in d:
        raise SchemaError(f"{path}.{key}", "missing required field")
    return d[key]


def _vec(v, path: str, n: int = 3) -> tuple:
    if not isinstance(v, (list, tuple)) or len(v) != n:
        raise SchemaError(path, f"expected a {n}-vector")
    try:
        return tuple(float(x) for x in v)
    except (TypeError, ValueError):
        raise SchemaError(path, "expected numeric components") from None


def load_scene(document: str | dict) -> MuseumScene:
    """Parse and link a scene document; raises on schema violations,
    dangling references, and structural invariant violations."""
    if isinstance(document, str):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError("$", f"not valid JSON: {exc}") from None
    else:
        doc = document
    if not isinstance(doc, dict):
        raise SchemaError("$", "document must be a JSON object")
    version = str(_req(doc, "version", "$"))
    if version != SCHEMA_VERSION:
        raise SchemaError("$.version", f"unsupported scene schema version {version!r}")

    rooms = []
    for i, r in enumerate(doc.get("rooms", [])):
        path = f"$.rooms[{i}]"
        kind = _req(r, "kind", path)
        if kind not in ROOM_KINDS:
            raise SchemaError(f"{path}.kind", f"unknown room kind {kind!r}")
        rooms.append(Room(
            id=str(_req(r, "id", path)), kind=kind, level=int(_req(r, "level", path)),
            floor_min=_vec(_req(r, "floor_min", path), f"{path}.floor_min", 2),
            floor_max=_vec(_req(r, "floor_max", path), f"{path}.floor_max", 2),
        ))

    exhibits = []
    for i, e in enumerate(doc.get("exhibits", [])):
        path = f"$.exhibits[{i}]"
        exhibits.append(Exhibit(
            id=str(_req(e, "id", path)),
            mesh_asset=str(_req(e, "mesh_asset", path)),
            display_name=str(_req(e, "display_name", path)),
            knowledge_text=str(_req(e, "knowledge_text", path)),
            category=str(_req(e, "category", path)),
            purpose=str(_req(e, "purpose", path)),
            dynasty=str(_req(e, "dynasty", path)),
            level=int(_req(e, "level", path)),
        ))

    stands = []
    for i, s in enumerate(doc.get("stands", [])):
        path = f"$.stands[{i}]"
        panel = _req(s, "panel", path)
        stands.append(Stand(
            id=str(_req(s, "id", path)),
            room_id=str(_req(s, "room_id", path)),
            position=_vec(_req(s, "position", path), f"{path}.position"),
            height=float(_req(s, "height", path)),
            exhibit_id=str(_req(s, "exhibit_id", path)),
            panel=Panel(
                button_position=_vec(_req(panel, "button_position", f"{path}.panel"), f"{path}.panel.button_position"),
                text_height=float(_req(panel, "text_height", f"{path}.panel")),
            ),
        ))

    tp = doc.get("teleport", {})
    areas = []
    for i, a in enumerate(tp.get("areas", [])):
        path = f"$.teleport.areas[{i}]"
        poly = _req(a, "polygon", path)
        if not isinstance(poly, list) or len(poly) < 3:
            raise SchemaError(f"{path}.polygon", "expected >= 3 corners")
        areas.append(TeleportArea(id=str(_req(a, "id", path)), polygon=[_vec(p, f"{path}.polygon[{j}]", 2) for j, p in enumerate(poly)]))
    points = []
    for i, p in enumerate(tp.get("points", [])):
        path = f"$.teleport.points[{i}]"
        kind = _req(p, "kind", path)
        if kind not in TELEPORT_KINDS:
            raise SchemaError(f"{path}.kind", f"unknown teleport kind {kind!r}")
        points.append(TeleportPoint(
            id=str(_req(p, "id", path)), position=_vec(_req(p, "position", path), f"{path}.position"),
            kind=kind, initially_open=bool(p.get("initially_open", True)), level=int(p.get("level", 1)),
        ))

    li = doc.get("lighting", {})
    directional = li.get("directional", {})
    lighting = LightingMeta(
        ambient_intensity=float(li.get("ambient_intensity", 1.0)),
        directional_direction=_vec(directional.get("direction", [0, -1, 0]), "$.lighting.directional.direction"),
        directional_intensity=float(directional.get("intensity", 1.0)),
        spotlights=[
            Spotlight(
                target_exhibit_id=str(_req(s, "target_exhibit_id", f"$.lighting.spotlights[{i}]")),
                position=_vec(_req(s, "position", f"$.lighting.spotlights[{i}]"), f"$.lighting.spotlights[{i}].position"),
                cone_angle_deg=float(s.get("cone_angle_deg", 30.0)),
            )
            for i, s in enumerate(li.get("spotlights", []))
        ],
        reflection_probe_position=_vec(li.get("reflection_probe_position", [0, 0, 0]), "$.lighting.reflection_probe_position"),
        light_probes={str(k): [_vec(p, f"$.lighting.light_probes[{k}]") for p in v] for k, v in li.get("light_probes", {}).items()},
        static_ids=set(li.get("static_ids", [])),
    )

    try:
        configs = [LevelConfig.from_dict(c) for c in doc.get("level_configs", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError("$.level_configs", str(exc)) from None

    scene = MuseumScene(
        version=version, name=str(doc.get("name", "")), rooms=rooms, exhibits=exhibits,
        stands=stands, teleport=TeleportGraph(areas, points), lighting=lighting,
        level_configs=configs,
    )
    _link_check(scene)
    _structural_check(scene)
    return scene


def _link_check(scene: MuseumScene):
    exhibit_ids = {e.id for e in scene.exhibits}
    room_ids = {r.id for r in scene.rooms}
    for s in scene.stands:
        if s.exhibit_id not in exhibit_ids:
            raise LinkError(s.exhibit_id, f"stand {s.id}")
        if s.room_id not in room_ids:
            raise LinkError(s.room_id, f"stand {s.id}")
    for sp in scene.lighting.spotlights:
        if sp.target_exhibit_id not in exhibit_ids:
            raise LinkError(sp.target_exhibit_id, "spotlight")
    for k in scene.lighting.light_probes:
        if k not in exhibit_ids:
            raise LinkError(k, "light probe")
    for cfg in scene.level_configs:
        for item in cfg.game_item_ids:
            if item not in exhibit_ids:
                raise LinkError(item, f"level {cfg.level} game items")
        if cfg.display_item_id and cfg.display_item_id not in exhibit_ids:
            raise LinkError(cfg.display_item_id, f"level {cfg.level} display item")


def _structural_check(scene: MuseumScene):
    for id_list, what in (
        ([e.id for e in scene.exhibits], "exhibit"),
        ([s.id for s in scene.stands], "stand"),
        ([r.id for r in scene.rooms], "room"),
        ([p.id for p in scene.teleport.points], "teleport point"),
    ):
        if len(id_list) != len(set(id_list)):
            raise InvariantError(f"duplicate {what} id")
    for kind in ROOM_KINDS:
        levels = sorted(r.level for r in scene.rooms if r.kind == kind)
        if levels != [1, 2, 3]:
            raise InvariantError(f"expected exactly 3 {kind} rooms (levels 1..3), got levels {levels}")
    for e in scene.exhibits:
        if e.level not in (1, 2, 3):
            raise InvariantError(f"exhibit {e.id}: level must be 1..3")
    for level in (1, 2, 3):
        room = scene.room("roaming", level)
        count = len([s for s in scene.stands if s.room_id == room.id])
        if count != 22:
            raise InvariantError(f"roaming room level {level} must display exactly 22 exhibits, found {count}")
