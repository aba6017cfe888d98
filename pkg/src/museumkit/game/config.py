"""Per-level game rules: containers, thresholds, placement radii.

The three levels are fixed by design:

- level 1 (category): 12 items, 4 shelves x capacity 3, pass above 80%
- level 2 (purpose): 12 placeable items plus one display-only, 5 round
  tables x capacity 2, 10 required placements, pass above 90%
- level 3 (dynasty): 9 items, 3 boxes, pass at 100% (non-strict)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

CATEGORIES = ("Bottle", "Tripod", "Ge", "Gui", "Other")
PURPOSES = ("Eating", "War", "WineVessel", "MusicalInstrument", "Sacrifice", "Other")
DYNASTIES = ("ShangZhou", "Han", "WeiJin", "Other")
THEMES = ("Category", "Purpose", "Dynasty")
CONTAINER_KINDS = ("Shelf", "RoundTable", "Box", "Booth")

DEFAULT_RADIUS_A = 0.5  # meters; placement counts when within this distance


class ConfigError(ValueError):
    """Level configuration violates the fixed level rules."""


@dataclass(frozen=True)
class Pose:
    position: tuple[float, float, float]
    rotation: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 1.0)

    def to_dict(self) -> dict:
        return {"position": [float(v) for v in self.position], "rotation": [float(v) for v in self.rotation]}

    @classmethod
    def from_dict(cls, d: dict) -> "Pose":
        return cls(tuple(d["position"]), tuple(d.get("rotation", (0.0, 0.0, 0.0, 1.0))))


@dataclass
class Container:
    id: str
    label: str
    kind: str
    position: tuple[float, float, float]
    capacity: int
    accepts: str  # attribute value the container's theme must match
    interaction_radius_a: float = DEFAULT_RADIUS_A

    def validate(self):
        if self.kind not in CONTAINER_KINDS:
            raise ConfigError(f"container {self.id}: unknown kind {self.kind!r}")
        if self.capacity < 1:
            raise ConfigError(f"container {self.id}: capacity must be >= 1")
        if self.interaction_radius_a <= 0:
            raise ConfigError(f"container {self.id}: interaction radius A must be > 0")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "label": self.label,
            "kind": self.kind,
            "position": [float(v) for v in self.position],
            "capacity": self.capacity,
            "accepts": self.accepts,
            "interaction_radius_a": float(self.interaction_radius_a),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Container":
        return cls(
            id=d["id"], label=d["label"], kind=d["kind"], position=tuple(d["position"]),
            capacity=int(d["capacity"]), accepts=d["accepts"],
            interaction_radius_a=float(d.get("interaction_radius_a", DEFAULT_RADIUS_A)),
        )


@dataclass
class LevelConfig:
    level: int
    theme: str
    game_item_ids: list[str]  # placeable items
    required_placements: int
    containers: list[Container]
    pass_threshold: float
    threshold_strict: bool
    initial_poses: dict[str, Pose] = field(default_factory=dict)
    display_item_id: Optional[str] = None  # level 2's look-only piece

    _RULES = {
        # level: (theme, items, containers, capacity, required, threshold, strict)
        1: ("Category", 12, 4, 3, 12, 0.8, True),
        2: ("Purpose", 12, 5, 2, 10, 0.9, True),
        3: ("Dynasty", 9, 3, None, 9, 1.0, False),
    }

    def validate(self):
        if self.level not in self._RULES:
            raise ConfigError(f"level must be 1..3, got {self.level}")
        theme, items, ncont, cap, req, thr, strict = self._RULES[self.level]
        if self.theme != theme:
            raise ConfigError(f"level {self.level}: theme must be {theme}, got {self.theme}")
        if len(self.game_item_ids) != items:
            raise ConfigError(f"level {self.level}: expected {items} placeable items, got {len(self.game_item_ids)}")
        if len(set(self.game_item_ids)) != len(self.game_item_ids):
            raise ConfigError(f"level {self.level}: duplicate item ids")
        if len(self.containers) != ncont:
            raise ConfigError(f"level {self.level}: expected {ncont} containers, got {len(self.containers)}")
        for c in self.containers:
            c.validate()
            if cap is not None and c.capacity != cap:
                raise ConfigError(f"level {self.level}: container {c.id} capacity must be {cap}")
        if self.required_placements != req:
            raise ConfigError(f"level {self.level}: required_placements must be {req}")
        if abs(self.pass_threshold - thr) > 1e-12:
            raise ConfigError(f"level {self.level}: pass threshold must be {thr}")
        if self.threshold_strict != strict:
            raise ConfigError(f"level {self.level}: threshold_strict must be {strict}")
        if self.level == 2 and not self.display_item_id:
            raise ConfigError("level 2: display_item_id is required")
        if self.display_item_id in self.game_item_ids:
            raise ConfigError("display item must not be placeable")
        missing = [i for i in self.game_item_ids if i not in self.initial_poses]
        if missing:
            raise ConfigError(f"level {self.level}: missing initial poses for {missing}")

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "theme": self.theme,
            "game_item_ids": list(self.game_item_ids),
            "required_placements": self.required_placements,
            "containers": [c.to_dict() for c in self.containers],
            "pass_threshold": self.pass_threshold,
            "threshold_strict": self.threshold_strict,
            "initial_poses": {k: p.to_dict() for k, p in sorted(self.initial_poses.items())},
            "display_item_id": self.display_item_id,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LevelConfig":
        return cls(
            level=int(d["level"]),
            theme=d["theme"],
            game_item_ids=list(d["game_item_ids"]),
            required_placements=int(d["required_placements"]),
            containers=[Container.from_dict(c) for c in d["containers"]],
            pass_threshold=float(d["pass_threshold"]),
            threshold_strict=bool(d["threshold_strict"]),
            initial_poses={k: Pose.from_dict(p) for k, p in d.get("initial_poses", {}).items()},
            display_item_id=d.get("display_item_id"),
        )


def validate_level_configs(configs: list[LevelConfig]):
    if len(configs) != 3 or sorted(c.level for c in configs) != [1, 2, 3]:
        raise ConfigError("expected exactly one config per level 1..3")
    for c in configs:
        c.validate()
