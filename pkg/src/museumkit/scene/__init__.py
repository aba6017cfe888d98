from .model import (
    Exhibit,
    Panel,
    Stand,
    TeleportArea,
    TeleportPoint,
    TeleportGraph,
    Spotlight,
    LightingMeta,
    Room,
    MuseumScene,
    SceneError,
    SchemaError,
    LinkError,
    InvariantError,
    load_scene,
)
from .validate import Finding, validate_scene
from .layout import LayoutError, layout_circle
from .demo import build_demo_scene, answer_placements

__all__ = [
    "Exhibit", "Panel", "Stand", "TeleportArea", "TeleportPoint", "TeleportGraph",
    "Spotlight", "LightingMeta", "Room", "MuseumScene",
    "SceneError", "SchemaError", "LinkError", "InvariantError",
    "load_scene", "Finding", "validate_scene", "LayoutError", "layout_circle",
    "build_demo_scene", "answer_placements",
]
