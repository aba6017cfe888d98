"""Bundled demo scene: three roaming rooms, three game rooms, 66 exhibits.

Which 22 bronzes appear per level is an arbitrary choice; the bundled set
covers every category/purpose/dynasty the games need.
"""

from __future__ import annotations

from ..game.config import Container, LevelConfig, Pose
from .layout import layout_circle
from .model import (
    Exhibit,
    LightingMeta,
    MuseumScene,
    Panel,
    Room,
    Spotlight,
    Stand,
    TeleportArea,
    TeleportGraph,
    TeleportPoint,
    SCHEMA_VERSION,
)

_KNOWLEDGE = (
    "{name}: cast in the {dynasty} period. Decorated with taotie bands; "
    "made by piece-mold casting; of high historical value as a {purpose} vessel."
)


def _exhibit(eid: str, level: int, category: str, purpose: str, dynasty: str) -> Exhibit:
    name = eid.replace("_", " ").title()
    return Exhibit(
        id=eid,
        mesh_asset=f"assets/{eid}.glb",
        display_name=name,
        knowledge_text=_KNOWLEDGE.format(name=name, dynasty=dynasty, purpose=purpose.lower()),
        category=category,
        purpose=purpose,
        dynasty=dynasty,
        level=level,
    )


def _level_exhibits() -> list[Exhibit]:
    out: list[Exhibit] = []
    purposes = ["Eating", "War", "WineVessel", "MusicalInstrument", "Sacrifice"]
    dynasties = ["ShangZhou", "Han", "WeiJin"]

    # Level 1: 12 category game pieces + 10 more on display.
    for cat in ("Bottle", "Tripod", "Ge", "Gui"):
        for k in range(1, 4):
            out.append(_exhibit(f"l1_{cat.lower()}_{k}", 1, cat,
                                purposes[(k - 1) % 5], dynasties[(k - 1) % 3]))
    for k in range(1, 11):
        out.append(_exhibit(f"l1_other_{k}", 1, "Other", purposes[k % 5], dynasties[k % 3]))

    # Level 2: 10 purpose pieces + 2 extra placeable + 1 display-only + 9 more.
    for p in purposes:
        for k in range(1, 3):
            out.append(_exhibit(f"l2_{p.lower()}_{k}", 2, "Other", p, dynasties[k % 3]))
    out.append(_exhibit("l2_extra_1", 2, "Other", "Other", "Han"))
    out.append(_exhibit("l2_extra_2", 2, "Other", "Other", "WeiJin"))
    out.append(_exhibit("l2_display", 2, "Other", "Other", "ShangZhou"))
    for k in range(1, 10):
        out.append(_exhibit(f"l2_other_{k}", 2, "Other", purposes[k % 5], dynasties[k % 3]))

    # Level 3: 9 dynasty pieces + 13 more.
    for d in dynasties:
        for k in range(1, 4):
            out.append(_exhibit(f"l3_{d.lower()}_{k}", 3, "Other", purposes[k % 5], d))
    for k in range(1, 14):
        out.append(_exhibit(f"l3_other_{k}", 3, "Other", purposes[k % 5], "Other"))
    return out


def _grid_poses(ids: list[str], center: tuple[float, float], spacing: float = 0.8, y: float = 0.9) -> dict[str, Pose]:
    poses = {}
    cols = 4
    for i, item in enumerate(ids):
        r, c = divmod(i, cols)
        poses[item] = Pose((center[0] + (c - (cols - 1) / 2) * spacing, y, center[1] + r * spacing))
    return poses


def build_demo_scene() -> MuseumScene:
    rooms = []
    for level in (1, 2, 3):
        x0 = (level - 1) * 50
        rooms.append(Room(f"roaming_{level}", "roaming", level, (x0, 0.0), (x0 + 20, 20.0)))
        rooms.append(Room(f"game_{level}", "game", level, (x0 + 25, 0.0), (x0 + 45, 20.0)))

    exhibits = _level_exhibits()
    stands, spotlights, probes = [], [], {}
    for level in (1, 2, 3):
        room = rooms[(level - 1) * 2]
        level_exhibits = [e for e in exhibits if e.level == level]
        for pos, ex in zip(layout_circle(22, room, 1.0), level_exhibits):
            stands.append(Stand(
                id=f"stand_{ex.id}", room_id=room.id, position=pos, height=1.0,
                exhibit_id=ex.id,
                panel=Panel(button_position=(pos[0], 1.1, pos[2] + 0.4), text_height=1.0),
            ))
            spotlights.append(Spotlight(ex.id, (pos[0], 3.5, pos[2]), 30.0))
            probes[ex.id] = [(pos[0], 2.0, pos[2])]

    areas = [TeleportArea(r.id, [
        (r.floor_min[0], r.floor_min[1]), (r.floor_max[0], r.floor_min[1]),
        (r.floor_max[0], r.floor_max[1]), (r.floor_min[0], r.floor_max[1]),
    ]) for r in rooms]
    # Corridors stitch the rooms into one connected walkable graph.
    for i in range(len(rooms) - 1):
        x0 = rooms[i].floor_max[0] - 1.0
        x1 = rooms[i + 1].floor_min[0] + 1.0
        areas.append(TeleportArea(f"corridor_{i + 1}", [(x0, 8.0), (x1, 8.0), (x1, 12.0), (x0, 12.0)]))

    points = []
    for level in (1, 2, 3):
        x0 = (level - 1) * 50
        points.append(TeleportPoint(f"roam_{level}_center", (x0 + 10, 0.0, 10.0), "Plain", True, level))
        points.append(TeleportPoint(f"roam_{level}_door", (x0 + 19, 0.0, 10.0), "Plain", True, level))
        points.append(TeleportPoint(f"game_{level}_center", (x0 + 35, 0.0, 10.0), "Plain", True, level))
        points.append(TeleportPoint(f"game_{level}_return", (x0 + 26, 0.0, 10.0), "ReturnToRoaming", True, level))
        if level < 3:
            points.append(TeleportPoint(f"next_level_{level}", (x0 + 44, 0.0, 10.0), "NextLevel", False, level))

    lighting = LightingMeta(
        ambient_intensity=0.8,
        directional_direction=(0.2, -1.0, 0.1),
        directional_intensity=1.2,
        spotlights=spotlights,
        reflection_probe_position=(72.5, 2.0, 10.0),
        light_probes=probes,
        static_ids={r.id for r in rooms} | {s.id for s in stands},
    )

    l1_items = [f"l1_{c}_{k}" for c in ("bottle", "tripod", "ge", "gui") for k in (1, 2, 3)]
    level1 = LevelConfig(
        level=1, theme="Category", game_item_ids=l1_items, required_placements=12,
        containers=[
            Container(f"shelf_{c.lower()}", f"{c} shelf", "Shelf", (30.0 + 10.0 * (i % 2), 1.0, 4.0 + 12.0 * (i // 2)), 3, c)
            for i, c in enumerate(("Bottle", "Tripod", "Ge", "Gui"))
        ],
        pass_threshold=0.8, threshold_strict=True,
        initial_poses=_grid_poses(l1_items, (35.0, 9.0)),
    )

    l2_items = [f"l2_{p}_{k}" for p in ("eating", "war", "winevessel", "musicalinstrument", "sacrifice") for k in (1, 2)]
    l2_items += ["l2_extra_1", "l2_extra_2"]
    level2 = LevelConfig(
        level=2, theme="Purpose", game_item_ids=l2_items, required_placements=10,
        containers=[
            Container(f"table_{p.lower()}", f"{p} table", "RoundTable", (79.0, 0.8, 3.0 + 3.5 * i), 2, p)
            for i, p in enumerate(("Eating", "War", "WineVessel", "MusicalInstrument", "Sacrifice"))
        ],
        pass_threshold=0.9, threshold_strict=True,
        initial_poses=_grid_poses(l2_items, (91.0, 9.0)),
        display_item_id="l2_display",
    )

    l3_items = [f"l3_{d}_{k}" for d in ("shangzhou", "han", "weijin") for k in (1, 2, 3)]
    level3 = LevelConfig(
        level=3, theme="Dynasty", game_item_ids=l3_items, required_placements=9,
        containers=[
            Container(f"box_{d.lower()}", f"{d} box", "Box", (129.0 + 6.0 * i, 0.4, 4.0), 3, d)
            for i, d in enumerate(("ShangZhou", "Han", "WeiJin"))
        ],
        pass_threshold=1.0, threshold_strict=False,
        initial_poses=_grid_poses(l3_items, (135.0, 14.0)),
    )

    return MuseumScene(
        version=SCHEMA_VERSION,
        name="demo bronze museum",
        rooms=rooms,
        exhibits=exhibits,
        stands=stands,
        teleport=TeleportGraph(areas, points),
        lighting=lighting,
        level_configs=[level1, level2, level3],
    )


def answer_placements(scene: MuseumScene, level: int) -> dict[str, Pose]:
    """A correct placement for every item that can be scored: each matching
    container filled up to capacity, items dropped just inside radius A."""
    cfg = scene.config(level)
    attr = {"Category": "category", "Purpose": "purpose", "Dynasty": "dynasty"}[cfg.theme]
    out: dict[str, Pose] = {}
    for container in cfg.containers:
        matching = [i for i in cfg.game_item_ids
                    if getattr(scene.exhibit(i), attr) == container.accepts and i not in out]
        for k, item in enumerate(matching[: container.capacity]):
            x, y, z = container.position
            out[item] = Pose((x + 0.05 * (k + 1), y, z))
    return out
