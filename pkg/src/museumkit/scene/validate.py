"""Cross-cutting scene validation. Findings are data, not exceptions."""

from __future__ import annotations

from dataclasses import dataclass

from ..game.config import ConfigError, validate_level_configs
from .model import MuseumScene

STAND_HEIGHT_MIN = 0.6
STAND_HEIGHT_MAX = 1.4
PANEL_HEIGHT_TOLERANCE = 0.3


@dataclass(frozen=True)
class Finding:
    code: str
    subject: str
    message: str

    def __str__(self):
        return f"[{self.code}] {self.subject}: {self.message}"


def _point_in_convex(p: tuple[float, float], poly: list[tuple[float, float]], eps: float = 1e-9) -> bool:
    sign = 0
    n = len(poly)
    for i in range(n):
        ax, az = poly[i]
        bx, bz = poly[(i + 1) % n]
        cross = (bx - ax) * (p[1] - az) - (bz - az) * (p[0] - ax)
        if abs(cross) <= eps:
            continue
        s = 1 if cross > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            return False
    return True


def _polygons_overlap(a: list[tuple[float, float]], b: list[tuple[float, float]]) -> bool:
    """Separating-axis test for convex polygons (touching counts as overlap)."""
    for poly1, poly2 in ((a, b), (b, a)):
        n = len(poly1)
        for i in range(n):
            ax, az = poly1[i]
            bx, bz = poly1[(i + 1) % n]
            nx, nz = az - bz, bx - ax  # edge normal
            proj1 = [nx * x + nz * z for x, z in poly1]
            proj2 = [nx * x + nz * z for x, z in poly2]
            if max(proj1) < min(proj2) - 1e-9 or max(proj2) < min(proj1) - 1e-9:
                return False
    return True


def validate_scene(scene: MuseumScene) -> list[Finding]:
    """Zero findings iff all type invariants and cross-module rules hold."""
    findings: list[Finding] = []
    add = lambda code, subject, message: findings.append(Finding(code, subject, message))

    stands_by_exhibit = {s.exhibit_id: s for s in scene.stands}

    for e in scene.exhibits:
        if not e.knowledge_text.strip():
            add("empty-knowledge-text", e.id, "knowledge text must be non-empty")
        if e.level not in (1, 2, 3):
            add("bad-level", e.id, f"level {e.level} outside 1..3")

    for s in scene.stands:
        if not (STAND_HEIGHT_MIN <= s.height <= STAND_HEIGHT_MAX):
            add("stand-height", s.id, f"height {s.height} outside moderate band [{STAND_HEIGHT_MIN}, {STAND_HEIGHT_MAX}]")
        if abs(s.panel.text_height - s.height) > PANEL_HEIGHT_TOLERANCE:
            add("panel-height", s.id, f"panel text height {s.panel.text_height} not within "
                f"{PANEL_HEIGHT_TOLERANCE} m of exhibit display height {s.height}")

    # Lighting: one spotlight per exhibit, >= 1 light probe, exhibits dynamic.
    spot_targets = [sp.target_exhibit_id for sp in scene.lighting.spotlights]
    for e in scene.exhibits:
        n = spot_targets.count(e.id)
        if n == 0:
            add("missing-spotlight", e.id, "exhibit has no spotlight")
        elif n > 1:
            add("duplicate-spotlight", e.id, f"exhibit targeted by {n} spotlights")
        if not scene.lighting.light_probes.get(e.id):
            add("missing-light-probe", e.id, "exhibit has no light probe")
        if e.id in scene.lighting.static_ids:
            add("static-exhibit", e.id, "exhibits are dynamic; must not be in static_ids")

    # Teleport: every point inside some area; whole graph connected.
    areas = scene.teleport.areas
    containing: dict[str, list[str]] = {}
    for p in scene.teleport.points:
        inside = [a.id for a in areas if _point_in_convex((p.position[0], p.position[2]), a.polygon)]
        if not inside:
            add("unreachable-teleport-point", p.id, "teleport point lies outside all areas")
        containing[p.id] = inside

    if areas:
        index = {a.id: i for i, a in enumerate(areas)}
        parent = list(range(len(areas) + len(scene.teleport.points)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        for i, a in enumerate(areas):
            for j in range(i + 1, len(areas)):
                if _polygons_overlap(a.polygon, areas[j].polygon):
                    union(i, j)
        for k, p in enumerate(scene.teleport.points):
            for aid in containing.get(p.id, []):
                union(len(areas) + k, index[aid])
        roots = {find(i) for i in range(len(parent))}
        if len(roots) > 1:
            add("teleport-disconnected", "teleport", f"{len(roots)} disconnected teleport components")

    for p in scene.teleport.points:
        if p.kind == "NextLevel" and p.initially_open:
            add("gate-initially-open", p.id, "NextLevel gates must start closed")

    # Level configs and their item linkage.
    try:
        validate_level_configs(scene.level_configs)
    except ConfigError as exc:
        add("level-config", "level_configs", str(exc))
    for cfg in scene.level_configs:
        item_ids = list(cfg.game_item_ids) + ([cfg.display_item_id] if cfg.display_item_id else [])
        for item in item_ids:
            e = scene.exhibit(item)
            if e is None:
                add("dangling-item", item, f"level {cfg.level} references unknown exhibit")
            elif e.level != cfg.level:
                add("item-level", item, f"exhibit level {e.level} used in level {cfg.level} game")
            elif item not in stands_by_exhibit:
                add("item-not-displayed", item, "game item is not displayed in any roaming room")

    return findings
