"""Stand layout: a circle against the walls so visitors can roam the middle."""

from __future__ import annotations

import math

from .model import Room


class LayoutError(ValueError):
    """Requested layout does not fit the room."""


def layout_circle(stand_count: int, room: Room, wall_margin: float) -> list[tuple[float, float, float]]:
    """Equally spaced positions on the largest circle that keeps
    ``wall_margin`` clearance from every wall. The first stand faces along
    the room's longer axis, so rotating the room rotates the layout."""
    if stand_count < 1:
        raise LayoutError("stand_count must be >= 1")
    w = room.floor_max[0] - room.floor_min[0]
    d = room.floor_max[1] - room.floor_min[1]
    radius = min(w, d) / 2.0 - wall_margin
    if radius <= 0:
        raise LayoutError(f"room {w} x {d} m too small for wall margin {wall_margin} m")
    cx = (room.floor_min[0] + room.floor_max[0]) / 2.0
    cz = (room.floor_min[1] + room.floor_max[1]) / 2.0
    start = 0.0 if w >= d else math.pi / 2.0
    out = []
    for k in range(stand_count):
        ang = start + 2.0 * math.pi * k / stand_count
        out.append((cx + radius * math.cos(ang), 0.0, cz + radius * math.sin(ang)))
    return out
