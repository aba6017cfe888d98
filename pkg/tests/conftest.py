"""Shared fixtures: canonical meshes, the demo scene, scripted logs, and
the frozen questionnaire dataset."""

from __future__ import annotations

import numpy as np
import pytest

from museumkit.analytics import SusResponse
from museumkit.geometry import Mesh
from museumkit.scene.demo import answer_placements, build_demo_scene
from museumkit.sessionlog import SessionLog, record
from museumkit.sessionlog.events import (
    enter_game_event,
    grab_event,
    release_event,
    submit_event,
    teleport_event,
)


def make_grid(n: int, y: float = 0.0) -> Mesh:
    """A planar (n-1)x(n-1) quad grid split into 2(n-1)^2 triangles."""
    g = np.linspace(0.0, 1.0, n)
    xx, zz = np.meshgrid(g, g)
    verts = np.stack([xx.ravel(), np.full(n * n, y), zz.ravel()], axis=1)
    tris = []
    for i in range(n - 1):
        for j in range(n - 1):
            a = i * n + j
            tris.append([a, a + 1, a + n + 1])
            tris.append([a, a + n + 1, a + n])
    return Mesh(vertices=verts, triangles=np.asarray(tris, dtype=np.int64))


def make_icosphere(subdivisions: int, radius: float = 1.0) -> Mesh:
    """Subdivided icosahedron; 20 * 4^s triangles."""
    phi = (1.0 + np.sqrt(5.0)) / 2.0
    verts = np.array([
        [-1, phi, 0], [1, phi, 0], [-1, -phi, 0], [1, -phi, 0],
        [0, -1, phi], [0, 1, phi], [0, -1, -phi], [0, 1, -phi],
        [phi, 0, -1], [phi, 0, 1], [-phi, 0, -1], [-phi, 0, 1],
    ], dtype=float)
    faces = [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ]
    vlist = [v / np.linalg.norm(v) for v in verts]
    cache: dict[tuple[int, int], int] = {}

    def midpoint(a: int, b: int) -> int:
        key = (a, b) if a < b else (b, a)
        if key not in cache:
            m = vlist[a] + vlist[b]
            vlist.append(m / np.linalg.norm(m))
            cache[key] = len(vlist) - 1
        return cache[key]

    for _ in range(subdivisions):
        nxt = []
        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            nxt += [(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)]
        faces = nxt
    return Mesh(vertices=np.asarray(vlist) * radius,
                triangles=np.asarray(faces, dtype=np.int64))


@pytest.fixture(scope="session")
def demo_scene():
    return build_demo_scene()


def build_playthrough_log(scene, session_id: str = "run", t0: int = 0,
                          step: int = 100) -> SessionLog:
    """A scripted full clear of all three levels with correct placements."""
    log = SessionLog(session_id, scene.version)
    t = t0
    for level, gate in ((1, "next_level_1"), (2, "next_level_2"), (3, None)):
        record(log, enter_game_event(t)); t += step
        for item, pose in answer_placements(scene, level).items():
            record(log, grab_event(t, item)); t += step
            record(log, release_event(t, item, pose.to_dict())); t += step
        record(log, submit_event(t)); t += step
        if gate:
            record(log, teleport_event(t, gate)); t += step
    return log


def build_sus_dataset() -> list[SusResponse]:
    """The frozen 40-respondent dataset targeting the published means.

    Respondent raw subscale totals: learnability 194, usability 1043, so
    mean = 2.5 * 1237 / 40 = 77.3125 and usability = 81.484375. The exact
    0.2/0.8 identity then forces learnability to 60.625; all three
    published means cannot hold at once (see the dataset test notes).
    """
    responses = []
    for i in range(40):
        raw_u_even = (3, 3, 2) if i < 3 else (3, 3, 3)   # items 2, 6, 8
        q4 = 2 if i < 6 else 1                            # learnability 4 or 5
        q2, q6, q8 = raw_u_even
        items = (5, q2, 5, q4, 5, q6, 5, q8, 5, 4)
        responses.append(SusResponse(respondent_id=f"p{i + 1:02d}", items=items))
    return responses


@pytest.fixture(scope="session")
def sus_dataset():
    return build_sus_dataset()
