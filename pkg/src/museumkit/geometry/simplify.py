"""Quadric-error-metric simplification by iterative edge collapse.

Collapses are taken in ascending combined-quadric error; the new vertex is
the minimizer of the combined form, falling back to midpoint/endpoints when
the system is singular. With colors present the quadrics are color-extended,
so collapses interpolate color as well; uvs follow the nearer endpoint.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .mesh import Mesh, boundary_edges
from .quadrics import Quadric, compute_quadrics, triangle_area_normal

log = logging.getLogger(__name__)

BOUNDARY_WEIGHT = 1e3


@dataclass
class SimplifyOptions:
    preserve_boundary: bool = True
    max_error: Optional[float] = None
    color_weight: float = 1.0


def simplify(mesh: Mesh, target_face_count: int, options: Optional[SimplifyOptions] = None) -> Mesh:
    """Decimate ``mesh`` to at most ``target_face_count`` faces (or the
    minimum the collapse rules allow). The input mesh is never mutated."""
    if target_face_count < 2:
        raise ValueError("target_face_count must be >= 2")
    options = options or SimplifyOptions()
    mesh = mesh.copy().validate()
    if mesh.face_count <= target_face_count:
        return mesh

    return _Decimator(mesh, options).run(target_face_count)


class _Decimator:
    def __init__(self, mesh: Mesh, options: SimplifyOptions):
        self.opts = options
        self.positions = [mesh.vertices[i].copy() for i in range(mesh.vertex_count)]
        self.colors = None if mesh.colors is None else [mesh.colors[i].copy() for i in range(mesh.vertex_count)]
        self.uvs = None if mesh.uvs is None else [mesh.uvs[i].copy() for i in range(mesh.vertex_count)]
        self.name = mesh.name
        self.dim = 3 if self.colors is None else 6

        vq = compute_quadrics(mesh, options.color_weight)
        self.quadrics = vq.quadrics
        if vq.skipped_faces:
            log.warning("%d degenerate faces ignored while building quadrics", vq.skipped_faces)

        self.faces: list[Optional[list[int]]] = [list(t) for t in mesh.triangles]
        self.vertex_faces: list[set[int]] = [set() for _ in range(mesh.vertex_count)]
        for fi, tri in enumerate(mesh.triangles):
            for v in tri:
                self.vertex_faces[v].add(fi)
        self.alive_faces = len(self.faces)

        self.boundary_vertices: set[int] = set()
        self.boundary_edge_set: set[tuple[int, int]] = set()
        for a, b in boundary_edges(mesh.triangles):
            self.boundary_edge_set.add((a, b))
            self.boundary_vertices.update((a, b))
        if options.preserve_boundary:
            self._add_boundary_constraints()

        self.version = [0] * mesh.vertex_count
        self.heap: list = []
        self._tiebreak = 0
        self.skipped_unsafe = 0
        for e in self._all_edges():
            self._push_edge(*e)

    # -- setup helpers ------------------------------------------------------

    def _add_boundary_constraints(self):
        # Perpendicular constraint planes keep open boundaries in place.
        for a, b in self.boundary_edge_set:
            face = next((self.faces[fi] for fi in self.vertex_faces[a] if b in self.faces[fi]), None)
            if face is None:
                continue
            p = [self.positions[i] for i in face]
            _, fn = triangle_area_normal(*p)
            edge = self.positions[b] - self.positions[a]
            n = np.cross(edge, fn)
            norm = np.linalg.norm(n)
            if norm <= 0:
                continue
            n = n / norm
            if self.dim == 6:
                n = np.concatenate([n, np.zeros(3)])
            d = -n[:3] @ self.positions[a]
            w = BOUNDARY_WEIGHT * float(edge @ edge)
            q = Quadric.from_plane(n, d, weight=w)
            self.quadrics[a] += q
            self.quadrics[b] += q

    def _all_edges(self):
        seen = set()
        for tri in self.faces:
            a, b, c = tri
            for u, v in ((a, b), (b, c), (c, a)):
                key = (min(u, v), max(u, v))
                if key not in seen:
                    seen.add(key)
                    yield key

    # -- collapse candidates ------------------------------------------------

    def _augmented(self, i: int) -> np.ndarray:
        if self.dim == 3:
            return self.positions[i]
        return np.concatenate([self.positions[i], self.opts.color_weight * self.colors[i]])

    def _place(self, u: int, v: int, q: Quadric):
        candidates = []
        opt = q.minimizer()
        if opt is not None:
            candidates.append(opt)
        au, av = self._augmented(u), self._augmented(v)
        candidates += [0.5 * (au + av), au, av]
        best = min(candidates, key=lambda x: q.error(x))
        return best, max(q.error(best), 0.0)

    def _push_edge(self, u: int, v: int):
        q = self.quadrics[u] + self.quadrics[v]
        pos, err = self._place(u, v, q)
        self._tiebreak += 1
        heapq.heappush(self.heap, (err, self._tiebreak, u, v, self.version[u], self.version[v], pos))

    def _neighbors(self, v: int) -> set[int]:
        out: set[int] = set()
        for fi in self.vertex_faces[v]:
            out.update(self.faces[fi])
        out.discard(v)
        return out

    def _collapse_is_safe(self, u: int, v: int) -> bool:
        shared_faces = self.vertex_faces[u] & self.vertex_faces[v]
        if not shared_faces:
            return False
        # Link condition: common neighbors must all come from shared faces,
        # otherwise the collapse pinches the surface into a non-manifold.
        wings = {w for fi in shared_faces for w in self.faces[fi] if w not in (u, v)}
        if self._neighbors(u) & self._neighbors(v) != wings:
            return False
        edge_key = (min(u, v), max(u, v))
        on_boundary = edge_key in self.boundary_edge_set
        if (u in self.boundary_vertices and v in self.boundary_vertices and not on_boundary):
            return False  # would glue two boundary loops together
        if len(shared_faces) != (1 if on_boundary else 2):
            return False
        return True

    def _flips_normal(self, u: int, v: int, new_pos: np.ndarray) -> bool:
        shared = self.vertex_faces[u] & self.vertex_faces[v]
        for w in (u, v):
            for fi in self.vertex_faces[w] - shared:
                tri = self.faces[fi]
                before = [self.positions[i] for i in tri]
                after = [new_pos if i in (u, v) else self.positions[i] for i in tri]
                _, n0 = triangle_area_normal(*before)
                a1, n1 = triangle_area_normal(*after)
                if a1 <= 0 or n0 @ n1 < 0:
                    return True
        return False

    # -- main loop ----------------------------------------------------------

    def run(self, target: int) -> Mesh:
        while self.alive_faces > target and self.heap:
            err, _, u, v, vu, vv, pos = heapq.heappop(self.heap)
            if self.version[u] != vu or self.version[v] != vv:
                continue
            if self.opts.max_error is not None and err > self.opts.max_error:
                break
            if not self._collapse_is_safe(u, v):
                self.skipped_unsafe += 1
                continue
            if self._flips_normal(u, v, pos[:3]):
                self.skipped_unsafe += 1
                continue
            self._collapse(u, v, pos)
        if self.skipped_unsafe:
            log.info("skipped %d unsafe edge collapses", self.skipped_unsafe)
        return self._build_mesh()

    def _collapse(self, u: int, v: int, pos: np.ndarray):
        # Keep u, retire v.
        if self.uvs is not None:
            du = np.linalg.norm(pos[:3] - self.positions[u])
            dv = np.linalg.norm(pos[:3] - self.positions[v])
            self.uvs[u] = self.uvs[u] if du <= dv else self.uvs[v]
        self.positions[u] = np.array(pos[:3])
        if self.colors is not None:
            self.colors[u] = np.clip(np.array(pos[3:]) / self.opts.color_weight, 0.0, 1.0)
        self.quadrics[u] = self.quadrics[u] + self.quadrics[v]

        for fi in list(self.vertex_faces[u] & self.vertex_faces[v]):
            for w in self.faces[fi]:
                self.vertex_faces[w].discard(fi)
            self.faces[fi] = None
            self.alive_faces -= 1
        for fi in list(self.vertex_faces[v]):
            tri = self.faces[fi]
            self.faces[fi] = [u if i == v else i for i in tri]
            self.vertex_faces[v].discard(fi)
            self.vertex_faces[u].add(fi)
        self.vertex_faces[v] = set()

        if v in self.boundary_vertices:
            self.boundary_vertices.discard(v)
            self.boundary_vertices.add(u)
        retag = set()
        for a, b in list(self.boundary_edge_set):
            if v in (a, b):
                self.boundary_edge_set.discard((a, b))
                x, y = (u if a == v else a), (u if b == v else b)
                if x != y:
                    retag.add((min(x, y), max(x, y)))
        self.boundary_edge_set.update(retag)

        self.version[v] += 1
        self.version[u] += 1
        neighbors = self._neighbors(u)
        for w in neighbors:
            self.version[w] += 1
        for w in neighbors:
            self._push_edge(*(min(u, w), max(u, w)))
            for x in self._neighbors(w):
                if x != u:
                    self._push_edge(*(min(w, x), max(w, x)))

    def _build_mesh(self) -> Mesh:
        remap: dict[int, int] = {}
        verts, cols, uvs, tris = [], [], [], []
        for face in self.faces:
            if face is None:
                continue
            out = []
            for i in face:
                if i not in remap:
                    remap[i] = len(verts)
                    verts.append(self.positions[i])
                    if self.colors is not None:
                        cols.append(self.colors[i])
                    if self.uvs is not None:
                        uvs.append(self.uvs[i])
                out.append(remap[i])
            tris.append(out)
        return Mesh(
            np.array(verts).reshape(-1, 3),
            np.array(tris, dtype=np.int64).reshape(-1, 3),
            np.array(cols) if self.colors is not None else None,
            np.array(uvs) if self.uvs is not None else None,
            self.name,
        ).validate()
