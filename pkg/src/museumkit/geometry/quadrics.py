"""Quadric error forms for edge-collapse simplification.

A quadric stores the symmetric form E(v) = v^T A v + 2 b.v + c, the summed
squared distance to a set of (weighted) planes. For plain geometry the form
lives in R^3 (equivalent to a symmetric 4x4 homogeneous matrix, 10 unique
coefficients). When vertex colors are present the form is extended to R^6
over (x, y, z, r, g, b), so collapses also pick interpolated colors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

import numpy as np

from .mesh import Mesh


class Quadric:
    """Additive squared-distance-to-planes form in R^d (d = 3 or 6)."""

    __slots__ = ("A", "b", "c")

    def __init__(self, dim: int = 3, A=None, b=None, c: float = 0.0):
        self.A = np.zeros((dim, dim)) if A is None else np.asarray(A, dtype=np.float64)
        self.b = np.zeros(dim) if b is None else np.asarray(b, dtype=np.float64)
        self.c = float(c)

    @property
    def dim(self) -> int:
        return len(self.b)

    def __add__(self, other: "Quadric") -> "Quadric":
        return Quadric(A=self.A + other.A, b=self.b + other.b, c=self.c + other.c, dim=self.dim)

    def __iadd__(self, other: "Quadric") -> "Quadric":
        self.A += other.A
        self.b += other.b
        self.c += other.c
        return self

    def error(self, v: np.ndarray) -> float:
        v = np.asarray(v, dtype=np.float64)
        return float(v @ self.A @ v + 2.0 * self.b @ v + self.c)

    def minimizer(self, singular_tol: float = 1e-12):
        """Position minimizing the form, or None when A is (near-)singular."""
        if abs(np.linalg.det(self.A)) < singular_tol:
            return None
        return np.linalg.solve(self.A, -self.b)

    @property
    def coefficients(self) -> np.ndarray:
        """The 10 unique entries of the homogeneous symmetric 4x4 form.

        Order: A00 A01 A02 A11 A12 A22 b0 b1 b2 c. Only defined for d = 3.
        """
        if self.dim != 3:
            raise ValueError("coefficients are the 4x4 form; quadric is color-extended")
        a = self.A
        return np.array([a[0, 0], a[0, 1], a[0, 2], a[1, 1], a[1, 2], a[2, 2],
                         self.b[0], self.b[1], self.b[2], self.c])

    @classmethod
    def from_plane(cls, normal: np.ndarray, d: float, weight: float = 1.0) -> "Quadric":
        """Quadric of squared distance to the plane n.x + d = 0 (unit n)."""
        n = np.asarray(normal, dtype=np.float64)
        return cls(A=weight * np.outer(n, n), b=weight * d * n, c=weight * d * d, dim=len(n))

    @classmethod
    def from_subspace(cls, p: np.ndarray, e1: np.ndarray, e2: np.ndarray, weight: float = 1.0) -> "Quadric":
        """Squared distance to the 2D affine subspace through p spanned by
        orthonormal e1, e2 (works in any dimension; used for color-extended
        triangle quadrics)."""
        p = np.asarray(p, dtype=np.float64)
        dim = len(p)
        A = np.eye(dim) - np.outer(e1, e1) - np.outer(e2, e2)
        b = (p @ e1) * e1 + (p @ e2) * e2 - p
        c = p @ p - (p @ e1) ** 2 - (p @ e2) ** 2
        return cls(A=weight * A, b=weight * b, c=weight * c, dim=dim)


def triangle_area_normal(p0, p1, p2):
    cross = np.cross(p1 - p0, p2 - p0)
    norm = np.linalg.norm(cross)
    return 0.5 * norm, (cross / norm if norm > 0 else cross)


def face_quadric(mesh: Mesh, tri: np.ndarray, color_weight: float = 1.0):
    """Area-weighted quadric of a single face, or None if degenerate."""
    p = [mesh.vertices[i] for i in tri]
    area, normal = triangle_area_normal(*p)
    if area <= 0.0:
        return None
    if mesh.colors is None:
        d = -normal @ p[0]
        return Quadric.from_plane(normal, d, weight=area)
    q = [np.concatenate([p[k], color_weight * mesh.colors[tri[k]]]) for k in range(3)]
    u = q[1] - q[0]
    e1 = u / np.linalg.norm(u)
    w = q[2] - q[0]
    w = w - (w @ e1) * e1
    wn = np.linalg.norm(w)
    if wn <= 0.0:
        return None
    return Quadric.from_subspace(q[0], e1, w / wn, weight=area)


@dataclass
class VertexQuadrics:
    """Per-vertex quadrics plus the count of degenerate faces skipped."""

    quadrics: List[Quadric]
    skipped_faces: int = 0
    dim: int = 3


def compute_quadrics(mesh: Mesh, color_weight: float = 1.0) -> VertexQuadrics:
    """Sum each vertex's incident area-weighted face-plane quadrics."""
    mesh.validate()
    dim = 3 if mesh.colors is None else 6
    quadrics = [Quadric(dim=dim) for _ in range(mesh.vertex_count)]
    skipped = 0
    for tri in mesh.triangles:
        q = face_quadric(mesh, tri, color_weight)
        if q is None:
            skipped += 1
            continue
        for i in tri:
            quadrics[i] += q
    return VertexQuadrics(quadrics=quadrics, skipped_faces=skipped, dim=dim)
