"""Orientation normalization: put the model's flat base on the y = 0 plane.

The bottom surface is found automatically: the up axis is first estimated
from the bounding box (the axis of largest extent, i.e. minimal bbox-face
area), the flatter of the two 5%-height end bands is taken as the base, a
plane is least-squares fitted to it, and the band is re-selected once along
the fitted normal before the final fit. The fitted normal (oriented toward
the body of the mesh) is rotated onto +y and the base translated to y = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mesh import Mesh

BAND_FRACTION = 0.05


class OrientationError(ValueError):
    """Bottom surface could not be determined."""


@dataclass
class OrientationFix:
    """Rigid transform v' = rotation @ v + translation that was applied."""

    rotation: np.ndarray
    translation: np.ndarray
    bottom_normal_before: np.ndarray

    def apply(self, points: np.ndarray) -> np.ndarray:
        return points @ self.rotation.T + self.translation

    def to_dict(self) -> dict:
        return {
            "rotation": self.rotation.tolist(),
            "translation": self.translation.tolist(),
            "bottom_normal_before": self.bottom_normal_before.tolist(),
        }


def _fit_plane(points: np.ndarray):
    """Least-squares plane; returns (point, unit normal, rms residual)."""
    centroid = points.mean(axis=0)
    centered = points - centroid
    _, s, vt = np.linalg.svd(centered, full_matrices=False)
    normal = vt[-1]
    rms = s[-1] / np.sqrt(len(points)) if len(points) > 2 else 0.0
    return centroid, normal, float(rms)


def _band(heights: np.ndarray, extent: float, fraction: float) -> np.ndarray:
    limit = heights.min() + max(fraction * extent, 1e-12)
    return np.flatnonzero(heights <= limit)


def _band_plane(verts: np.ndarray, up: np.ndarray):
    heights = verts @ up
    extent = heights.max() - heights.min()
    # coarse meshes may have a near-empty 5% band; widen until fittable
    fraction = BAND_FRACTION
    idx = _band(heights, extent, fraction)
    while len(idx) < 3 and fraction < 0.5:
        fraction *= 2.0
        idx = _band(heights, extent, fraction)
    if len(idx) < 3:
        raise OrientationError("fewer than 3 vertices in bottom band")
    return _fit_plane(verts[idx])


def _rotation_to_y(normal: np.ndarray) -> np.ndarray:
    """Minimal rotation mapping ``normal`` to (0, 1, 0)."""
    y = np.array([0.0, 1.0, 0.0])
    c = float(normal @ y)
    axis = np.cross(normal, y)
    s = np.linalg.norm(axis)
    if s < 1e-12:
        if c > 0:
            return np.eye(3)
        return np.diag([1.0, -1.0, -1.0])  # flip about x
    axis = axis / s
    K = np.array([
        [0, -axis[2], axis[1]],
        [axis[2], 0, -axis[0]],
        [-axis[1], axis[0], 0],
    ])
    return np.eye(3) + s * K + (1 - c) * (K @ K)


def normalize_orientation(mesh: Mesh) -> tuple[Mesh, OrientationFix]:
    """Rotate so the bottom-surface normal becomes +y, translate base to y=0."""
    mesh.validate()
    verts = mesh.vertices
    if len(verts) < 3:
        raise OrientationError("mesh has fewer than 3 vertices")

    extents = verts.max(axis=0) - verts.min(axis=0)
    axis = np.zeros(3)
    if extents.min() <= 1e-9 * max(extents.max(), 1e-12):
        # perfectly flat model: the degenerate axis is the base normal
        axis[int(np.argmin(extents))] = 1.0
    else:
        axis[int(np.argmax(extents))] = 1.0

    # The base is the flatter of the two end bands; ties prefer the lower
    # end so already-normalized meshes are fixed points.
    def band_rms(up_dir):
        try:
            return _band_plane(verts, up_dir)[2]
        except OrientationError:
            return np.inf  # a point-like end cannot be the base

    rms_lo, rms_hi = band_rms(axis), band_rms(-axis)
    if not np.isfinite(min(rms_lo, rms_hi)):
        raise OrientationError("fewer than 3 vertices in bottom band")
    up = axis if rms_lo <= rms_hi + 1e-9 else -axis

    # One refinement pass along the fitted normal.
    _, normal, _ = _band_plane(verts, up)
    if normal @ up < 0:
        normal = -normal
    point, normal, _ = _band_plane(verts, normal)
    if normal @ (verts.mean(axis=0) - point) < 0:
        normal = -normal

    rotation = _rotation_to_y(normal)
    translation = np.array([0.0, -(rotation @ point)[1], 0.0])
    fix = OrientationFix(rotation=rotation, translation=translation, bottom_normal_before=normal)

    out = mesh.copy()
    out.vertices = fix.apply(verts)
    return out, fix
