"""Independent geometric oracles used only by the tests.

The Hausdorff estimate samples each surface uniformly by area and takes
exact point-to-triangle distances against the other mesh, prefiltering
candidate triangles with a centroid KD-tree. Each per-point minimum is
taken over a candidate subset, so it can only overestimate; the estimate
is therefore conservative for an upper-bound threshold.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial import cKDTree

from museumkit.geometry import Mesh


def point_triangle_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray,
                            c: np.ndarray) -> float:
    """Exact Euclidean distance from p to triangle abc (Ericson's region
    classification)."""
    ab, ac, ap = b - a, c - a, p - a
    d1, d2 = ab @ ap, ac @ ap
    if d1 <= 0 and d2 <= 0:
        return float(np.linalg.norm(p - a))
    bp = p - b
    d3, d4 = ab @ bp, ac @ bp
    if d3 >= 0 and d4 <= d3:
        return float(np.linalg.norm(p - b))
    vc = d1 * d4 - d3 * d2
    if vc <= 0 and d1 >= 0 and d3 <= 0:
        v = d1 / (d1 - d3)
        return float(np.linalg.norm(p - (a + v * ab)))
    cp = p - c
    d5, d6 = ab @ cp, ac @ cp
    if d6 >= 0 and d5 <= d6:
        return float(np.linalg.norm(p - c))
    vb = d5 * d2 - d1 * d6
    if vb <= 0 and d2 >= 0 and d6 <= 0:
        w = d2 / (d2 - d6)
        return float(np.linalg.norm(p - (a + w * ac)))
    va = d3 * d6 - d5 * d4
    if va <= 0 and (d4 - d3) >= 0 and (d5 - d6) >= 0:
        w = (d4 - d3) / ((d4 - d3) + (d5 - d6))
        return float(np.linalg.norm(p - (b + w * (c - b))))
    denom = 1.0 / (va + vb + vc)
    v = vb * denom
    w = vc * denom
    return float(np.linalg.norm(p - (a + v * ab + w * ac)))


def sample_surface(mesh: Mesh, count: int, seed: int = 0) -> np.ndarray:
    """Area-weighted uniform samples on the triangle surface."""
    rng = np.random.default_rng(seed)
    v = mesh.vertices
    t = mesh.triangles
    cross = np.cross(v[t[:, 1]] - v[t[:, 0]], v[t[:, 2]] - v[t[:, 0]])
    areas = 0.5 * np.linalg.norm(cross, axis=1)
    probs = areas / areas.sum()
    picks = rng.choice(len(t), size=count, p=probs)
    r1 = np.sqrt(rng.random(count))
    r2 = rng.random(count)
    a, b, c = v[t[picks, 0]], v[t[picks, 1]], v[t[picks, 2]]
    return (1 - r1)[:, None] * a + (r1 * (1 - r2))[:, None] * b + (r1 * r2)[:, None] * c


def _directed_distance(points: np.ndarray, mesh: Mesh, k: int = 40) -> float:
    v = mesh.vertices
    t = mesh.triangles
    centroids = v[t].mean(axis=1)
    tree = cKDTree(centroids)
    k = min(k, len(t))
    _, idx = tree.query(points, k=k)
    if k == 1:
        idx = idx[:, None]
    worst = 0.0
    for p, cands in zip(points, idx):
        best = min(point_triangle_distance(p, v[t[j, 0]], v[t[j, 1]], v[t[j, 2]])
                   for j in cands)
        worst = max(worst, best)
    return worst


def sampled_hausdorff(mesh_a: Mesh, mesh_b: Mesh, samples: int = 4000,
                      seed: int = 0) -> float:
    """Symmetric sampled Hausdorff distance between two surfaces."""
    pa = sample_surface(mesh_a, samples, seed)
    pb = sample_surface(mesh_b, samples, seed + 1)
    return max(_directed_distance(pa, mesh_b), _directed_distance(pb, mesh_a))
