import numpy as np
import pytest

from museumkit.geometry import Mesh, OrientationError, normalize_orientation
from museumkit.geometry.orientation import _rotation_to_y
from conftest import make_icosphere


def tall_box(height: float = 3.0) -> Mesh:
    """A closed y-up box, 1 x height x 1, base at y = 0."""
    verts = np.array([[x, y, z] for y in (0.0, height) for x in (0.0, 1.0) for z in (0.0, 1.0)])
    tris = np.array([
        [0, 2, 3], [0, 3, 1],
        [4, 7, 6], [4, 5, 7],
        [0, 1, 5], [0, 5, 4],
        [2, 6, 7], [2, 7, 3],
        [0, 4, 6], [0, 6, 2],
        [1, 3, 7], [1, 7, 5],
    ])
    return Mesh(vertices=verts, triangles=tris)


def rotate_mesh(mesh: Mesh, rotation: np.ndarray) -> Mesh:
    return Mesh(vertices=mesh.vertices @ rotation.T, triangles=mesh.triangles.copy())


def test_already_upright_is_fixed_point():
    fixed, fix = normalize_orientation(tall_box())
    assert np.allclose(fix.rotation, np.eye(3), atol=1e-6)
    assert np.allclose(fix.translation, 0.0, atol=1e-6)
    assert np.allclose(fixed.vertices, tall_box().vertices, atol=1e-6)


def test_rotation_is_orthonormal():
    rng = np.random.default_rng(5)
    axis = rng.normal(size=3)
    rot = _rotation_to_y(axis / np.linalg.norm(axis))
    assert np.allclose(rot.T @ rot, np.eye(3), atol=1e-6)
    assert np.linalg.det(rot) == pytest.approx(1.0, abs=1e-9)


def test_known_rotation_undone():
    # 90 degrees about x sends +y to +z
    rx = np.array([[1.0, 0, 0], [0, 0, -1], [0, 1, 0]])
    tilted = rotate_mesh(tall_box(), rx)
    fixed, fix = normalize_orientation(tilted)
    assert np.allclose(fix.rotation @ rx, np.eye(3), atol=1e-6)
    assert fixed.vertices[:, 1].min() == pytest.approx(0.0, abs=1e-6)
    assert fixed.vertices[:, 1].max() == pytest.approx(3.0, abs=1e-6)


def test_idempotent():
    rng = np.random.default_rng(9)
    axis = rng.normal(size=3)
    axis /= np.linalg.norm(axis)
    angle = 0.7
    k = np.array([[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]])
    rot = np.eye(3) + np.sin(angle) * k + (1 - np.cos(angle)) * (k @ k)
    once, _ = normalize_orientation(rotate_mesh(tall_box(), rot))
    twice, fix2 = normalize_orientation(once)
    assert np.allclose(fix2.rotation, np.eye(3), atol=1e-5)
    assert np.allclose(once.vertices, twice.vertices, atol=1e-5)


def test_bottom_normal_invariant_after_fix():
    fixed, fix = normalize_orientation(rotate_mesh(tall_box(), np.array(
        [[0.0, 1, 0], [-1, 0, 0], [0, 0, 1]])))
    # refit the bottom band of the result; its normal must be ~ +y
    verts = fixed.vertices
    band = verts[verts[:, 1] <= verts[:, 1].min() + 0.05 * np.ptp(verts[:, 1])]
    centered = band - band.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    normal = vt[-1]
    assert abs(normal[1]) >= 0.999


def test_flat_base_beats_pointed_top():
    """A cone (flat disk at the bottom, apex at the top) must keep the
    disk down even when handed in upside down."""
    n = 48
    angles = np.linspace(0, 2 * np.pi, n, endpoint=False)
    rim = np.stack([np.cos(angles), np.zeros(n), np.sin(angles)], axis=1)
    verts = np.vstack([rim, [[0, 0, 0]], [[0, 3.0, 0]]])
    tris = []
    for i in range(n):
        j = (i + 1) % n
        tris.append([i, j, n])        # base disk fan
        tris.append([j, i, n + 1])    # side wall
    cone = Mesh(vertices=verts, triangles=np.array(tris))

    flipped = Mesh(vertices=verts * np.array([1.0, -1.0, 1.0]), triangles=cone.triangles.copy())
    fixed, _ = normalize_orientation(flipped)
    assert fixed.vertices[:, 1].min() == pytest.approx(0.0, abs=1e-6)
    # apex must end up on top
    assert fixed.vertices[:, 1].max() == pytest.approx(3.0, abs=1e-6)


def test_single_triangle_normalizes():
    mesh = Mesh(vertices=np.array([[0.0, 0, 0], [1, 0, 0], [0, 0, 1]]),
                triangles=np.array([[0, 1, 2]]))
    fixed, _ = normalize_orientation(mesh)
    assert np.allclose(fixed.vertices[:, 1], 0.0, atol=1e-9)


def test_too_few_vertices_rejected():
    with pytest.raises((OrientationError, ValueError)):
        normalize_orientation(Mesh(vertices=np.array([[0.0, 0, 0]]),
                                   triangles=np.zeros((0, 3), dtype=np.int64)))


def test_sphere_normalizes_without_error():
    fixed, fix = normalize_orientation(make_icosphere(2))
    assert np.allclose(fix.rotation.T @ fix.rotation, np.eye(3), atol=1e-6)
    # the fitted base plane sits at y = 0; a curved base only dips slightly
    assert abs(fixed.vertices[:, 1].min()) < 0.05
