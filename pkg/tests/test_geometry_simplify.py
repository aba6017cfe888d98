import numpy as np
import pytest

from museumkit.geometry import Mesh, SimplifyOptions, mesh_stats, simplify
from conftest import make_grid, make_icosphere
from geometry_oracles import sampled_hausdorff


def test_target_at_or_above_input_is_noop():
    grid = make_grid(4)
    out = simplify(grid, len(grid.triangles))
    assert np.array_equal(out.triangles, grid.triangles)
    assert np.array_equal(out.vertices, grid.vertices)


def test_target_below_two_rejected():
    with pytest.raises(ValueError):
        simplify(make_grid(4), 1)


def test_planar_grid_collapses_without_leaving_plane():
    grid = make_grid(11)  # 200 triangles
    out = simplify(grid, 8)
    assert len(out.triangles) <= 8
    assert np.abs(out.vertices[:, 1]).max() < 1e-6


def test_boundary_square_outline_preserved():
    grid = make_grid(11)
    out = simplify(grid, 8)
    # boundary vertices must stay on the unit-square outline
    stats = mesh_stats(out)
    assert np.allclose(stats.bbox_min, [0, 0, 0], atol=1e-6)
    assert np.allclose(stats.bbox_max, [1, 0, 1], atol=1e-6)
    assert stats.boundary_loop_count == 1


def test_icosphere_hausdorff_within_two_percent():
    sphere = make_icosphere(4)  # 5120 triangles
    out = simplify(sphere, 512)
    assert len(out.triangles) <= 512
    assert sampled_hausdorff(sphere, out, samples=2000) < 0.02


def test_face_count_monotone_over_targets():
    sphere = make_icosphere(2)
    counts = [len(simplify(sphere, t).triangles) for t in (320, 160, 80, 40)]
    assert all(a >= b for a, b in zip(counts, counts[1:]))
    assert all(c <= t for c, t in zip(counts, (320, 160, 80, 40)))


def test_bbox_stays_put_on_closed_surface():
    sphere = make_icosphere(3)
    out = simplify(sphere, 200)
    before = mesh_stats(sphere)
    after = mesh_stats(out)
    assert np.all(np.asarray(after.bbox_min) >= np.asarray(before.bbox_min) - 1e-3)
    assert np.all(np.asarray(after.bbox_max) <= np.asarray(before.bbox_max) + 1e-3)


def test_max_error_stops_early():
    sphere = make_icosphere(2)
    out = simplify(sphere, 8, SimplifyOptions(max_error=1e-12))
    # a curved surface cannot reach 8 faces without exceeding a tiny error cap
    assert len(out.triangles) > 8


def test_colors_survive_simplification():
    sphere = make_icosphere(2)
    colors = (sphere.vertices + 1.0) / 2.0
    mesh = Mesh(vertices=sphere.vertices, triangles=sphere.triangles, colors=colors)
    out = simplify(mesh, 80)
    assert out.colors is not None
    assert out.colors.shape == (len(out.vertices), 3)
    assert np.isfinite(out.colors).all()


def test_input_mesh_never_mutated():
    grid = make_grid(6)
    verts = grid.vertices.copy()
    tris = grid.triangles.copy()
    simplify(grid, 10)
    assert np.array_equal(grid.vertices, verts)
    assert np.array_equal(grid.triangles, tris)
