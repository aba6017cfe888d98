from .mesh import (Mesh, MeshStats, MeshError, ParseError, EmptyMeshError,
                   load_mesh, save_mesh, read_mesh_file, write_mesh_file, mesh_stats)
from .quadrics import Quadric, VertexQuadrics, compute_quadrics
from .simplify import SimplifyOptions, simplify
from .orientation import OrientationFix, OrientationError, normalize_orientation

__all__ = [
    "Mesh",
    "MeshStats",
    "MeshError",
    "ParseError",
    "EmptyMeshError",
    "load_mesh",
    "save_mesh",
    "read_mesh_file",
    "write_mesh_file",
    "mesh_stats",
    "Quadric",
    "VertexQuadrics",
    "compute_quadrics",
    "SimplifyOptions",
    "simplify",
    "OrientationFix",
    "OrientationError",
    "normalize_orientation",
]
