"""Indexed triangle meshes: loading (PLY/OBJ), saving (PLY/GLB), statistics.

Coordinates are meters, right-handed, +y up.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from typing import Optional

import numpy as np


class MeshError(ValueError):
    """Invalid mesh data."""


class ParseError(MeshError):
    """Malformed mesh file. Carries the byte offset where parsing failed."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class EmptyMeshError(MeshError):
    """Mesh with no vertices."""


@dataclass
class Mesh:
    """Triangle surface with optional per-vertex color and uv.

    ``vertices`` is (n, 3) float64, ``triangles`` (m, 3) int64,
    ``colors`` (n, 3) in [0, 1] or None, ``uvs`` (n, 2) or None.
    """

    vertices: np.ndarray
    triangles: np.ndarray
    colors: Optional[np.ndarray] = None
    uvs: Optional[np.ndarray] = None
    name: str = ""

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=np.float64).reshape(-1, 3)
        self.triangles = np.asarray(self.triangles, dtype=np.int64).reshape(-1, 3)
        if self.colors is not None:
            self.colors = np.asarray(self.colors, dtype=np.float64).reshape(-1, 3)
        if self.uvs is not None:
            self.uvs = np.asarray(self.uvs, dtype=np.float64).reshape(-1, 2)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def face_count(self) -> int:
        return len(self.triangles)

    def validate(self) -> "Mesh":
        """Check invariants; drops triangles with repeated indices."""
        if self.vertex_count == 0:
            raise EmptyMeshError("mesh has no vertices")
        if not np.all(np.isfinite(self.vertices)):
            raise MeshError("non-finite vertex coordinate")
        if self.face_count:
            if self.triangles.min() < 0 or self.triangles.max() >= self.vertex_count:
                raise MeshError("triangle index out of range")
            t = self.triangles
            degenerate = (t[:, 0] == t[:, 1]) | (t[:, 1] == t[:, 2]) | (t[:, 0] == t[:, 2])
            if degenerate.any():
                self.triangles = t[~degenerate]
        if self.colors is not None and len(self.colors) != self.vertex_count:
            raise MeshError("color count does not match vertex count")
        if self.uvs is not None and len(self.uvs) != self.vertex_count:
            raise MeshError("uv count does not match vertex count")
        return self

    def copy(self) -> "Mesh":
        return Mesh(
            self.vertices.copy(),
            self.triangles.copy(),
            None if self.colors is None else self.colors.copy(),
            None if self.uvs is None else self.uvs.copy(),
            self.name,
        )


@dataclass
class MeshStats:
    face_count: int
    vertex_count: int
    bbox_min: np.ndarray
    bbox_max: np.ndarray
    boundary_loop_count: int
    max_extent: float

    def to_dict(self) -> dict:
        return {
            "face_count": self.face_count,
            "vertex_count": self.vertex_count,
            "bbox_min": [float(v) for v in self.bbox_min],
            "bbox_max": [float(v) for v in self.bbox_max],
            "boundary_loop_count": self.boundary_loop_count,
            "max_extent": self.max_extent,
        }


# ---------------------------------------------------------------------------
# Loading

def load_mesh(data: bytes, fmt: str, name: str = "") -> Mesh:
    """Parse ``data`` as the declared format ("ply" or "obj")."""
    fmt = fmt.lower().lstrip(".")
    if fmt == "ply":
        mesh = _load_ply(data)
    elif fmt == "obj":
        mesh = _load_obj(data)
    else:
        raise ValueError(f"unsupported mesh format: {fmt!r}")
    mesh.name = name
    return mesh.validate()


_PLY_TYPES = {
    "char": ("b", 1), "int8": ("b", 1),
    "uchar": ("B", 1), "uint8": ("B", 1),
    "short": ("h", 2), "int16": ("h", 2),
    "ushort": ("H", 2), "uint16": ("H", 2),
    "int": ("i", 4), "int32": ("i", 4),
    "uint": ("I", 4), "uint32": ("I", 4),
    "float": ("f", 4), "float32": ("f", 4),
    "double": ("d", 8), "float64": ("d", 8),
}


def _load_ply(data: bytes) -> Mesh:
    end = data.find(b"end_header")
    if not data.startswith(b"ply") or end < 0:
        raise ParseError("not a PLY file", 0)
    body_start = data.find(b"\n", end) + 1
    header = data[:body_start].decode("ascii", errors="replace")

    fmt = None
    elements = []  # (name, count, [(prop_name, type, list_count_type|None)])
    for line in header.splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "format":
            fmt = parts[1]
        elif parts[0] == "element":
            elements.append((parts[1], int(parts[2]), []))
        elif parts[0] == "property":
            if not elements:
                raise ParseError("property before element", header.find(line))
            if parts[1] == "list":
                elements[-1][2].append((parts[4], parts[3], parts[2]))
            else:
                elements[-1][2].append((parts[2], parts[1], None))
    if fmt not in ("ascii", "binary_little_endian"):
        raise ParseError(f"unsupported PLY format {fmt!r}", 0)

    parsed = {}
    offset = body_start
    if fmt == "ascii":
        tokens = data[body_start:].split()
        ti = 0
        for ename, count, props in elements:
            rows = []
            for _ in range(count):
                row = {}
                for pname, ptype, ltype in props:
                    try:
                        if ltype is not None:
                            n = int(tokens[ti]); ti += 1
                            row[pname] = [float(tokens[ti + k]) for k in range(n)]
                            ti += n
                        else:
                            row[pname] = float(tokens[ti]); ti += 1
                    except (IndexError, ValueError):
                        raise ParseError(f"truncated or malformed {ename} data", len(data)) from None
                rows.append(row)
            parsed[ename] = rows
    else:
        for ename, count, props in elements:
            rows = []
            for _ in range(count):
                row = {}
                for pname, ptype, ltype in props:
                    try:
                        if ltype is not None:
                            cfmt, csz = _PLY_TYPES[ltype]
                            (n,) = struct.unpack_from("<" + cfmt, data, offset)
                            offset += csz
                            vfmt, vsz = _PLY_TYPES[ptype]
                            row[pname] = list(struct.unpack_from(f"<{n}{vfmt}", data, offset))
                            offset += n * vsz
                        else:
                            vfmt, vsz = _PLY_TYPES[ptype]
                            (row[pname],) = struct.unpack_from("<" + vfmt, data, offset)
                            offset += vsz
                    except struct.error:
                        raise ParseError(f"truncated {ename} data", offset) from None
                rows.append(row)
            parsed[ename] = rows

    verts = parsed.get("vertex", [])
    if not verts:
        raise EmptyMeshError("PLY file contains no vertices")
    try:
        vertices = np.array([[v["x"], v["y"], v["z"]] for v in verts])
    except KeyError:
        raise ParseError("vertex element lacks x/y/z properties", body_start) from None
    colors = None
    if verts and all(k in verts[0] for k in ("red", "green", "blue")):
        colors = np.array([[v["red"], v["green"], v["blue"]] for v in verts])
        if colors.max() > 1.0:
            colors = colors / 255.0
    uvs = None
    for ukey, vkey in (("u", "v"), ("s", "t")):
        if verts and ukey in verts[0] and vkey in verts[0]:
            uvs = np.array([[v[ukey], v[vkey]] for v in verts])
            break

    tris = []
    for f in parsed.get("face", []):
        idx = [int(i) for i in next(iter(f.values()))]
        for k in range(1, len(idx) - 1):  # fan-triangulate
            tris.append((idx[0], idx[k], idx[k + 1]))
    return Mesh(vertices, np.array(tris, dtype=np.int64).reshape(-1, 3), colors, uvs)


def _load_obj(data: bytes) -> Mesh:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError("OBJ is not valid UTF-8", exc.start) from None
    vertices, colors, uvs, tris = [], [], [], []
    offset = 0
    for line in text.splitlines(keepends=True):
        stripped = line.strip()
        parts = stripped.split()
        try:
            if not parts or parts[0].startswith("#"):
                pass
            elif parts[0] == "v":
                vals = [float(p) for p in parts[1:]]
                vertices.append(vals[:3])
                if len(vals) >= 6:
                    colors.append(vals[3:6])
            elif parts[0] == "vt":
                uvs.append([float(parts[1]), float(parts[2])])
            elif parts[0] == "f":
                idx = [int(p.split("/")[0]) - 1 for p in parts[1:]]
                for k in range(1, len(idx) - 1):
                    tris.append((idx[0], idx[k], idx[k + 1]))
        except (ValueError, IndexError):
            raise ParseError(f"malformed OBJ line: {stripped!r}", offset) from None
        offset += len(line.encode("utf-8"))
    if not vertices:
        raise EmptyMeshError("OBJ file contains no vertices")
    return Mesh(
        np.array(vertices),
        np.array(tris, dtype=np.int64).reshape(-1, 3),
        np.array(colors) if len(colors) == len(vertices) and colors else None,
        np.array(uvs) if len(uvs) == len(vertices) and uvs else None,
    )


# ---------------------------------------------------------------------------
# Saving

def read_mesh_file(path) -> Mesh:
    """Load a mesh from disk, format taken from the file extension."""
    from pathlib import Path

    p = Path(path)
    return load_mesh(p.read_bytes(), p.suffix, name=p.stem)


def write_mesh_file(mesh: Mesh, path) -> None:
    """Write a mesh to disk, format taken from the file extension."""
    from pathlib import Path

    p = Path(path)
    p.write_bytes(save_mesh(mesh, p.suffix))


def save_mesh(mesh: Mesh, fmt: str) -> bytes:
    """Serialize to "ply" (archival) or "glb" (glTF 2.0 binary, viewer delivery)."""
    fmt = fmt.lower().lstrip(".")
    if fmt == "ply":
        return _save_ply(mesh)
    if fmt == "glb":
        return _save_glb(mesh)
    raise ValueError(f"unsupported output format: {fmt!r}")


def _save_ply(mesh: Mesh) -> bytes:
    lines = ["ply", "format ascii 1.0", f"element vertex {mesh.vertex_count}"]
    lines += [f"property float {a}" for a in "xyz"]
    if mesh.colors is not None:
        lines += [f"property uchar {c}" for c in ("red", "green", "blue")]
    if mesh.uvs is not None:
        lines += ["property float u", "property float v"]
    lines += [f"element face {mesh.face_count}", "property list uchar int vertex_indices", "end_header"]
    out = ["\n".join(lines)]
    for i in range(mesh.vertex_count):
        row = [f"{v:.9g}" for v in mesh.vertices[i]]
        if mesh.colors is not None:
            row += [str(int(round(c * 255))) for c in np.clip(mesh.colors[i], 0, 1)]
        if mesh.uvs is not None:
            row += [f"{v:.9g}" for v in mesh.uvs[i]]
        out.append(" ".join(row))
    for t in mesh.triangles:
        out.append("3 " + " ".join(str(int(i)) for i in t))
    return ("\n".join(out) + "\n").encode("ascii")


def _pad(buf: bytes, align: int, fill: bytes = b"\x00") -> bytes:
    rem = len(buf) % align
    return buf + fill * ((align - rem) % align) if rem else buf


def _save_glb(mesh: Mesh) -> bytes:
    positions = mesh.vertices.astype("<f4")
    indices = mesh.triangles.astype("<u4").ravel()

    bin_parts, views, accessors, attributes = [], [], [], {}
    offset = 0

    def add_view(raw: bytes, target: int) -> int:
        nonlocal offset
        raw = _pad(raw, 4)
        views.append({"buffer": 0, "byteOffset": offset, "byteLength": len(raw), "target": target})
        bin_parts.append(raw)
        offset += len(raw)
        return len(views) - 1

    v = add_view(positions.tobytes(), 34962)
    accessors.append({
        "bufferView": v, "componentType": 5126, "count": int(mesh.vertex_count),
        "type": "VEC3",
        "min": [float(x) for x in positions.min(axis=0)],
        "max": [float(x) for x in positions.max(axis=0)],
    })
    attributes["POSITION"] = 0
    if mesh.colors is not None:
        v = add_view(np.clip(mesh.colors, 0, 1).astype("<f4").tobytes(), 34962)
        accessors.append({"bufferView": v, "componentType": 5126, "count": int(mesh.vertex_count), "type": "VEC3"})
        attributes["COLOR_0"] = len(accessors) - 1
    if mesh.uvs is not None:
        v = add_view(mesh.uvs.astype("<f4").tobytes(), 34962)
        accessors.append({"bufferView": v, "componentType": 5126, "count": int(mesh.vertex_count), "type": "VEC2"})
        attributes["TEXCOORD_0"] = len(accessors) - 1
    v = add_view(indices.tobytes(), 34963)
    accessors.append({"bufferView": v, "componentType": 5125, "count": int(indices.size), "type": "SCALAR"})

    gltf = {
        "asset": {"version": "2.0", "generator": "museumkit"},
        "scene": 0,
        "scenes": [{"nodes": [0]}],
        "nodes": [{"mesh": 0, "name": mesh.name or "mesh"}],
        "meshes": [{"primitives": [{"attributes": attributes, "indices": len(accessors) - 1, "mode": 4}]}],
        "buffers": [{"byteLength": offset}],
        "bufferViews": views,
        "accessors": accessors,
    }
    json_chunk = _pad(json.dumps(gltf, separators=(",", ":")).encode("utf-8"), 4, b" ")
    bin_chunk = _pad(b"".join(bin_parts), 4)
    total = 12 + 8 + len(json_chunk) + 8 + len(bin_chunk)
    return b"".join([
        struct.pack("<4sII", b"glTF", 2, total),
        struct.pack("<I4s", len(json_chunk), b"JSON"), json_chunk,
        struct.pack("<I4s", len(bin_chunk), b"BIN\x00"), bin_chunk,
    ])


# ---------------------------------------------------------------------------
# Statistics

def boundary_edges(triangles: np.ndarray) -> list[tuple[int, int]]:
    """Edges with exactly one incident face."""
    counts: dict[tuple[int, int], int] = {}
    for a, b, c in triangles:
        for u, vtx in ((a, b), (b, c), (c, a)):
            key = (min(u, vtx), max(u, vtx))
            counts[key] = counts.get(key, 0) + 1
    return [e for e, n in counts.items() if n == 1]


def _count_loops(edges: list[tuple[int, int]]) -> int:
    if not edges:
        return 0
    adj: dict[int, set[int]] = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    seen: set[int] = set()
    loops = 0
    for start in adj:
        if start in seen:
            continue
        loops += 1
        stack = [start]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(adj[v] - seen)
    return loops


def mesh_stats(mesh: Mesh) -> MeshStats:
    mesh.validate()
    bmin = mesh.vertices.min(axis=0)
    bmax = mesh.vertices.max(axis=0)
    return MeshStats(
        face_count=mesh.face_count,
        vertex_count=mesh.vertex_count,
        bbox_min=bmin,
        bbox_max=bmax,
        boundary_loop_count=_count_loops(boundary_edges(mesh.triangles)),
        max_extent=float((bmax - bmin).max()),
    )
