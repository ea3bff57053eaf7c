"""Triangle-mesh export of voxelized geometries (binary STL and text OBJ).

One quad per exposed voxel face, split along the (v0, v2) diagonal; no
face merging, so triangle count is exactly twice the exposed-face count.
Faces are emitted in a fixed (z, y, x, then +x/-x/+y/-y/+z/-z) order and
vertex coordinates are the voxel corner integers divided by 3^n, rounded
to float32 once, so identical runs produce byte-identical files and
coincident corners are bit-identical.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .voxel import VoxelGrid

#: Face directions in emission order; normals point from solid into coolant.
_NORMALS = np.array(
    [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]],
    dtype=np.float32,
)

# Quad corners as (dx, dy, dz) offsets from the voxel origin, wound
# counter-clockwise when viewed from the normal side.
_CORNERS = np.array(
    [
        [[1, 0, 0], [1, 1, 0], [1, 1, 1], [1, 0, 1]],  # +x
        [[0, 0, 0], [0, 0, 1], [0, 1, 1], [0, 1, 0]],  # -x
        [[0, 1, 0], [0, 1, 1], [1, 1, 1], [1, 1, 0]],  # +y
        [[0, 0, 0], [1, 0, 0], [1, 0, 1], [0, 0, 1]],  # -y
        [[0, 0, 1], [1, 0, 1], [1, 1, 1], [0, 1, 1]],  # +z
        [[0, 0, 0], [0, 1, 0], [1, 1, 0], [1, 0, 0]],  # -z
    ],
    dtype=np.int64,
)


@dataclass
class MeshBuffer:
    """Axis-aligned triangle soup: ``triangles`` is (T, 3, 3) float32 vertex
    coordinates in [0, 1], ``normals`` is (T, 3) float32 unit vectors."""

    triangles: np.ndarray
    normals: np.ndarray

    @property
    def triangle_count(self) -> int:
        return len(self.triangles)


def _exposed_masks(cur, prev, nxt):
    res = cur.shape[0]
    masks = np.zeros((res, res, 6), dtype=bool)
    nb = np.zeros_like(cur)
    nb[:, :-1] = cur[:, 1:]
    masks[:, :, 0] = cur & ~nb  # +x
    nb[:] = False
    nb[:, 1:] = cur[:, :-1]
    masks[:, :, 1] = cur & ~nb  # -x
    nb[:] = False
    nb[:-1, :] = cur[1:, :]
    masks[:, :, 2] = cur & ~nb  # +y
    nb[:] = False
    nb[1:, :] = cur[:-1, :]
    masks[:, :, 3] = cur & ~nb  # -y
    masks[:, :, 4] = cur if nxt is None else cur & ~nxt  # +z
    masks[:, :, 5] = cur if prev is None else cur & ~prev  # -z
    return masks


def mesh_from_grid(g: VoxelGrid) -> MeshBuffer:
    """Two oriented triangles per exposed voxel face, deterministic order."""
    res = g.resolution
    scale = 1.0 / res
    tri_chunks = []
    normal_chunks = []
    prev = None
    cur = g.slab(0)
    for z in range(res):
        nxt = g.slab(z + 1) if z + 1 < res else None
        records = np.argwhere(_exposed_masks(cur, prev, nxt))  # (K, 3): y, x, d
        if len(records):
            k = len(records)
            base = np.empty((k, 3), dtype=np.int64)
            base[:, 0] = records[:, 1]  # x
            base[:, 1] = records[:, 0]  # y
            base[:, 2] = z
            quads = np.empty((k, 4, 3), dtype=np.float32)
            dirs = records[:, 2]
            for d in range(6):
                sel = dirs == d
                if sel.any():
                    corners = base[sel, None, :] + _CORNERS[d][None, :, :]
                    quads[sel] = (corners * scale).astype(np.float32)
            tris = np.empty((k, 2, 3, 3), dtype=np.float32)
            tris[:, 0, 0] = quads[:, 0]
            tris[:, 0, 1] = quads[:, 1]
            tris[:, 0, 2] = quads[:, 2]
            tris[:, 1, 0] = quads[:, 0]
            tris[:, 1, 1] = quads[:, 2]
            tris[:, 1, 2] = quads[:, 3]
            tri_chunks.append(tris.reshape(-1, 3, 3))
            normal_chunks.append(np.repeat(_NORMALS[dirs], 2, axis=0))
        prev, cur = cur, nxt
    if not tri_chunks:
        return MeshBuffer(
            triangles=np.zeros((0, 3, 3), dtype=np.float32),
            normals=np.zeros((0, 3), dtype=np.float32),
        )
    return MeshBuffer(
        triangles=np.concatenate(tri_chunks),
        normals=np.concatenate(normal_chunks),
    )


_STL_RECORD = np.dtype([("normal", "<f4", (3,)), ("verts", "<f4", (3, 3)), ("attr", "<u2")])
assert _STL_RECORD.itemsize == 50


def write_stl_binary(m: MeshBuffer, sink) -> int:
    """Little-endian binary STL; returns the byte count (84 + 50 per triangle)."""
    count = m.triangle_count
    header = b"spongeheat axis-aligned voxel surface".ljust(80, b"\0")
    records = np.zeros(count, dtype=_STL_RECORD)
    records["normal"] = m.normals
    records["verts"] = m.triangles
    payload = header + struct.pack("<I", count) + records.tobytes()
    sink.write(payload)
    return len(payload)


def write_obj(m: MeshBuffer, sink) -> int:
    """Text OBJ with vertices deduplicated by bit-identical coordinates and
    1-based face indices; LF endings.  Returns the byte count."""
    index: dict[bytes, int] = {}
    vertex_lines: list[str] = []
    face_lines: list[str] = []
    for tri in m.triangles:
        ids = []
        for vertex in tri:
            key = vertex.tobytes()
            i = index.get(key)
            if i is None:
                i = len(index) + 1
                index[key] = i
                vertex_lines.append(
                    "v " + " ".join(f"{float(c):.9g}" for c in vertex)
                )
            ids.append(i)
        face_lines.append("f {} {} {}".format(*ids))
    payload = "".join(line + "\n" for line in vertex_lines + face_lines).encode("utf-8")
    sink.write(payload)
    return len(payload)
