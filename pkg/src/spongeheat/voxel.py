"""Brute-force voxel oracle for volumes and surfaces.

Both geometries are unions of lattice-aligned boxes at resolution 3^n, so
voxelizing them on a 3^n x 3^n x 3^n grid is EXACT, not approximate: the
measured volume and surface must equal the closed forms in
:mod:`spongeheat.metrics` with plain rational equality.  That check is the
central anti-regression property of the package.

Occupancy is stored bit-packed per z-slab (one padded byte row per slab,
~48 MB at n = 6 instead of ~390 MB unpacked).  Conceptually the grid is a
flat bit array with x-fastest linear indexing
``index = x + resolution * (y + resolution * z)``.  Grids are built slab by
slab, never mutated afterwards, and all measurements are read-only.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .metrics import ModelKind, check_iteration

#: Largest iteration order the oracle accepts by default (729^3 cells).
DEFAULT_ORACLE_CAP = 6


class OracleCapError(ValueError):
    """Iteration order outside the voxel oracle's cap (distinct from the
    closed-form cap in metrics)."""


class CoordinateOutOfRangeError(ValueError):
    """Voxel coordinate outside [0, 3^n)."""


def _check_coord(x: int, y: int, z: int, res: int) -> None:
    if not (0 <= x < res and 0 <= y < res and 0 <= z < res):
        raise CoordinateOutOfRangeError(f"coordinate ({x}, {y}, {z}) outside [0, {res})^3")


def is_solid_menger(x: int, y: int, z: int, n: int) -> bool:
    """Base-3 digit membership test for the level-n sponge.

    A cell survives iff at no digit position do at least two of the three
    coordinates have digit 1 (those are the removed center tunnels).
    """
    n = check_iteration(n)
    _check_coord(x, y, z, 3**n)
    for _ in range(n):
        if (x % 3 == 1) + (y % 3 == 1) + (z % 3 == 1) >= 2:
            return False
        x //= 3
        y //= 3
        z //= 3
    return True


def is_solid_slices(x: int, y: int, z: int, n: int) -> bool:
    """Slice-model membership: plates occupy the even z layers.

    Layers z = 0, 2, ..., 3^n - 1 are solid; since 3^n - 1 is even both the
    bottom and the top layer are plates, giving floor(3^n/2) + 1 plates.
    """
    n = check_iteration(n)
    _check_coord(x, y, z, 3**n)
    return z % 2 == 0


@dataclass
class VoxelGrid:
    """Immutable-by-convention occupancy grid of one model at order n.

    ``packed`` holds one bit-packed row of 3^n * 3^n cells per z-slab
    (row-major within the slab: bit index = x + resolution * y).
    """

    kind: ModelKind
    n: int
    resolution: int
    packed: np.ndarray  # uint8, shape (resolution, ceil(resolution^2 / 8))
    solid_count: int

    @property
    def voxel_edge(self) -> Fraction:
        return Fraction(1, self.resolution)

    def slab(self, z: int) -> np.ndarray:
        """Unpack slab z as a bool array of shape (resolution, resolution),
        indexed [y, x]."""
        res = self.resolution
        bits = np.unpackbits(self.packed[z], count=res * res)
        return bits.reshape(res, res).astype(bool)

    def is_solid(self, x: int, y: int, z: int) -> bool:
        _check_coord(x, y, z, self.resolution)
        bit = x + self.resolution * y
        byte = self.packed[z, bit >> 3]
        return bool((byte >> (7 - (bit & 7))) & 1)


def _digit_one_masks(res: int, n: int) -> np.ndarray:
    """For each v in [0, res): an int whose bit k is set iff base-3 digit k
    of v equals 1."""
    v = np.arange(res, dtype=np.int64)
    masks = np.zeros(res, dtype=np.int64)
    for k in range(n):
        masks |= (((v // 3**k) % 3 == 1).astype(np.int64)) << k
    return masks


def _menger_slab(masks: np.ndarray, z: int) -> np.ndarray:
    # solid iff no digit position has >= 2 of the three digits equal to 1
    mx = masks[None, :]
    my = masks[:, None]
    mz = masks[z]
    return ((mx & my) | (mx & mz) | (my & mz)) == 0


def build_grid(kind: ModelKind, n: int, cap: int = DEFAULT_ORACLE_CAP) -> VoxelGrid:
    """Voxelize one model at iteration order n (n <= cap).

    Deterministic: the occupancy is a pure function of (kind, n), whatever
    the internal slab partitioning.
    """
    try:
        n = check_iteration(n, cap=cap)
    except ValueError as exc:
        raise OracleCapError(str(exc)) from None
    res = 3**n
    slab_bytes = (res * res + 7) // 8
    packed = np.zeros((res, slab_bytes), dtype=np.uint8)
    solid_count = 0
    masks = _digit_one_masks(res, n) if kind is ModelKind.MENGER_SPONGE else None
    for z in range(res):
        if kind is ModelKind.MENGER_SPONGE:
            slab = _menger_slab(masks, z)
        else:
            slab = np.full((res, res), z % 2 == 0, dtype=bool)
        solid_count += int(np.count_nonzero(slab))
        packed[z] = np.packbits(slab.reshape(-1))
    return VoxelGrid(kind=kind, n=n, resolution=res, packed=packed, solid_count=solid_count)


def measure_volume(g: VoxelGrid) -> Fraction:
    """Solid-cell count times the voxel volume, as an exact rational."""
    return g.solid_count * g.voxel_edge**3


def count_exposed_faces(g: VoxelGrid) -> int:
    """Number of unit voxel faces belonging to exactly one solid voxel.

    Faces on the lattice boundary count as exposed: the wrapping container
    outside the unit cube is coolant.  Computed as
    6 * solids - 2 * (solid-solid adjacent pairs), one z-slab pass.
    """
    res = g.resolution
    pairs = 0
    prev = None
    for z in range(res):
        cur = g.slab(z)
        pairs += int(np.count_nonzero(cur[:, 1:] & cur[:, :-1]))  # x-neighbors
        pairs += int(np.count_nonzero(cur[1:, :] & cur[:-1, :]))  # y-neighbors
        if prev is not None:
            pairs += int(np.count_nonzero(cur & prev))  # z-neighbors
        prev = cur
    return 6 * g.solid_count - 2 * pairs


def measure_surface(g: VoxelGrid) -> Fraction:
    """Exposed-face count times the voxel face area, as an exact rational."""
    return count_exposed_faces(g) * g.voxel_edge**2
