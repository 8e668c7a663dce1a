"""Colored voxel assemblies on an integer lattice.

Coordinates are ``(x, y, z)`` with x growing east, y growing north and
z growing up. A :class:`VoxelSet` is normalized so the minimum corner of its
bounding box sits at the origin, and must be face-connected.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

Coord = tuple[int, int, int]

_NEIGHBOR_OFFSETS: tuple[Coord, ...] = (
    (1, 0, 0),
    (-1, 0, 0),
    (0, 1, 0),
    (0, -1, 0),
    (0, 0, 1),
    (0, 0, -1),
)


@dataclass(frozen=True)
class VoxelSet:
    """Face-connected set of unit cubes, each carrying a color name."""

    cells: tuple[tuple[Coord, str], ...]

    def __post_init__(self) -> None:
        coords = [c for c, _ in self.cells]
        if len(set(coords)) != len(coords):
            raise ValueError("duplicate voxel coordinates")
        if not coords:
            raise ValueError("a voxel set must contain at least one cell")
        mins = tuple(min(c[i] for c in coords) for i in range(3))
        if mins != (0, 0, 0):
            raise ValueError("voxel set is not normalized to the origin")
        if not _connected(set(coords)):
            raise ValueError("voxel set is not face-connected")

    @staticmethod
    def from_cells(cells: dict[Coord, str]) -> "VoxelSet":
        """Build a normalized set from an arbitrary coordinate mapping."""
        if not cells:
            raise ValueError("a voxel set must contain at least one cell")
        mins = tuple(min(c[i] for c in cells) for i in range(3))
        shifted = {
            (c[0] - mins[0], c[1] - mins[1], c[2] - mins[2]): color
            for c, color in cells.items()
        }
        return VoxelSet(tuple(sorted(shifted.items())))

    def as_dict(self) -> dict[Coord, str]:
        return dict(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    @property
    def bounding_box(self) -> tuple[int, int, int]:
        """Extent (nx, ny, nz) of the normalized bounding box."""
        coords = [c for c, _ in self.cells]
        return tuple(max(c[i] for c in coords) + 1 for i in range(3))  # type: ignore[return-value]

    def colors(self) -> set[str]:
        return {color for _, color in self.cells}

    def translated(self, dx: int, dy: int, dz: int) -> dict[Coord, str]:
        """Un-normalized translated copy, for projection-invariance checks."""
        return {(x + dx, y + dy, z + dz): col for (x, y, z), col in self.cells}

    def rotated(self, axis: str, clockwise: bool = True) -> "VoxelSet":
        """Quarter turn of the whole assembly about a world axis, renormalized.

        ``clockwise`` is judged looking down the positive axis toward the
        origin.
        """
        rot = _ROTATIONS[(axis, clockwise)]
        return VoxelSet.from_cells({rot(c): col for c, col in self.cells})


def _connected(coords: set[Coord]) -> bool:
    start = next(iter(coords))
    seen = {start}
    queue = deque([start])
    while queue:
        x, y, z = queue.popleft()
        for dx, dy, dz in _NEIGHBOR_OFFSETS:
            nxt = (x + dx, y + dy, z + dz)
            if nxt in coords and nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return len(seen) == len(coords)


_ROTATIONS = {
    ("x", True): lambda c: (c[0], c[2], -c[1]),
    ("x", False): lambda c: (c[0], -c[2], c[1]),
    ("y", True): lambda c: (-c[2], c[1], c[0]),
    ("y", False): lambda c: (c[2], c[1], -c[0]),
    ("z", True): lambda c: (c[1], -c[0], c[2]),
    ("z", False): lambda c: (-c[1], c[0], c[2]),
}
