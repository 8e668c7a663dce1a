"""Parallel projections of voxel sets: orthographic views and corner views.

Orthographic conventions (x east, y north, z up; viewer always upright, i.e.
world-up is the top of the image except for the two vertical views, where
north is the top):

========  =================  ===========  ===========  ==============
axis      viewer position    rows (top)   cols (left)  nearest voxel
========  =================  ===========  ===========  ==============
``+x``    east, looking W    max z        min y        max x
``-x``    west, looking E    max z        max y        min x
``+y``    north, looking S   max z        max x        max y
``-y``    south, looking N   max z        min x        min y
``+z``    above, looking D   max y        min x        max z
``-z``    below, looking U   max y        max x        min z
========  =================  ===========  ===========  ==============

Corner (isometric) views use the classic 2:1 dimetric basis. Corner ``i`` in
0..7 places the camera in the octant with signs ``(sx, sy, sz)`` where bit 0
gives +x, bit 1 +y and bit 2 +z. World cells are mapped into a canonical
all-positive octant, in which the camera direction is (1, 1, 1); a cell's
projected lattice coordinates are ``U = a - b`` and ``V = a + b - 2c``
(screen x is proportional to U, screen y to V, y growing downward). Every
cube face projects onto exactly two triangles of the resulting triangular
lattice, which gives an exact, integer-only occlusion model: a voxel at
canonical ``(a, b, c)`` is nearer to the camera than another iff its depth
``a + b + c`` is larger, and same-depth voxels can never overlap on screen.
"""

from __future__ import annotations

from dataclasses import dataclass

from spatialbench.core.voxel import Coord, VoxelSet

ORTHO_AXES: tuple[str, ...] = ("+x", "-x", "+y", "-y", "+z", "-z")

# axis -> (depth index, depth max?, row index, row0 at max?, col index, col0 at max?)
_ORTHO_FRAME: dict[str, tuple[int, bool, int, bool, int, bool]] = {
    "+x": (0, True, 2, True, 1, False),
    "-x": (0, False, 2, True, 1, True),
    "+y": (1, True, 2, True, 0, True),
    "-y": (1, False, 2, True, 0, False),
    "+z": (2, True, 1, True, 0, False),
    "-z": (2, False, 1, True, 0, True),
}


@dataclass(frozen=True)
class Viewpoint:
    """Either one of 8 isometric corners or one of 6 orthographic axes."""

    kind: str  # "isometric" | "orthographic"
    corner: int | None = None
    axis: str | None = None

    def __post_init__(self) -> None:
        if self.kind == "isometric":
            if self.corner is None or not 0 <= self.corner < 8 or self.axis is not None:
                raise ValueError("isometric viewpoint needs a corner index in 0..7")
        elif self.kind == "orthographic":
            if self.axis not in ORTHO_AXES or self.corner is not None:
                raise ValueError(f"orthographic viewpoint needs an axis in {ORTHO_AXES}")
        else:
            raise ValueError(f"unknown viewpoint kind: {self.kind!r}")

    @staticmethod
    def isometric(corner: int) -> "Viewpoint":
        return Viewpoint(kind="isometric", corner=corner)

    @staticmethod
    def orthographic(axis: str) -> "Viewpoint":
        return Viewpoint(kind="orthographic", axis=axis)


@dataclass(frozen=True)
class ColorGrid:
    """Rows x cols of color names; ``None`` marks empty cells."""

    cells: tuple[tuple[str | None, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.cells)

    @property
    def cols(self) -> int:
        return len(self.cells[0]) if self.cells else 0

    def to_lines(self) -> list[str]:
        return [" ".join(c if c is not None else "empty" for c in row) for row in self.cells]

    @staticmethod
    def from_lists(rows: list[list[str | None]]) -> "ColorGrid":
        return ColorGrid(tuple(tuple(row) for row in rows))


def orthographic_project(voxels: VoxelSet, view: Viewpoint) -> ColorGrid:
    """Project along an axis; the nearest voxel wins each grid cell."""
    if view.kind != "orthographic":
        raise ValueError("orthographic_project requires an orthographic viewpoint")
    return _orthographic_from_cells(voxels.as_dict(), view.axis or "")


def orthographic_from_cells(cells: dict[Coord, str], axis: str) -> ColorGrid:
    """Project raw (possibly un-normalized) colored cells along an axis."""
    return _orthographic_from_cells(cells, axis)


def _orthographic_from_cells(cells: dict[Coord, str], axis: str) -> ColorGrid:
    depth_i, depth_max, row_i, row_max, col_i, col_max = _ORTHO_FRAME[axis]
    mins = tuple(min(c[i] for c in cells) for i in range(3))
    maxs = tuple(max(c[i] for c in cells) for i in range(3))
    n_rows = maxs[row_i] - mins[row_i] + 1
    n_cols = maxs[col_i] - mins[col_i] + 1

    best: dict[tuple[int, int], tuple[int, str]] = {}
    for coord, color in cells.items():
        r = (maxs[row_i] - coord[row_i]) if row_max else (coord[row_i] - mins[row_i])
        c = (maxs[col_i] - coord[col_i]) if col_max else (coord[col_i] - mins[col_i])
        depth = coord[depth_i] if depth_max else -coord[depth_i]
        prev = best.get((r, c))
        if prev is None or depth > prev[0]:
            best[(r, c)] = (depth, color)

    grid = [[best.get((r, c), (0, None))[1] if (r, c) in best else None for c in range(n_cols)] for r in range(n_rows)]
    return ColorGrid(tuple(tuple(row) for row in grid))


# --- corner views ---------------------------------------------------------

_FACE_AXES = (0, 1, 2)  # canonical +a, +b, +c

Triangle = frozenset  # frozenset of three (U, V) lattice vertices


@dataclass(frozen=True)
class ProjectedFace:
    """One visible voxel face under a corner view.

    ``polygon`` holds the four projected vertices as integer lattice pairs
    (U, V) in drawing order; ``depth`` orders faces strictly back-to-front.
    """

    voxel: Coord
    normal: Coord
    color: str
    polygon: tuple[tuple[int, int], ...]
    depth: int


def corner_signs(corner: int) -> tuple[int, int, int]:
    return (
        1 if corner & 1 else -1,
        1 if corner & 2 else -1,
        1 if corner & 4 else -1,
    )


def to_canonical(cell: Coord, signs: tuple[int, int, int]) -> Coord:
    return tuple(c if s > 0 else -1 - c for c, s in zip(cell, signs))  # type: ignore[return-value]


def _canonical_normal_to_world(face_axis: int, signs: tuple[int, int, int]) -> Coord:
    n = [0, 0, 0]
    n[face_axis] = signs[face_axis]
    return (n[0], n[1], n[2])


def face_quad(canonical: Coord, face_axis: int) -> tuple[tuple[int, int], ...]:
    """Projected lattice quad of a canonical cell's camera-facing face."""
    a, b, c = canonical
    u0, v0 = a - b, a + b - 2 * c
    if face_axis == 2:  # top
        return ((u0, v0 - 2), (u0 + 1, v0 - 1), (u0, v0), (u0 - 1, v0 - 1))
    if face_axis == 0:  # +a side
        return ((u0 + 1, v0 + 1), (u0, v0 + 2), (u0, v0), (u0 + 1, v0 - 1))
    # +b side
    return ((u0 - 1, v0 + 1), (u0, v0 + 2), (u0, v0), (u0 - 1, v0 - 1))


def face_triangles(canonical: Coord, face_axis: int) -> tuple[Triangle, Triangle]:
    """The two lattice triangles a face's quad covers."""
    a, b, c = canonical
    u0, v0 = a - b, a + b - 2 * c
    center = (u0, v0)
    if face_axis == 2:
        far = (u0, v0 - 2)
        return (
            frozenset((center, far, (u0 - 1, v0 - 1))),
            frozenset((center, far, (u0 + 1, v0 - 1))),
        )
    if face_axis == 0:
        mid = (u0 + 1, v0 + 1)
        return (
            frozenset((center, mid, (u0 + 1, v0 - 1))),
            frozenset((center, mid, (u0, v0 + 2))),
        )
    mid = (u0 - 1, v0 + 1)
    return (
        frozenset((center, mid, (u0 - 1, v0 - 1))),
        frozenset((center, mid, (u0, v0 + 2))),
    )


def isometric_project(voxels: VoxelSet, view: Viewpoint) -> tuple[ProjectedFace, ...]:
    """Visible faces of a voxel set from a corner, strictly back-to-front.

    A face is emitted iff it points toward the camera and no voxel sits
    directly on it; partial overlaps between emitted faces are resolved by
    painting in the returned order.
    """
    if view.kind != "isometric":
        raise ValueError("isometric_project requires an isometric viewpoint")
    signs = corner_signs(view.corner or 0)
    cells = voxels.as_dict()
    canonical = {to_canonical(coord, signs): (coord, color) for coord, color in cells.items()}

    faces: list[ProjectedFace] = []
    for canon in sorted(canonical):
        coord, color = canonical[canon]
        a, b, c = canon
        depth = a + b + c
        for face_axis in _FACE_AXES:
            neighbor = list(canon)
            neighbor[face_axis] += 1
            if tuple(neighbor) in canonical:
                continue
            faces.append(
                ProjectedFace(
                    voxel=coord,
                    normal=_canonical_normal_to_world(face_axis, signs),
                    color=color,
                    polygon=face_quad(canon, face_axis),
                    depth=depth,
                )
            )
    faces.sort(key=lambda f: (f.depth, f.voxel, f.normal))
    return tuple(faces)


def triangle_color_map(
    faces: tuple[ProjectedFace, ...], view: Viewpoint
) -> dict[Triangle, str]:
    """Final per-triangle colors of a corner view after painter overdraw."""
    signs = corner_signs(view.corner or 0)
    image: dict[Triangle, str] = {}
    for face in sorted(faces, key=lambda f: (f.depth, f.voxel, f.normal)):
        canon = to_canonical(face.voxel, signs)
        axis = next(i for i in range(3) if face.normal[i] != 0)
        for tri in face_triangles(canon, axis):
            image[tri] = face.color
    return image
