"""Mental rotation: colored polycube assemblies, eight corner views, and a
uniqueness filter guaranteeing the queried orthographic view is recoverable.

An instance shows the eight isometric renders of an assembly and asks for
one orthographic view. Grading is exact-match on the answer grid, so every
emitted instance must be *view-unique*: all voxel assemblies consistent
with the eight images (inside the bounding box, face-connected, colored
from the palette) must share the queried view. Assemblies where a hidden
voxel could change the answer are rejected.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from spatialbench.core.palette import PALETTE
from spatialbench.core.projection import (
    ColorGrid,
    ProjectedFace,
    Triangle,
    Viewpoint,
    corner_signs,
    face_triangles,
    isometric_project,
    orthographic_from_cells,
    orthographic_project,
    to_canonical,
    triangle_color_map,
    ORTHO_AXES,
)
from spatialbench.core.svg import render_isometric_view
from spatialbench.core.voxel import Coord, VoxelSet
from spatialbench.errors import GenerationBudgetExceeded

TIER_CUBES: dict[str, tuple[int, int]] = {
    "easy": (4, 6),
    "medium": (7, 9),
    "hard": (10, 13),
}

UNIQUE = "unique"
AMBIGUOUS = "ambiguous"
TIMEOUT = "timeout"


def generate_assembly(seed: int, n_cubes: int, palette: tuple[str, ...] = PALETTE) -> VoxelSet:
    """Face-connected polycube grown by uniform random accretion."""
    if not 1 <= n_cubes <= 64:
        raise ValueError("n_cubes out of range")
    rng = random.Random(seed)
    cells: dict[Coord, str] = {(0, 0, 0): rng.choice(palette)}
    while len(cells) < n_cubes:
        frontier = sorted(
            {
                (x + dx, y + dy, z + dz)
                for (x, y, z) in cells
                for dx, dy, dz in (
                    (1, 0, 0),
                    (-1, 0, 0),
                    (0, 1, 0),
                    (0, -1, 0),
                    (0, 0, 1),
                    (0, 0, -1),
                )
            }
            - set(cells)
        )
        cells[frontier[rng.randrange(len(frontier))]] = rng.choice(palette)
    return VoxelSet.from_cells(cells)


def render_views(assembly: VoxelSet, scale: float = 36.0) -> list[str]:
    """Eight corner views as SVG documents, index = corner number."""
    return [
        render_isometric_view(assembly, Viewpoint.isometric(i), f"view {i}", scale=scale)
        for i in range(8)
    ]


# -- uniqueness check ---------------------------------------------------------


def _view_bbox(views: list[tuple[ProjectedFace, ...]]) -> tuple[int, int, int]:
    coords = [f.voxel for view in views for f in view]
    return tuple(max(c[i] for c in coords) + 1 for i in range(3))  # type: ignore[return-value]


@dataclass
class _CornerData:
    image: dict[Triangle, str]
    # triangle -> candidate cells (nearest first) able to show at it
    candidates: dict[Triangle, list[Coord]]
    # cell -> triangles it participates in
    memberships: dict[Coord, list[Triangle]]


def _corner_data(
    view: tuple[ProjectedFace, ...], corner: int, bbox: tuple[int, int, int]
) -> _CornerData:
    viewpoint = Viewpoint.isometric(corner)
    image = triangle_color_map(view, viewpoint)
    signs = corner_signs(corner)

    by_triangle: dict[Triangle, list[tuple[int, Coord]]] = {}
    memberships: dict[Coord, list[Triangle]] = {}
    for x in range(bbox[0]):
        for y in range(bbox[1]):
            for z in range(bbox[2]):
                cell = (x, y, z)
                canon = to_canonical(cell, signs)
                depth = sum(canon)
                tris: list[Triangle] = []
                for face_axis in range(3):
                    tris.extend(face_triangles(canon, face_axis))
                for tri in tris:
                    by_triangle.setdefault(tri, []).append((depth, cell))
                memberships[cell] = tris
    candidates = {
        tri: [cell for _, cell in sorted(pairs, key=lambda p: (-p[0], p[1]))]
        for tri, pairs in by_triangle.items()
    }
    return _CornerData(image=image, candidates=candidates, memberships=memberships)


def _query_grid(
    occupied: dict[Coord, str | None], axis: str
) -> tuple[ColorGrid | None, bool]:
    """(grid, wildcard_visible): the orthographic view of a candidate.

    ``occupied`` maps cells to a pinned color or None for hidden cells whose
    color is unconstrained; if such a cell is visible in the view, the
    answer is not determined and the grid is meaningless.
    """
    cells = {c: (col if col is not None else "?") for c, col in occupied.items()}
    grid = orthographic_from_cells(cells, axis)
    wildcard = any(c == "?" for row in grid.cells for c in row)
    if wildcard:
        return None, True
    return grid, False


def uniqueness_check(
    views: list[tuple[ProjectedFace, ...]],
    query_view: Viewpoint,
    node_budget: int = 250_000,
    extra_ortho: list[tuple[str, ColorGrid]] | None = None,
) -> str:
    """Search every assembly consistent with the eight corner views.

    Returns ``unique`` when all consistent assemblies produce the same
    query-view grid, ``ambiguous`` otherwise, ``timeout`` if the node budget
    runs out first. Consistent assemblies are face-connected subsets of the
    bounding box (colors from the visible constraints; cells hidden in all
    views count as wildcards).
    """
    if len(views) != 8:
        raise ValueError("uniqueness check needs all eight corner views")
    if query_view.kind != "orthographic":
        raise ValueError("query view must be orthographic")
    bbox = _view_bbox(views)
    corners = [_corner_data(views[i], i, bbox) for i in range(8)]

    all_cells = sorted(
        (x, y, z) for x in range(bbox[0]) for y in range(bbox[1]) for z in range(bbox[2])
    )

    # Background rays force emptiness: if any face of a cell covers a
    # triangle that shows no color, an occupied cell there would be visible.
    forced_empty: set[Coord] = set()
    for data in corners:
        for cell, tris in data.memberships.items():
            if any(tri not in data.image for tri in tris):
                forced_empty.add(cell)

    # Colored triangles whose candidate list (minus forced-empty) is a
    # singleton force that cell occupied with that color.
    pinned: dict[Coord, str] = {}
    forced_occupied: set[Coord] = set()
    for data in corners:
        for tri, color in data.image.items():
            live = [c for c in data.candidates.get(tri, []) if c not in forced_empty]
            if not live:
                return AMBIGUOUS  # inconsistent views; defensive
            if len(live) == 1:
                cell = live[0]
                if pinned.get(cell, color) != color:
                    return AMBIGUOUS
                pinned[cell] = color
                forced_occupied.add(cell)

    free_cells = [
        c for c in all_cells if c not in forced_empty and c not in forced_occupied
    ]

    status = {c: "empty" for c in forced_empty}
    status.update({c: "occupied" for c in forced_occupied})

    grids: set[tuple] = set()
    nodes = 0
    budget_hit = False
    ambiguous = False

    def triangles_ok(cell: Coord) -> bool:
        """Re-check triangles touching ``cell`` against partial assignment."""
        for data in corners:
            for tri in data.memberships[cell]:
                color = data.image.get(tri)
                if color is None:
                    continue  # background handled via forced_empty
                visible: Coord | None = None
                undecided = False
                for cand in data.candidates[tri]:
                    st = status.get(cand)
                    if st is None:
                        undecided = True
                        break
                    if st == "occupied":
                        visible = cand
                        break
                if undecided:
                    continue
                if visible is None:
                    return False
                prev = pinned.get(visible)
                if prev is not None and prev != color:
                    return False
                if prev is None:
                    pinned[visible] = color
                    pin_trail.append(visible)
        return True

    def at_leaf() -> None:
        nonlocal ambiguous
        occupied_cells = {c for c, st in status.items() if st == "occupied"}
        if not occupied_cells or not _face_connected(occupied_cells):
            return
        colored: dict[Coord, str | None] = {
            c: pinned.get(c) for c in occupied_cells
        }
        if extra_ortho:
            # An additional orthographic constraint can reject the candidate
            # or pin an otherwise wildcard color.
            markers = {f"?{i}": cell for i, cell in enumerate(sorted(occupied_cells))}
            cell_marker = {cell: m for m, cell in markers.items()}
            for axis, grid in extra_ortho:
                probe = {
                    c: (col if col is not None else cell_marker[c])
                    for c, col in colored.items()
                }
                got = orthographic_from_cells(probe, axis)
                if (got.rows, got.cols) != (grid.rows, grid.cols):
                    return
                for r in range(grid.rows):
                    for c_ in range(grid.cols):
                        want = grid.cells[r][c_]
                        have = got.cells[r][c_]
                        if have is None or want is None:
                            if have is not None or want is not None:
                                return
                            continue
                        if have.startswith("?"):
                            cell = markers[have]
                            if colored[cell] is not None and colored[cell] != want:
                                return
                            colored[cell] = want
                        elif have != want:
                            return
        grid, wildcard = _query_grid(colored, query_view.axis or "")
        if wildcard:
            ambiguous = True
            return
        assert grid is not None
        grids.add(grid.cells)
        if len(grids) > 1:
            ambiguous = True

    pin_trail: list[Coord] = []

    def dfs(i: int) -> None:
        nonlocal nodes, budget_hit
        if ambiguous or budget_hit:
            return
        nodes += 1
        if nodes > node_budget:
            budget_hit = True
            return
        if i == len(free_cells):
            at_leaf()
            return
        cell = free_cells[i]
        for choice in ("empty", "occupied"):
            status[cell] = choice
            mark = len(pin_trail)
            if triangles_ok(cell):
                dfs(i + 1)
            while len(pin_trail) > mark:
                del pinned[pin_trail.pop()]
            del status[cell]
            if ambiguous or budget_hit:
                return

    # The forced-occupied cells also need their triangle constraints applied.
    ok = True
    for cell in sorted(forced_occupied):
        if not triangles_ok(cell):
            ok = False
            break
    if ok:
        dfs(0)

    if budget_hit:
        return TIMEOUT
    if ambiguous:
        return AMBIGUOUS
    return UNIQUE if grids else AMBIGUOUS


def _face_connected(cells: set[Coord]) -> bool:
    start = next(iter(cells))
    seen = {start}
    stack = [start]
    while stack:
        x, y, z = stack.pop()
        for dx, dy, dz in ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)):
            nxt = (x + dx, y + dy, z + dz)
            if nxt in cells and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == len(cells)


# -- instance construction ------------------------------------------------------


@dataclass(frozen=True)
class MentalRotationInstance:
    assembly: VoxelSet
    query_axis: str
    answer: ColorGrid
    tier: str
    n_cubes: int
    seed: int


def generate_instance(
    seed: int,
    tier: str,
    palette: tuple[str, ...] = PALETTE,
    max_attempts: int = 60,
    node_budget: int = 250_000,
) -> MentalRotationInstance:
    lo, hi = TIER_CUBES[tier]
    rng = random.Random(seed)
    for attempt in range(max_attempts):
        n = rng.randint(lo, hi)
        assembly = generate_assembly(rng.randrange(2**32), n, palette)
        views = [isometric_project(assembly, Viewpoint.isometric(i)) for i in range(8)]
        axis = ORTHO_AXES[rng.randrange(6)]
        verdict = uniqueness_check(list(views), Viewpoint.orthographic(axis), node_budget)
        if verdict != UNIQUE:
            continue
        answer = orthographic_project(assembly, Viewpoint.orthographic(axis))
        return MentalRotationInstance(
            assembly=assembly,
            query_axis=axis,
            answer=answer,
            tier=tier,
            n_cubes=n,
            seed=seed,
        )
    raise GenerationBudgetExceeded(f"no unique mental-rotation instance for tier {tier!r}")


def assembly_text(assembly: VoxelSet) -> str:
    """Stable one-line-per-voxel description used in fingerprints and data."""
    return "\n".join(f"{x},{y},{z}:{color}" for (x, y, z), color in assembly.cells)
