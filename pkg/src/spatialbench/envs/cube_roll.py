"""Cube rolling: a colored cube tips across a grid along a self-avoiding path.

The board is a ``size`` x ``size`` grid of cells addressed ``(row, col)``
with row 0 on the northern edge. Difficulty is controlled by the turn ratio
of the path (tortuosity) and its length.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from spatialbench.core.directions import CardinalDirection, Face
from spatialbench.core.orientation import Orientation
from spatialbench.core.palette import PALETTE
from spatialbench.errors import GenerationBudgetExceeded, OutOfBounds, PathTooShort

DEFAULT_BOARD_SIZE = 8

# The six cube colors are a fixed set (like a physical die); instances only
# shuffle which face carries which color. A fixed answer space keeps the
# most-frequent-label baseline at or above the 1/6 uniform-guess baseline.
CUBE_COLORS: tuple[str, ...] = PALETTE[:6]

Cell = tuple[int, int]


@dataclass(frozen=True)
class TierBand:
    min_len: int
    max_len: int
    min_tortuosity: float
    max_tortuosity: float


# Length and turn-ratio bands per difficulty tier. Bands are configurable;
# these defaults keep instances visually unambiguous on an 8x8 board.
TIER_BANDS: dict[str, TierBand] = {
    "easy": TierBand(4, 8, 0.0, 0.34),
    "medium": TierBand(8, 14, 0.34, 0.67),
    "hard": TierBand(14, 24, 0.5, 1.01),
}


@dataclass(frozen=True)
class RollingCubeState:
    """Cube pose: orientation, grid cell, and body-face coloring."""

    orientation: Orientation
    position: Cell
    coloring: tuple[str, ...]  # color of each body face, indexed by Face
    board_size: int = DEFAULT_BOARD_SIZE

    def __post_init__(self) -> None:
        if len(set(self.coloring)) != 6:
            raise ValueError("coloring must assign six distinct colors")
        r, c = self.position
        if not (0 <= r < self.board_size and 0 <= c < self.board_size):
            raise OutOfBounds(f"cell {self.position} outside {self.board_size}x{self.board_size} board")

    def color_facing(self, world: Face) -> str:
        return self.coloring[self.orientation.body_face_at(world)]


@dataclass(frozen=True)
class RollPath:
    start: Cell
    moves: tuple[CardinalDirection, ...]

    def cells(self) -> list[Cell]:
        out = [self.start]
        r, c = self.start
        for m in self.moves:
            dr, dc = m.delta
            r, c = r + dr, c + dc
            out.append((r, c))
        return out

    def is_self_avoiding(self) -> bool:
        cells = self.cells()
        return len(set(cells)) == len(cells)


def apply_roll_sequence(state: RollingCubeState, path: RollPath) -> RollingCubeState:
    if path.start != state.position:
        raise ValueError("path does not start at the cube's position")
    orientation = state.orientation
    r, c = state.position
    for m in path.moves:
        dr, dc = m.delta
        r, c = r + dr, c + dc
        if not (0 <= r < state.board_size and 0 <= c < state.board_size):
            raise OutOfBounds(f"roll {m.name} leaves the board at {(r, c)}")
        orientation = orientation.roll(m)
    return RollingCubeState(orientation, (r, c), state.coloring, state.board_size)


def tortuosity(path: RollPath) -> float:
    if len(path.moves) < 2:
        raise PathTooShort("tortuosity needs at least two moves")
    turns = sum(1 for a, b in zip(path.moves, path.moves[1:]) if a != b)
    return turns / (len(path.moves) - 1)


@dataclass(frozen=True)
class CubeRollInstance:
    state: RollingCubeState
    path: RollPath
    query: Face
    answer: str
    tier: str
    tortuosity: float
    seed: int


def _sample_path(
    rng: random.Random, band: TierBand, board_size: int
) -> RollPath | None:
    length = rng.randint(band.min_len, band.max_len)
    target_turn = rng.uniform(band.min_tortuosity, min(band.max_tortuosity, 1.0))
    start = (rng.randrange(board_size), rng.randrange(board_size))
    visited = {start}
    cell = start
    moves: list[CardinalDirection] = []
    heading: CardinalDirection | None = None
    for _ in range(length):
        options = []
        for d in CardinalDirection:
            dr, dc = d.delta
            nxt = (cell[0] + dr, cell[1] + dc)
            if 0 <= nxt[0] < board_size and 0 <= nxt[1] < board_size and nxt not in visited:
                options.append((d, nxt))
        if not options:
            return None
        straight = [o for o in options if o[0] is heading]
        turning = [o for o in options if o[0] is not heading]
        if heading is not None and straight and turning:
            pool = turning if rng.random() < target_turn else straight
        else:
            pool = options
        d, cell = pool[rng.randrange(len(pool))]
        moves.append(d)
        visited.add(cell)
        heading = d
    return RollPath(start, tuple(moves))


def generate_instance(
    seed: int,
    tier: str,
    board_size: int = DEFAULT_BOARD_SIZE,
    bands: dict[str, TierBand] | None = None,
    max_attempts: int = 2000,
) -> CubeRollInstance:
    """Deterministic instance for (seed, tier): path, coloring, query face."""
    band = (bands or TIER_BANDS)[tier]
    rng = random.Random(seed)
    for _ in range(max_attempts):
        path = _sample_path(rng, band, board_size)
        if path is None:
            continue
        t = tortuosity(path)
        if not (band.min_tortuosity <= t < band.max_tortuosity):
            continue
        coloring = tuple(rng.sample(CUBE_COLORS, 6))
        state = RollingCubeState(Orientation.identity(), path.start, coloring, board_size)
        final = apply_roll_sequence(state, path)
        query = Face(rng.randrange(6))
        return CubeRollInstance(
            state=state,
            path=path,
            query=query,
            answer=final.color_facing(query),
            tier=tier,
            tortuosity=t,
            seed=seed,
        )
    raise GenerationBudgetExceeded(f"no conforming path for tier {tier!r} within {max_attempts} attempts")


def reverse_path(path: RollPath, board_size: int = DEFAULT_BOARD_SIZE) -> RollPath:
    """Path that walks the moves backward from the end cell."""
    cells = path.cells()
    moves = tuple(m.opposite for m in reversed(path.moves))
    return RollPath(cells[-1], moves)
