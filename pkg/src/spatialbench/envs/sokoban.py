"""Box-pushing grid world: mechanics, deadlock detection, optimal solver,
and solver-in-the-loop level generation.

Levels are 6x6 or 7x7 with a solid outer wall. The text format uses one
character per cell: ``#`` wall, ``.`` floor, ``G`` goal, ``B`` box, ``P``
player, ``*`` box on goal, ``+`` player on goal.

The solver returns sequences of player moves (not pushes); its optimality is
cross-checked against a plain breadth-first search in the test suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from heapq import heappop, heappush

from spatialbench.errors import GenerationBudgetExceeded, IllegalMove

Cell = tuple[int, int]

MOVE_DELTAS: dict[str, Cell] = {"U": (-1, 0), "D": (1, 0), "L": (0, -1), "R": (0, 1)}
MOVE_ORDER = "UDLR"
_OPPOSITE_MOVE = {"U": "D", "D": "U", "L": "R", "R": "L"}


@dataclass(frozen=True)
class SokobanLevel:
    rows: int
    cols: int
    walls: frozenset[Cell]
    goals: frozenset[Cell]
    boxes: frozenset[Cell]
    player: Cell

    def __post_init__(self) -> None:
        if len(self.boxes) != len(self.goals):
            raise ValueError("box and goal counts differ")
        for r in range(self.rows):
            for c in (0, self.cols - 1):
                if (r, c) not in self.walls:
                    raise ValueError("outer boundary must be wall")
        for c in range(self.cols):
            for r in (0, self.rows - 1):
                if (r, c) not in self.walls:
                    raise ValueError("outer boundary must be wall")
        occupied = self.boxes | {self.player}
        if occupied & self.walls:
            raise ValueError("boxes and player must stand on floor")

    # -- text round trip ----------------------------------------------------

    def to_text(self) -> str:
        out = []
        for r in range(self.rows):
            row = ""
            for c in range(self.cols):
                cell = (r, c)
                if cell in self.walls:
                    row += "#"
                elif cell in self.boxes:
                    row += "*" if cell in self.goals else "B"
                elif cell == self.player:
                    row += "+" if cell in self.goals else "P"
                elif cell in self.goals:
                    row += "G"
                else:
                    row += "."
            out.append(row)
        return "\n".join(out)

    @staticmethod
    def from_text(text: str) -> "SokobanLevel":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        rows, cols = len(lines), len(lines[0])
        walls, goals, boxes = set(), set(), set()
        player: Cell | None = None
        for r, line in enumerate(lines):
            if len(line) != cols:
                raise ValueError("ragged level text")
            for c, ch in enumerate(line):
                cell = (r, c)
                if ch == "#":
                    walls.add(cell)
                elif ch == "G":
                    goals.add(cell)
                elif ch == "B":
                    boxes.add(cell)
                elif ch == "*":
                    boxes.add(cell)
                    goals.add(cell)
                elif ch == "P":
                    player = cell
                elif ch == "+":
                    player = cell
                    goals.add(cell)
                elif ch != ".":
                    raise ValueError(f"bad cell char {ch!r}")
        if player is None:
            raise ValueError("level has no player")
        return SokobanLevel(rows, cols, frozenset(walls), frozenset(goals), frozenset(boxes), player)

    # -- mechanics ----------------------------------------------------------

    def is_floor(self, cell: Cell) -> bool:
        r, c = cell
        return 0 <= r < self.rows and 0 <= c < self.cols and cell not in self.walls

    def is_solved(self) -> bool:
        return self.boxes <= self.goals

    def legal_moves(self) -> list[str]:
        out = []
        for m in MOVE_ORDER:
            try:
                apply_move(self, m)
                out.append(m)
            except IllegalMove:
                pass
        return out


def apply_move(state: SokobanLevel, move: str) -> SokobanLevel:
    """Step the player; push a box if one blocks the way and space allows."""
    if move not in MOVE_DELTAS:
        raise IllegalMove(f"unknown move {move!r}")
    dr, dc = MOVE_DELTAS[move]
    target = (state.player[0] + dr, state.player[1] + dc)
    if not state.is_floor(target):
        raise IllegalMove(f"move {move} walks into a wall")
    boxes = state.boxes
    if target in boxes:
        beyond = (target[0] + dr, target[1] + dc)
        if not state.is_floor(beyond) or beyond in boxes:
            raise IllegalMove(f"move {move} pushes a blocked box")
        boxes = (boxes - {target}) | {beyond}
    return SokobanLevel(state.rows, state.cols, state.walls, state.goals, boxes, target)


def replay(state: SokobanLevel, moves: list[str] | tuple[str, ...] | str) -> SokobanLevel:
    for m in moves:
        state = apply_move(state, m)
    return state


# -- deadlock detection -----------------------------------------------------


def dead_squares(level: SokobanLevel) -> frozenset[Cell]:
    """Floor cells from which a box can never be pushed onto any goal.

    Reverse-pull reachability: breadth-first from each goal, stepping a box
    backward only where a player could have stood to push it.
    """
    reachable: set[Cell] = set()
    frontier = [g for g in level.goals]
    reachable.update(frontier)
    while frontier:
        cell = frontier.pop()
        for dr, dc in MOVE_DELTAS.values():
            prev = (cell[0] - dr, cell[1] - dc)
            stand = (cell[0] - 2 * dr, cell[1] - 2 * dc)
            if level.is_floor(prev) and level.is_floor(stand) and prev not in reachable:
                reachable.add(prev)
                frontier.append(prev)
    floors = {
        (r, c)
        for r in range(level.rows)
        for c in range(level.cols)
        if level.is_floor((r, c))
    }
    return frozenset(floors - reachable)


def _frozen_square(level: SokobanLevel, box: Cell) -> bool:
    """Box participates in a fully blocked 2x2 pattern of walls/boxes."""
    solid = level.walls | level.boxes
    r, c = box
    for dr in (-1, 0):
        for dc in (-1, 0):
            quad = [(r + dr + i, c + dc + j) for i in (0, 1) for j in (0, 1)]
            if all(q in solid or not level.is_floor(q) for q in quad):
                return True
    return False


def is_simple_deadlock(level: SokobanLevel, dead: frozenset[Cell] | None = None) -> bool:
    if dead is None:
        dead = dead_squares(level)
    for box in level.boxes:
        if box in level.goals:
            continue
        if box in dead or _frozen_square(level, box):
            return True
    return False


# -- optimal solver ---------------------------------------------------------


@dataclass(frozen=True)
class SolveResult:
    status: str  # "solved" | "unsolvable" | "budget_exceeded"
    moves: tuple[str, ...] | None = None

    @property
    def length(self) -> int:
        if self.moves is None:
            raise ValueError("no solution")
        return len(self.moves)


def _push_distances(level: SokobanLevel) -> dict[Cell, int]:
    """Min pushes from each cell to the nearest goal, ignoring other boxes."""
    dist: dict[Cell, int] = {g: 0 for g in level.goals}
    frontier = list(level.goals)
    while frontier:
        nxt: list[Cell] = []
        for cell in frontier:
            for dr, dc in MOVE_DELTAS.values():
                prev = (cell[0] - dr, cell[1] - dc)
                stand = (cell[0] - 2 * dr, cell[1] - 2 * dc)
                if level.is_floor(prev) and level.is_floor(stand) and prev not in dist:
                    dist[prev] = dist[cell] + 1
                    nxt.append(prev)
        frontier = nxt
    return dist


def _walk_field(level: SokobanLevel, boxes: frozenset[Cell], start: Cell) -> dict[Cell, tuple[int, str | None]]:
    """Shortest walk distance and arrival move to every reachable cell."""
    field: dict[Cell, tuple[int, str | None]] = {start: (0, None)}
    frontier = [start]
    while frontier:
        nxt: list[Cell] = []
        for cell in frontier:
            base = field[cell][0]
            for m in MOVE_ORDER:
                dr, dc = MOVE_DELTAS[m]
                dest = (cell[0] + dr, cell[1] + dc)
                if level.is_floor(dest) and dest not in boxes and dest not in field:
                    field[dest] = (base + 1, m)
                    nxt.append(dest)
        frontier = nxt
    return field


def _walk_path(level: SokobanLevel, boxes: frozenset[Cell], start: Cell, goal: Cell) -> list[str] | None:
    """Deterministic shortest walk (tie order U,D,L,R at every layer)."""
    if start == goal:
        return []
    prev: dict[Cell, tuple[Cell, str]] = {}
    seen = {start}
    frontier = [start]
    while frontier:
        nxt: list[Cell] = []
        for cell in frontier:
            for m in MOVE_ORDER:
                dr, dc = MOVE_DELTAS[m]
                dest = (cell[0] + dr, cell[1] + dc)
                if not level.is_floor(dest) or dest in boxes or dest in seen:
                    continue
                seen.add(dest)
                prev[dest] = (cell, m)
                if dest == goal:
                    path: list[str] = []
                    cur = dest
                    while cur != start:
                        cur, mv = prev[cur]
                        path.append(mv)
                    return path[::-1]
                nxt.append(dest)
        frontier = nxt
    return None


def solve(level: SokobanLevel, node_budget: int = 200_000) -> SolveResult:
    """Move-optimal solution via A* over push events.

    States are (box set, player cell); a transition walks the player to a
    push position and pushes once, costing walk length + 1 player moves. The
    heuristic (sum over boxes of minimum push distance to any goal) is
    admissible, so the first settled goal state is optimal.
    """
    if level.is_solved():
        return SolveResult("solved", ())
    dead = dead_squares(level)
    pushdist = _push_distances(level)

    def heuristic(boxes: frozenset[Cell]) -> int:
        total = 0
        for b in boxes:
            d = pushdist.get(b)
            if d is None:
                return -1  # some box can no longer reach any goal
            total += d
        return total

    h0 = heuristic(level.boxes)
    if h0 < 0:
        return SolveResult("unsolvable")

    start = (level.boxes, level.player)
    best_g: dict[tuple[frozenset[Cell], Cell], int] = {start: 0}
    parents: dict[tuple[frozenset[Cell], Cell], tuple[tuple[frozenset[Cell], Cell], tuple[str, ...]]] = {}
    counter = 0
    heap: list[tuple[int, int, int, tuple[frozenset[Cell], Cell]]] = [(h0, 0, counter, start)]
    expanded = 0

    while heap:
        f, g, _, node = heappop(heap)
        if g > best_g.get(node, float("inf")):
            continue
        boxes, player = node
        if boxes <= level.goals:
            moves: list[str] = []
            cur = node
            while cur in parents:
                cur, seg = parents[cur]
                moves[:0] = seg
            return SolveResult("solved", tuple(moves))
        expanded += 1
        if expanded > node_budget:
            return SolveResult("budget_exceeded")

        field = _walk_field(level, boxes, player)
        for box in sorted(boxes):
            for m in MOVE_ORDER:
                dr, dc = MOVE_DELTAS[m]
                stand = (box[0] - dr, box[1] - dc)
                dest = (box[0] + dr, box[1] + dc)
                if stand not in field:
                    continue
                if not level.is_floor(dest) or dest in boxes:
                    continue
                if dest in dead:
                    continue
                new_boxes = (boxes - {box}) | {dest}
                h = heuristic(new_boxes)
                if h < 0:
                    continue
                new_node = (new_boxes, box)
                new_g = g + field[stand][0] + 1
                if new_g < best_g.get(new_node, float("inf")):
                    best_g[new_node] = new_g
                    walk = _walk_path(level, boxes, player, stand)
                    assert walk is not None
                    parents[new_node] = (node, tuple(walk) + (m,))
                    counter += 1
                    heappush(heap, (new_g + h, new_g, counter, new_node))

    return SolveResult("unsolvable")


# -- difficulty score ---------------------------------------------------------


@dataclass(frozen=True)
class DifficultyWeights:
    dead_corner: float = 1.0 / 3.0
    narrow_passage: float = 1.0 / 3.0
    obstacle_density: float = 1.0 / 3.0


def difficulty_terms(level: SokobanLevel) -> tuple[float, float, float]:
    floors = [
        (r, c)
        for r in range(level.rows)
        for c in range(level.cols)
        if level.is_floor((r, c))
    ]
    n_floor = max(1, len(floors))
    dead = dead_squares(level)
    dead_term = len(dead) / n_floor

    narrow = 0
    for r, c in floors:
        ns = (r - 1, c) in level.walls and (r + 1, c) in level.walls
        ew = (r, c - 1) in level.walls and (r, c + 1) in level.walls
        if ns or ew:
            narrow += 1
    narrow_term = narrow / n_floor

    interior = (level.rows - 2) * (level.cols - 2)
    interior_walls = sum(
        1
        for r in range(1, level.rows - 1)
        for c in range(1, level.cols - 1)
        if (r, c) in level.walls
    )
    density_term = interior_walls / max(1, interior)
    return (dead_term, narrow_term, density_term)


def difficulty_score(level: SokobanLevel, weights: DifficultyWeights | None = None) -> float:
    w = weights or DifficultyWeights()
    dead_term, narrow_term, density_term = difficulty_terms(level)
    return w.dead_corner * dead_term + w.narrow_passage * narrow_term + w.obstacle_density * density_term


# -- generation ---------------------------------------------------------------


@dataclass(frozen=True)
class SokobanTier:
    boxes: int
    wall_range: tuple[int, int]
    pulls: tuple[int, int]
    length_band: tuple[int, int]
    score_band: tuple[float, float]


TIER_SETTINGS: dict[str, SokobanTier] = {
    "easy": SokobanTier(1, (0, 3), (4, 14), (2, 8), (0.0, 0.85)),
    "medium": SokobanTier(2, (1, 5), (16, 50), (9, 17), (0.0, 0.9)),
    "hard": SokobanTier(3, (2, 7), (40, 140), (18, 70), (0.0, 1.0)),
}


@dataclass(frozen=True)
class GeneratedLevel:
    level: SokobanLevel
    solution: tuple[str, ...]
    optimal_length: int
    score: float


def _connected_floors(rows: int, cols: int, walls: set[Cell]) -> bool:
    floors = [(r, c) for r in range(rows) for c in range(cols) if (r, c) not in walls]
    if not floors:
        return False
    seen = {floors[0]}
    stack = [floors[0]]
    while stack:
        r, c = stack.pop()
        for dr, dc in MOVE_DELTAS.values():
            nxt = (r + dr, c + dc)
            if nxt not in walls and 0 <= nxt[0] < rows and 0 <= nxt[1] < cols and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == len(floors)


def _random_pulls(
    rng: random.Random,
    level_walls: frozenset[Cell],
    rows: int,
    cols: int,
    goals: frozenset[Cell],
    steps: int,
) -> tuple[frozenset[Cell], Cell] | None:
    """Walk backward from the solved state by inverting pushes.

    Pulls that move a box farther from the goals (by push distance) are
    strongly preferred, so long walks end in genuinely scrambled states
    instead of oscillating near the goals.
    """
    probe = SokobanLevel(rows, cols, level_walls, goals, goals, _any_floor(rows, cols, level_walls, goals))
    pushdist = _push_distances(probe)
    boxes = set(goals)
    free = [
        (r, c)
        for r in range(rows)
        for c in range(cols)
        if probe.is_floor((r, c)) and (r, c) not in boxes
    ]
    if not free:
        return None
    player = rng.choice(free)

    forbidden: tuple[Cell, str] | None = None  # undo of the previous pull
    for _ in range(steps):
        options: list[tuple[Cell, str, float]] = []
        field = _walk_field(probe, frozenset(boxes), player)
        for box in sorted(boxes):
            for m in MOVE_ORDER:
                dr, dc = MOVE_DELTAS[m]
                near = (box[0] - dr, box[1] - dc)  # box lands here; forward push stood the player here
                stand = (box[0] - 2 * dr, box[1] - 2 * dc)  # player lands here
                if not probe.is_floor(near) or near in boxes:
                    continue
                if not probe.is_floor(stand) or stand in boxes:
                    continue
                if (box, m) == forbidden or near not in field:
                    continue
                gain = pushdist.get(near, 0) - pushdist.get(box, 0)
                weight = 6.0 if gain > 0 else (1.0 if gain == 0 else 0.4)
                options.append((box, m, weight))
        if not options:
            break
        total = sum(w for _, _, w in options)
        pick = rng.uniform(0.0, total)
        acc = 0.0
        box, m = options[-1][0], options[-1][1]
        for b, mv, w in options:
            acc += w
            if pick <= acc:
                box, m = b, mv
                break
        dr, dc = MOVE_DELTAS[m]
        new_box = (box[0] - dr, box[1] - dc)
        boxes.remove(box)
        boxes.add(new_box)
        player = (box[0] - 2 * dr, box[1] - 2 * dc)
        forbidden = (new_box, _OPPOSITE_MOVE[m])
    return frozenset(boxes), player


def _any_floor(rows: int, cols: int, walls: frozenset[Cell], exclude: frozenset[Cell]) -> Cell:
    for r in range(rows):
        for c in range(cols):
            if (r, c) not in walls and (r, c) not in exclude:
                return (r, c)
    raise ValueError("no free floor cell")


def generate_level(
    seed: int,
    size: int = 7,
    tier: str = "medium",
    settings: dict[str, SokobanTier] | None = None,
    max_attempts: int = 400,
    node_budget: int = 200_000,
) -> GeneratedLevel:
    """Reverse-play construction followed by a forward optimality check."""
    if size not in (6, 7):
        raise ValueError("size must be 6 or 7")
    cfg = (settings or TIER_SETTINGS)[tier]
    rng = random.Random(seed)

    for _ in range(max_attempts):
        walls = {
            (r, c)
            for r in range(size)
            for c in range(size)
            if r in (0, size - 1) or c in (0, size - 1)
        }
        interior = [(r, c) for r in range(1, size - 1) for c in range(1, size - 1)]
        n_walls = rng.randint(*cfg.wall_range)
        walls.update(rng.sample(interior, min(n_walls, len(interior))))
        if not _connected_floors(size, size, walls):
            continue
        floor = [c for c in interior if c not in walls]
        if len(floor) < cfg.boxes * 2 + 2:
            continue
        goals = frozenset(rng.sample(floor, cfg.boxes))

        pulled = _random_pulls(rng, frozenset(walls), size, size, goals, rng.randint(*cfg.pulls))
        if pulled is None:
            continue
        boxes, player = pulled
        if boxes == goals:
            continue
        level = SokobanLevel(size, size, frozenset(walls), goals, boxes, player)
        if is_simple_deadlock(level):
            continue
        score = difficulty_score(level)
        if not (cfg.score_band[0] <= score <= cfg.score_band[1]):
            continue
        # Sum of per-box push distances lower-bounds the optimal move count;
        # skip the solver when the state is certainly too close to solved.
        pushdist = _push_distances(level)
        lower = sum(pushdist.get(b, 0) for b in level.boxes)
        if lower * 3 < cfg.length_band[0]:
            continue
        result = solve(level, node_budget=node_budget)
        if result.status != "solved" or result.moves is None:
            continue
        if not (cfg.length_band[0] <= len(result.moves) <= cfg.length_band[1]):
            continue
        return GeneratedLevel(level, result.moves, len(result.moves), score)

    raise GenerationBudgetExceeded(f"sokoban generation failed for tier {tier!r} seed {seed}")
