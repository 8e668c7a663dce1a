"""Sliding-block puzzle on a 4x5 board: mechanics, optimal solver, generation.

The unique 2x2 block must reach the exit region at the bottom center
(anchor cell row 3, col 1). Blocks slide one cell at a time into empty
space; moves are counted as single-cell steps.

Text format: 4x5 grid of letters, one letter per block (same letter = same
block), ``.`` for empty. Moves serialize as ``<letter><U|D|L|R>``.

The solver canonicalizes states by treating same-shape blocks as
interchangeable; this is sound because swapping equal shapes is a graph
automorphism that fixes the goal set. States are packed into single
integers (5 bits per anchor, anchors sorted within each shape class) so
whole reachability components fit comfortably in memory. The test suite
cross-checks optimal lengths against an uncanonicalized breadth-first
search.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from spatialbench.errors import GenerationBudgetExceeded, IllegalMove

WIDTH = 4
HEIGHT = 5
EXIT_ANCHOR = (3, 1)
EXIT_CI = EXIT_ANCHOR[0] * WIDTH + EXIT_ANCHOR[1]

Cell = tuple[int, int]

SHAPES: dict[str, tuple[Cell, ...]] = {
    "s": ((0, 0),),
    "h": ((0, 0), (0, 1)),
    "v": ((0, 0), (1, 0)),
    "b": ((0, 0), (0, 1), (1, 0), (1, 1)),
}

MOVE_DELTAS: dict[str, Cell] = {"U": (-1, 0), "D": (1, 0), "L": (0, -1), "R": (0, 1)}

# Shape layout of a board: (n_h, n_v, n_s); the single 2x2 is implicit.
Layout = tuple[int, int, int]


def _ci(cell: Cell) -> int:
    return cell[0] * WIDTH + cell[1]


def _cell(ci: int) -> Cell:
    return divmod(ci, WIDTH)


def _shape_mask(shape: str, ci: int) -> int:
    r, c = _cell(ci)
    mask = 0
    for dr, dc in SHAPES[shape]:
        mask |= 1 << ((r + dr) * WIDTH + (c + dc))
    return mask


def _fits(shape: str, ci: int) -> bool:
    r, c = _cell(ci)
    return all(
        0 <= r + dr < HEIGHT and 0 <= c + dc < WIDTH for dr, dc in SHAPES[shape]
    )


# (shape, ci, dir) -> (swept_mask, new_ci) for legal-in-bounds slides.
_MOVE_TABLE: dict[tuple[str, int, str], tuple[int, int]] = {}
_MASKS: dict[tuple[str, int], int] = {}
for _shape in SHAPES:
    for _c in range(WIDTH * HEIGHT):
        if not _fits(_shape, _c):
            continue
        own = _shape_mask(_shape, _c)
        _MASKS[(_shape, _c)] = own
        r0, c0 = _cell(_c)
        for _d, (_dr, _dc) in MOVE_DELTAS.items():
            nr, nc = r0 + _dr, c0 + _dc
            if not (0 <= nr < HEIGHT and 0 <= nc < WIDTH) or not _fits(_shape, nr * WIDTH + nc):
                continue
            target = _shape_mask(_shape, nr * WIDTH + nc)
            _MOVE_TABLE[(_shape, _c, _d)] = (target & ~own, nr * WIDTH + nc)


@dataclass(frozen=True)
class KlotskiBoard:
    """Blocks with stable identities (index order = letter order A, B, ...)."""

    blocks: tuple[tuple[str, Cell], ...]

    def __post_init__(self) -> None:
        bigs = [b for b in self.blocks if b[0] == "b"]
        if len(bigs) != 1:
            raise ValueError("board needs exactly one 2x2 block")
        occupied: set[Cell] = set()
        for shape, (r, c) in self.blocks:
            for dr, dc in SHAPES[shape]:
                cell = (r + dr, c + dc)
                if not (0 <= cell[0] < HEIGHT and 0 <= cell[1] < WIDTH):
                    raise ValueError(f"block {shape} at {(r, c)} leaves the board")
                if cell in occupied:
                    raise ValueError(f"blocks overlap at {cell}")
                occupied.add(cell)
        if len(occupied) > WIDTH * HEIGHT - 2:
            raise ValueError("board needs at least two empty cells")

    # -- queries ----------------------------------------------------------

    def occupied_cells(self) -> set[Cell]:
        out: set[Cell] = set()
        for shape, (r, c) in self.blocks:
            out.update((r + dr, c + dc) for dr, dc in SHAPES[shape])
        return out

    def empty_count(self) -> int:
        return WIDTH * HEIGHT - len(self.occupied_cells())

    def is_standard(self) -> bool:
        return self.empty_count() == 2

    def big_anchor(self) -> Cell:
        return next(a for s, a in self.blocks if s == "b")

    def is_solved(self) -> bool:
        return self.big_anchor() == EXIT_ANCHOR

    def layout(self) -> Layout:
        counts = {"h": 0, "v": 0, "s": 0}
        for shape, _ in self.blocks:
            if shape != "b":
                counts[shape] += 1
        return (counts["h"], counts["v"], counts["s"])

    def pack(self) -> int:
        """Canonical integer state: anchors sorted within each shape class."""
        big = 0
        hs: list[int] = []
        vs: list[int] = []
        ss: list[int] = []
        for shape, a in self.blocks:
            ci = _ci(a)
            if shape == "b":
                big = ci
            elif shape == "h":
                hs.append(ci)
            elif shape == "v":
                vs.append(ci)
            else:
                ss.append(ci)
        state = big
        shift = 5
        for group in (sorted(hs), sorted(vs), sorted(ss)):
            for ci in group:
                state |= ci << shift
                shift += 5
        return state

    # -- text round trip ---------------------------------------------------

    def to_text(self) -> str:
        grid = [["." for _ in range(WIDTH)] for _ in range(HEIGHT)]
        for i, (shape, (r, c)) in enumerate(self.blocks):
            letter = chr(ord("A") + i)
            for dr, dc in SHAPES[shape]:
                grid[r + dr][c + dc] = letter
        return "\n".join("".join(row) for row in grid)

    @staticmethod
    def from_text(text: str) -> "KlotskiBoard":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != HEIGHT or any(len(ln) != WIDTH for ln in lines):
            raise ValueError("board text must be 4 columns x 5 rows")
        cells_by_letter: dict[str, list[Cell]] = {}
        for r, line in enumerate(lines):
            for c, ch in enumerate(line):
                if ch == ".":
                    continue
                cells_by_letter.setdefault(ch, []).append((r, c))
        blocks: list[tuple[str, Cell]] = []
        for letter in sorted(cells_by_letter, key=lambda ch: min(cells_by_letter[ch])):
            cells = sorted(cells_by_letter[letter])
            anchor = cells[0]
            rel = tuple(sorted((r - anchor[0], c - anchor[1]) for r, c in cells))
            shape = next((s for s, offs in SHAPES.items() if tuple(sorted(offs)) == rel), None)
            if shape is None:
                raise ValueError(f"block {letter!r} has unsupported shape {rel}")
            blocks.append((shape, anchor))
        return KlotskiBoard(tuple(blocks))

    def letter_of(self, index: int) -> str:
        return chr(ord("A") + index)


def board_from_state(state: int, layout: Layout) -> KlotskiBoard:
    big, hs, vs, ss = _unpack(state, layout)
    blocks = (
        [("b", _cell(big))]
        + [("h", _cell(ci)) for ci in hs]
        + [("v", _cell(ci)) for ci in vs]
        + [("s", _cell(ci)) for ci in ss]
    )
    blocks.sort(key=lambda b: b[1])
    return KlotskiBoard(tuple(blocks))


@dataclass(frozen=True)
class SlideMove:
    block: int
    direction: str  # U D L R

    def notation(self, board: KlotskiBoard) -> str:
        return board.letter_of(self.block) + self.direction


def apply_move(board: KlotskiBoard, move: SlideMove) -> KlotskiBoard:
    if move.direction not in MOVE_DELTAS:
        raise IllegalMove(f"unknown direction {move.direction!r}")
    if not 0 <= move.block < len(board.blocks):
        raise IllegalMove(f"no block with index {move.block}")
    shape, (r, c) = board.blocks[move.block]
    entry = _MOVE_TABLE.get((shape, _ci((r, c)), move.direction))
    if entry is None:
        raise IllegalMove("move leaves the board")
    swept, new_ci = entry
    occupied = 0
    for i, (sh, a) in enumerate(board.blocks):
        if i != move.block:
            occupied |= _MASKS[(sh, _ci(a))]
    if occupied & swept:
        raise IllegalMove("target cells occupied")
    blocks = list(board.blocks)
    blocks[move.block] = (shape, _cell(new_ci))
    return KlotskiBoard(tuple(blocks))


def legal_moves(board: KlotskiBoard) -> list[SlideMove]:
    out = []
    for i in range(len(board.blocks)):
        for d in "UDLR":
            try:
                apply_move(board, SlideMove(i, d))
                out.append(SlideMove(i, d))
            except IllegalMove:
                pass
    return out


def parse_moves(board: KlotskiBoard, text_moves: list[str]) -> list[SlideMove]:
    """Letter-coded moves -> block indices for this board's labeling."""
    out = []
    for tok in text_moves:
        tok = tok.strip().upper()
        if len(tok) != 2 or tok[1] not in MOVE_DELTAS:
            raise IllegalMove(f"bad move token {tok!r}")
        idx = ord(tok[0]) - ord("A")
        if not 0 <= idx < len(board.blocks):
            raise IllegalMove(f"no block letter {tok[0]!r}")
        out.append(SlideMove(idx, tok[1]))
    return out


def replay(board: KlotskiBoard, moves: list[SlideMove]) -> KlotskiBoard:
    for m in moves:
        board = apply_move(board, m)
    return board


# -- packed-state search machinery -------------------------------------------


def _unpack(state: int, layout: Layout) -> tuple[int, list[int], list[int], list[int]]:
    nh, nv, ns = layout
    big = state & 31
    state >>= 5
    hs = [(state >> (5 * i)) & 31 for i in range(nh)]
    state >>= 5 * nh
    vs = [(state >> (5 * i)) & 31 for i in range(nv)]
    state >>= 5 * nv
    ss = [(state >> (5 * i)) & 31 for i in range(ns)]
    return big, hs, vs, ss


def _pack(big: int, hs: list[int], vs: list[int], ss: list[int]) -> int:
    state = big
    shift = 5
    for group in (hs, vs, ss):
        for ci in group:
            state |= ci << shift
            shift += 5
    return state


Edge = tuple[str, int, str]  # shape, old anchor ci, direction


def _successors(state: int, layout: Layout) -> list[tuple[int, Edge]]:
    big, hs, vs, ss = _unpack(state, layout)
    occ = _MASKS[("b", big)]
    for ci in hs:
        occ |= _MASKS[("h", ci)]
    for ci in vs:
        occ |= _MASKS[("v", ci)]
    for ci in ss:
        occ |= _MASKS[("s", ci)]

    out: list[tuple[int, Edge]] = []
    for d in "UDLR":
        entry = _MOVE_TABLE.get(("b", big, d))
        if entry and not (occ & entry[0]):
            out.append((_pack(entry[1], hs, vs, ss), ("b", big, d)))
    for group, shape in ((hs, "h"), (vs, "v"), (ss, "s")):
        for i, ci in enumerate(group):
            for d in "UDLR":
                entry = _MOVE_TABLE.get((shape, ci, d))
                if entry and not (occ & entry[0]):
                    moved = sorted(group[:i] + [entry[1]] + group[i + 1 :])
                    if shape == "h":
                        out.append((_pack(big, moved, vs, ss), (shape, ci, d)))
                    elif shape == "v":
                        out.append((_pack(big, hs, moved, ss), (shape, ci, d)))
                    else:
                        out.append((_pack(big, hs, vs, moved), (shape, ci, d)))
    return out


@dataclass(frozen=True)
class SolveResult:
    status: str  # "solved" | "unsolvable" | "budget_exceeded"
    moves: tuple[str, ...] | None = None  # letter-coded, e.g. "BD"

    @property
    def length(self) -> int:
        if self.moves is None:
            raise ValueError("no solution")
        return len(self.moves)


def _edges_to_letters(board: KlotskiBoard, edges: list[Edge]) -> tuple[str, ...]:
    """Replay anchor-level edges on the identity board to emit letter moves."""
    letters: list[str] = []
    current = board
    for shape, ci, d in edges:
        anchor = _cell(ci)
        idx = next(i for i, (s, a) in enumerate(current.blocks) if s == shape and a == anchor)
        letters.append(current.letter_of(idx) + d)
        current = apply_move(current, SlideMove(idx, d))
    assert current.is_solved()
    return tuple(letters)


def solve(board: KlotskiBoard, node_budget: int = 600_000) -> SolveResult:
    """Shortest single-cell-step solution via BFS over canonical states."""
    if board.is_solved():
        return SolveResult("solved", ())
    layout = board.layout()
    start = board.pack()
    parents: dict[int, tuple[int, Edge]] = {}
    seen = {start}
    frontier = [start]
    expanded = 0
    goal: int | None = None
    while frontier and goal is None:
        nxt: list[int] = []
        for state in frontier:
            expanded += 1
            if expanded > node_budget:
                return SolveResult("budget_exceeded")
            for succ, edge in _successors(state, layout):
                if succ in seen:
                    continue
                seen.add(succ)
                parents[succ] = (state, edge)
                if succ & 31 == EXIT_CI:
                    goal = succ
                    break
                nxt.append(succ)
            if goal is not None:
                break
        frontier = nxt
    if goal is None:
        return SolveResult("unsolvable")

    edges: list[Edge] = []
    cur = goal
    while cur in parents:
        cur, edge = parents[cur]
        edges.append(edge)
    edges.reverse()
    return SolveResult("solved", _edges_to_letters(board, edges))


# -- generation ----------------------------------------------------------------

TIER_BANDS: dict[str, tuple[int, int]] = {
    "easy": (1, 15),
    "medium": (16, 45),
    "hard": (46, 100_000),
}

PACKING_POOL_SIZE = 16


def build_packing(packing_seed: int, max_attempts: int = 200) -> KlotskiBoard:
    """A random solved board: 2x2 at the exit, the rest tiled, 2 empties.

    Vertical pieces are favored; piece-heavy boards have the deep solution
    trees the hard tier needs.
    """
    rng = random.Random(f"klotski-packing-{packing_seed}")
    big_cells = {(3, 1), (3, 2), (4, 1), (4, 2)}
    for _ in range(max_attempts):
        free = [
            (r, c) for r in range(HEIGHT) for c in range(WIDTH) if (r, c) not in big_cells
        ]
        empties = set(rng.sample(free, 2))
        to_fill = {cell for cell in free if cell not in empties}
        filled: set[Cell] = set()
        blocks: list[tuple[str, Cell]] = [("b", EXIT_ANCHOR)]
        for cell in sorted(to_fill):
            if cell in filled:
                continue
            r, c = cell
            choices: list[tuple[str, float]] = [("s", 2.0)]
            if (r + 1, c) in to_fill and (r + 1, c) not in filled:
                choices.append(("v", 5.0))
            if (r, c + 1) in to_fill and (r, c + 1) not in filled:
                choices.append(("h", 3.0))
            total = sum(w for _, w in choices)
            pick = rng.uniform(0.0, total)
            acc = 0.0
            shape = "s"
            for sh, w in choices:
                acc += w
                if pick <= acc:
                    shape = sh
                    break
            for dr, dc in SHAPES[shape]:
                filled.add((r + dr, c + dc))
            blocks.append((shape, cell))
        blocks_sorted = tuple(sorted(blocks, key=lambda b: b[1]))
        return KlotskiBoard(blocks_sorted)
    raise GenerationBudgetExceeded("packing construction failed")


@lru_cache(maxsize=64)
def _component_by_start(layout: Layout, start: int) -> tuple[dict[int, int], dict[int, list[int]]]:
    """Distances to the goal set for every state reachable from ``start``.

    Forward BFS enumerates the component; multi-source backward BFS from all
    in-component goal states assigns exact single-step distances. Returns
    the distance map and per-distance buckets (sorted, for deterministic
    sampling).
    """
    component = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for state in frontier:
            for succ, _ in _successors(state, layout):
                if succ not in component:
                    component.add(succ)
                    nxt.append(succ)
        frontier = nxt

    goals = [s for s in component if s & 31 == EXIT_CI]
    dist: dict[int, int] = {g: 0 for g in goals}
    frontier = goals
    d = 0
    while frontier:
        d += 1
        nxt = []
        for state in frontier:
            for succ, _ in _successors(state, layout):
                if succ in component and succ not in dist:
                    dist[succ] = d
                    nxt.append(succ)
        frontier = nxt

    buckets: dict[int, list[int]] = {}
    for s, sd in dist.items():
        buckets.setdefault(sd, []).append(s)
    for lst in buckets.values():
        lst.sort()
    return dist, buckets


@lru_cache(maxsize=PACKING_POOL_SIZE * 2)
def _component_distances(packing_seed: int) -> tuple[Layout, dict[int, int], dict[int, list[int]]]:
    solved = build_packing(packing_seed)
    layout = solved.layout()
    dist, buckets = _component_by_start(layout, solved.pack())
    return layout, dist, buckets


@dataclass(frozen=True)
class GeneratedBoard:
    board: KlotskiBoard
    solution: tuple[str, ...]
    optimal_length: int


def _greedy_solution(board: KlotskiBoard, layout: Layout, dist: dict[int, int]) -> tuple[str, ...]:
    """Descend the distance field; deterministic tie-break by successor key."""
    edges: list[Edge] = []
    state = board.pack()
    d = dist[state]
    while d > 0:
        step = min(
            ((succ, edge) for succ, edge in _successors(state, layout) if dist.get(succ) == d - 1),
            default=None,
        )
        assert step is not None, "distance field is inconsistent"
        state, edge = step
        edges.append(edge)
        d -= 1
    return _edges_to_letters(board, edges)


def generate_board(
    seed: int,
    tier: str,
    bands: dict[str, tuple[int, int]] | None = None,
    max_packings: int = 24,
) -> GeneratedBoard:
    """Deterministic board whose optimal length falls in the tier band."""
    lo, hi = (bands or TIER_BANDS)[tier]
    rng = random.Random(seed)
    for attempt in range(max_packings):
        packing_seed = (seed + attempt * 7919) % PACKING_POOL_SIZE
        layout, dist, buckets = _component_distances(packing_seed)
        in_band = sorted(d for d in buckets if lo <= d <= hi)
        if not in_band:
            continue
        total = sum(len(buckets[d]) for d in in_band)
        pick = rng.randrange(total)
        state = 0
        for d in in_band:
            if pick < len(buckets[d]):
                state = buckets[d][pick]
                break
            pick -= len(buckets[d])
        board = board_from_state(state, layout)
        solution = _greedy_solution(board, layout, dist)
        assert len(solution) == dist[state]
        return GeneratedBoard(board, solution, dist[state])
    raise GenerationBudgetExceeded(f"no klotski board in band for tier {tier!r}")
