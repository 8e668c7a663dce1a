from __future__ import annotations

import random
from collections import deque

import pytest

from spatialbench.envs.klotski import (
    EXIT_ANCHOR,
    HEIGHT,
    KlotskiBoard,
    SHAPES,
    SlideMove,
    TIER_BANDS,
    WIDTH,
    apply_move,
    generate_board,
    legal_moves,
    parse_moves,
    replay,
    solve,
)
from spatialbench.errors import IllegalMove

CLASSIC = """\
ABBC
ABBC
DEEF
DGHF
I..J
"""


def identity_bfs(board: KlotskiBoard, cap: int = 3_000_000) -> int | None:
    """Breadth-first search over blocks with distinct identities (no
    canonicalization); oracle for optimal lengths."""
    shapes = tuple(s for s, _ in board.blocks)

    def occupied(anchors):
        cells = set()
        for shape, (r, c) in zip(shapes, anchors):
            cells.update((r + dr, c + dc) for dr, dc in SHAPES[shape])
        return cells

    def solved(anchors):
        return anchors[shapes.index("b")] == EXIT_ANCHOR

    start = tuple(a for _, a in board.blocks)
    if solved(start):
        return 0
    seen = {start}
    queue = deque([(start, 0)])
    deltas = {"U": (-1, 0), "D": (1, 0), "L": (0, -1), "R": (0, 1)}
    while queue:
        anchors, d = queue.popleft()
        occ = occupied(anchors)
        for i, shape in enumerate(shapes):
            r, c = anchors[i]
            own = {(r + dr, c + dc) for dr, dc in SHAPES[shape]}
            for dr, dc in deltas.values():
                ok = True
                for a, b in SHAPES[shape]:
                    cell = (r + a + dr, c + b + dc)
                    if not (0 <= cell[0] < HEIGHT and 0 <= cell[1] < WIDTH) or (
                        cell in occ and cell not in own
                    ):
                        ok = False
                        break
                if not ok:
                    continue
                nxt = anchors[:i] + ((r + dr, c + dc),) + anchors[i + 1 :]
                if nxt in seen:
                    continue
                seen.add(nxt)
                if len(seen) > cap:
                    raise RuntimeError("oracle cap exceeded")
                if solved(nxt):
                    return d + 1
                queue.append((nxt, d + 1))
    return None


def random_small_board(rng: random.Random, max_blocks: int = 6) -> KlotskiBoard:
    """Sparse board with one 2x2 and a handful of small blocks."""
    while True:
        big = (rng.randrange(HEIGHT - 1), rng.randrange(WIDTH - 1))
        taken = {(big[0] + dr, big[1] + dc) for dr, dc in SHAPES["b"]}
        blocks = [("b", big)]
        for _ in range(rng.randint(0, max_blocks - 1)):
            shape = rng.choice(("s", "h", "v"))
            anchor = (rng.randrange(HEIGHT), rng.randrange(WIDTH))
            cells = [(anchor[0] + dr, anchor[1] + dc) for dr, dc in SHAPES[shape]]
            if any(
                not (0 <= r < HEIGHT and 0 <= c < WIDTH) or (r, c) in taken
                for r, c in cells
            ):
                continue
            taken.update(cells)
            blocks.append((shape, anchor))
        if len(taken) <= WIDTH * HEIGHT - 2:
            return KlotskiBoard(tuple(sorted(blocks, key=lambda b: b[1])))


def test_classic_text_round_trip():
    board = KlotskiBoard.from_text(CLASSIC)
    assert board.to_text() == CLASSIC.strip()
    assert board.is_standard()
    assert len(board.blocks) == 10


def test_single_cell_block_moves():
    board = KlotskiBoard.from_text(CLASSIC)
    # block I sits at (4,0) next to the two empties
    moves = legal_moves(board)
    assert len(moves) >= 2


def test_move_into_occupied_cell_is_illegal():
    board = KlotskiBoard.from_text(CLASSIC)
    # block A (vertical at (0,0)) is fully boxed in
    with pytest.raises(IllegalMove):
        apply_move(board, SlideMove(0, "D"))


def test_empty_count_conserved():
    rng = random.Random(5)
    board = KlotskiBoard.from_text(CLASSIC)
    for _ in range(100):
        moves = legal_moves(board)
        board = apply_move(board, rng.choice(moves))
        assert board.empty_count() == 2


def test_apply_move_reversible():
    rng = random.Random(7)
    board = KlotskiBoard.from_text(CLASSIC)
    inverse = {"U": "D", "D": "U", "L": "R", "R": "L"}
    for _ in range(100):
        mv = rng.choice(legal_moves(board))
        nxt = apply_move(board, mv)
        assert apply_move(nxt, SlideMove(mv.block, inverse[mv.direction])) == board
        board = nxt


def test_solved_board_needs_no_moves():
    g = generate_board(3, "easy")
    result = solve(replay(g.board, parse_moves(g.board, list(g.solution))))
    assert result.status == "solved"
    assert result.moves == ()


def test_straight_run_length():
    # Big block with a clear two-step drop to the exit; nothing else in the
    # corridor: optimal length equals the run length.
    board = KlotskiBoard.from_text(
        """\
.BB.
.BB.
....
....
....
"""
    )
    result = solve(board)
    assert result.status == "solved"
    assert result.length == 3


def test_classic_optimal_length_regression():
    # Frozen from this solver; single-cell step counting. The canonical
    # solver is oracle-verified on small boards in the equivalence test.
    result = solve(KlotskiBoard.from_text(CLASSIC))
    assert result.status == "solved"
    assert result.length == 116
    board = KlotskiBoard.from_text(CLASSIC)
    assert replay(board, parse_moves(board, list(result.moves))).is_solved()


def test_canonical_solver_matches_identity_bfs():
    rng = random.Random(11)
    checked = 0
    while checked < 30:
        board = random_small_board(rng)
        oracle = identity_bfs(board)
        result = solve(board)
        if oracle is None:
            assert result.status == "unsolvable"
        else:
            assert result.status == "solved"
            assert result.length == oracle
        checked += 1


def test_generated_boards_replay_to_solved():
    for tier in TIER_BANDS:
        for seed in range(20):
            g = generate_board(seed, tier)
            assert g.board.is_standard()
            end = replay(g.board, parse_moves(g.board, list(g.solution)))
            assert end.is_solved()
            lo, hi = TIER_BANDS[tier]
            assert lo <= g.optimal_length <= hi
            assert len(g.solution) == g.optimal_length


def test_generation_determinism():
    assert generate_board(9, "medium") == generate_board(9, "medium")


def test_mean_length_increases_by_tier():
    means = []
    for tier in ("easy", "medium", "hard"):
        lens = [generate_board(s, tier).optimal_length for s in range(30)]
        means.append(sum(lens) / len(lens))
    assert means[0] < means[1] < means[2]
