"""Rubik's cube: 54-sticker state machine and scramble generation.

Sticker indexing uses face order U, R, F, D, L, B with ``face*9 + row*3 +
col``. Each face is read in its standard display orientation, in the fixed
frame "white up, green front":

* U is viewed from above with the B edge as its top row;
* D is viewed from below with the F edge as its top row;
* the four side faces are viewed head-on with U above.

The per-move sticker permutations are derived once from an explicit cubie
model: each sticker is placed in 3-D, the turned layer is rotated a quarter
turn about the face axis, and the landing sticker slot is read back.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from spatialbench.errors import GenerationBudgetExceeded

FACES = "URFDLB"

# Face color in the solved state (white up, green front).
FACE_COLORS: dict[str, str] = {
    "U": "white",
    "R": "red",
    "F": "green",
    "D": "yellow",
    "L": "orange",
    "B": "blue",
}

COLOR_ORDER: tuple[str, ...] = tuple(FACE_COLORS[f] for f in FACES)

# Scramble-length bands per tier.
TIER_LENGTHS: dict[str, tuple[int, int]] = {
    "easy": (2, 5),
    "medium": (6, 10),
    "hard": (11, 18),
}

Coord = tuple[int, int, int]

# x toward R, y toward U, z toward F.
_FACE_NORMALS: dict[str, Coord] = {
    "U": (0, 1, 0),
    "R": (1, 0, 0),
    "F": (0, 0, 1),
    "D": (0, -1, 0),
    "L": (-1, 0, 0),
    "B": (0, 0, -1),
}


def _sticker_position(face: str, row: int, col: int) -> Coord:
    """Cubie coordinates in {-1,0,1}^3 for a sticker slot."""
    if face == "U":
        return (col - 1, 1, row - 1)
    if face == "D":
        return (col - 1, -1, 1 - row)
    if face == "F":
        return (col - 1, 1 - row, 1)
    if face == "B":
        return (1 - col, 1 - row, -1)
    if face == "R":
        return (1, 1 - row, 1 - col)
    if face == "L":
        return (-1, 1 - row, col - 1)
    raise ValueError(face)


def _rotate_quarter(p: Coord, axis: int, sign: int) -> Coord:
    """Rotate -90 degrees about the outward normal (clockwise from outside)."""
    x, y, z = p
    if axis == 0:  # about x
        return (x, sign * z, -sign * y)
    if axis == 1:  # about y
        return (-sign * z, y, sign * x)
    return (sign * y, -sign * x, z)


def _build_move_tables() -> dict[str, tuple[int, ...]]:
    pos_to_index: dict[tuple[Coord, Coord], int] = {}
    placements: list[tuple[Coord, Coord]] = []
    for fi, face in enumerate(FACES):
        n = _FACE_NORMALS[face]
        for row in range(3):
            for col in range(3):
                key = (_sticker_position(face, row, col), n)
                pos_to_index[key] = fi * 9 + row * 3 + col
                placements.append(key)

    tables: dict[str, tuple[int, ...]] = {}
    for face in FACES:
        n = _FACE_NORMALS[face]
        axis = next(i for i in range(3) if n[i] != 0)
        sign = n[axis]
        perm = list(range(54))
        for idx, (pos, normal) in enumerate(placements):
            if pos[axis] == sign:  # sticker's cubie is in the turned layer
                new_key = (_rotate_quarter(pos, axis, sign), _rotate_quarter(normal, axis, sign))
                perm[pos_to_index[new_key]] = idx
        tables[face] = tuple(perm)
    return tables


# new_state[i] = old_state[TABLE[i]]
_QUARTER_CW: dict[str, tuple[int, ...]] = _build_move_tables()


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """Permutation of applying p then q (gather semantics)."""
    return tuple(p[i] for i in q)


def _power(p: tuple[int, ...], n: int) -> tuple[int, ...]:
    out = tuple(range(54))
    for _ in range(n):
        out = _compose(out, p)
    return out


MOVE_TABLES: dict[str, tuple[int, ...]] = {}
for _f in FACES:
    MOVE_TABLES[_f] = _QUARTER_CW[_f]
    MOVE_TABLES[_f + "2"] = _power(_QUARTER_CW[_f], 2)
    MOVE_TABLES[_f + "'"] = _power(_QUARTER_CW[_f], 3)


@dataclass(frozen=True)
class FaceMove:
    face: str  # one of U D L R F B
    turns: int  # 1 = quarter clockwise, 2 = half, 3 = quarter counterclockwise

    def __post_init__(self) -> None:
        if self.face not in FACES or self.turns not in (1, 2, 3):
            raise ValueError(f"bad move: {self.face}{self.turns}")

    def notation(self) -> str:
        return self.face + {1: "", 2: "2", 3: "'"}[self.turns]

    @staticmethod
    def parse(token: str) -> "FaceMove":
        token = token.strip()
        if not token or token[0].upper() not in FACES:
            raise ValueError(f"bad move token: {token!r}")
        face = token[0].upper()
        suffix = token[1:]
        if suffix == "":
            return FaceMove(face, 1)
        if suffix == "2":
            return FaceMove(face, 2)
        if suffix in ("'", "’", "2'", "'2"):
            return FaceMove(face, 3 if suffix in ("'", "’") else 2)
        raise ValueError(f"bad move token: {token!r}")

    @property
    def inverse(self) -> "FaceMove":
        return FaceMove(self.face, {1: 3, 2: 2, 3: 1}[self.turns])


def parse_sequence(text: str) -> tuple[FaceMove, ...]:
    return tuple(FaceMove.parse(tok) for tok in text.split())


def format_sequence(moves: tuple[FaceMove, ...] | list[FaceMove]) -> str:
    return " ".join(m.notation() for m in moves)


@dataclass(frozen=True)
class CubeState:
    """54 sticker colors in URFDLB face order."""

    stickers: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.stickers) != 54:
            raise ValueError("cube state needs 54 stickers")

    @staticmethod
    def solved() -> "CubeState":
        return _SOLVED

    def sticker(self, face: str, row: int, col: int) -> str:
        return self.stickers[FACES.index(face) * 9 + row * 3 + col]

    def face_rows(self, face: str) -> list[list[str]]:
        base = FACES.index(face) * 9
        return [list(self.stickers[base + r * 3 : base + r * 3 + 3]) for r in range(3)]

    def color_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for s in self.stickers:
            counts[s] = counts.get(s, 0) + 1
        return counts

    def to_text(self) -> str:
        lines = []
        for face in FACES:
            rows = self.face_rows(face)
            lines.append(f"{face}: " + " | ".join(" ".join(r) for r in rows))
        return "\n".join(lines)


_SOLVED = CubeState(tuple(FACE_COLORS[f] for f in FACES for _ in range(9)))


def apply_move(state: CubeState, move: FaceMove) -> CubeState:
    table = MOVE_TABLES[move.notation() or move.face]
    return CubeState(tuple(state.stickers[i] for i in table))


def apply_sequence(state: CubeState, moves: tuple[FaceMove, ...] | list[FaceMove]) -> CubeState:
    for m in moves:
        state = apply_move(state, m)
    return state


def sequence_permutation(moves: list[FaceMove] | tuple[FaceMove, ...]) -> tuple[int, ...]:
    perm = tuple(range(54))
    for m in moves:
        perm = _compose(perm, MOVE_TABLES[m.notation() or m.face])
    return perm


def permutation_order(perm: tuple[int, ...]) -> int:
    """Order of a sticker permutation by repeated composition."""
    ident = tuple(range(54))
    acc = perm
    n = 1
    while acc != ident:
        acc = _compose(acc, perm)
        n += 1
    return n


@dataclass(frozen=True)
class RubiksInstance:
    scramble: tuple[FaceMove, ...]
    final_state: CubeState
    query: tuple[str, int, int]  # face, row, col; never a center
    answer: str
    tier: str
    seed: int


def random_scramble(rng: random.Random, length: int) -> tuple[FaceMove, ...]:
    moves: list[FaceMove] = []
    while len(moves) < length:
        face = rng.choice(FACES)
        if moves and moves[-1].face == face:
            continue
        moves.append(FaceMove(face, rng.choice((1, 2, 3))))
    return tuple(moves)


def generate_instance(seed: int, tier: str, max_attempts: int = 100) -> RubiksInstance:
    lo, hi = TIER_LENGTHS[tier]
    rng = random.Random(seed)
    for _ in range(max_attempts):
        length = rng.randint(lo, hi)
        scramble = random_scramble(rng, length)
        final = apply_sequence(CubeState.solved(), scramble)
        face = rng.choice(FACES)
        row, col = rng.choice([(r, c) for r in range(3) for c in range(3) if (r, c) != (1, 1)])
        return RubiksInstance(
            scramble=scramble,
            final_state=final,
            query=(face, row, col),
            answer=final.sticker(face, row, col),
            tier=tier,
            seed=seed,
        )
    raise GenerationBudgetExceeded("rubiks generation failed")


# --- cubie-level parity helpers (used by invariant tests) -----------------


def _corner_positions() -> list[tuple[tuple[str, int, int], ...]]:
    return [
        (("U", 0, 0), ("L", 0, 0), ("B", 0, 2)),
        (("U", 0, 2), ("B", 0, 0), ("R", 0, 2)),
        (("U", 2, 0), ("F", 0, 0), ("L", 0, 2)),
        (("U", 2, 2), ("R", 0, 0), ("F", 0, 2)),
        (("D", 0, 0), ("L", 2, 2), ("F", 2, 0)),
        (("D", 0, 2), ("F", 2, 2), ("R", 2, 0)),
        (("D", 2, 0), ("B", 2, 2), ("L", 2, 0)),
        (("D", 2, 2), ("R", 2, 2), ("B", 2, 0)),
    ]


def _edge_positions() -> list[tuple[tuple[str, int, int], ...]]:
    return [
        (("U", 0, 1), ("B", 0, 1)),
        (("U", 1, 0), ("L", 0, 1)),
        (("U", 1, 2), ("R", 0, 1)),
        (("U", 2, 1), ("F", 0, 1)),
        (("D", 0, 1), ("F", 2, 1)),
        (("D", 1, 0), ("L", 2, 1)),
        (("D", 1, 2), ("R", 2, 1)),
        (("D", 2, 1), ("B", 2, 1)),
        (("F", 1, 0), ("L", 1, 2)),
        (("F", 1, 2), ("R", 1, 0)),
        (("B", 1, 0), ("R", 1, 2)),
        (("B", 1, 2), ("L", 1, 0)),
    ]


def _piece_permutation(state: CubeState, slots: list[tuple[tuple[str, int, int], ...]]) -> list[int]:
    solved_ids = {
        frozenset(FACE_COLORS[f] for f, _, _ in slot): i for i, slot in enumerate(slots)
    }
    perm = []
    for slot in slots:
        colors = frozenset(state.sticker(f, r, c) for f, r, c in slot)
        perm.append(solved_ids[colors])
    return perm


def _parity(perm: list[int]) -> int:
    seen = [False] * len(perm)
    parity = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def corner_parity(state: CubeState) -> int:
    return _parity(_piece_permutation(state, _corner_positions()))


def edge_parity(state: CubeState) -> int:
    return _parity(_piece_permutation(state, _edge_positions()))
