"""Ground-plane directions and the six cube face labels.

``Face`` doubles as a body-face label (a fixed side of the cube object) and
a world direction (where that side currently points); orientations map one
onto the other.
"""

from __future__ import annotations

from enum import IntEnum


class Face(IntEnum):
    UP = 0
    DOWN = 1
    NORTH = 2
    SOUTH = 3
    EAST = 4
    WEST = 5

    @property
    def opposite(self) -> "Face":
        return _OPPOSITE[self]

    @property
    def label(self) -> str:
        return self.name.lower()


_OPPOSITE = {
    Face.UP: Face.DOWN,
    Face.DOWN: Face.UP,
    Face.NORTH: Face.SOUTH,
    Face.SOUTH: Face.NORTH,
    Face.EAST: Face.WEST,
    Face.WEST: Face.EAST,
}


class CardinalDirection(IntEnum):
    """Rolling / walking direction on the ground plane."""

    NORTH = 0
    EAST = 1
    SOUTH = 2
    WEST = 3

    @property
    def opposite(self) -> "CardinalDirection":
        return CardinalDirection((self + 2) % 4)

    @property
    def turned_left(self) -> "CardinalDirection":
        return CardinalDirection((self - 1) % 4)

    @property
    def face(self) -> Face:
        return _CARDINAL_FACE[self]

    @property
    def letter(self) -> str:
        return self.name[0]

    @property
    def delta(self) -> tuple[int, int]:
        """(drow, dcol) on a grid whose row 0 is the northern edge."""
        return _DELTA[self]

    @classmethod
    def from_letter(cls, letter: str) -> "CardinalDirection":
        try:
            return _BY_LETTER[letter.upper()]
        except KeyError:
            raise ValueError(f"unknown direction letter: {letter!r}") from None


_CARDINAL_FACE = {
    CardinalDirection.NORTH: Face.NORTH,
    CardinalDirection.EAST: Face.EAST,
    CardinalDirection.SOUTH: Face.SOUTH,
    CardinalDirection.WEST: Face.WEST,
}

_DELTA = {
    CardinalDirection.NORTH: (-1, 0),
    CardinalDirection.EAST: (0, 1),
    CardinalDirection.SOUTH: (1, 0),
    CardinalDirection.WEST: (0, -1),
}

_BY_LETTER = {d.letter: d for d in CardinalDirection}
