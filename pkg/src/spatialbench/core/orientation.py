"""The 24-element cube rotation group, generated by ground rolls.

An :class:`Orientation` maps each body face of a cube to the world direction
it currently points toward. Rolling toward a ground direction ``d`` tips the
cube one cell that way: the face pointing up swings toward ``d``, the face
pointing toward ``d`` swings down, and so on around that axis, while the two
perpendicular faces stay put.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from spatialbench.core.directions import CardinalDirection, Face


def _roll_world_permutation(d: CardinalDirection) -> tuple[Face, ...]:
    """World-direction permutation of a single roll toward ``d``.

    Index = old world direction, value = new world direction.
    """
    toward = d.face
    perm = list(Face)
    perm[Face.UP] = toward
    perm[toward] = Face.DOWN
    perm[Face.DOWN] = toward.opposite
    perm[toward.opposite] = Face.UP
    return tuple(perm)


_ROLL_PERMS: dict[CardinalDirection, tuple[Face, ...]] = {
    d: _roll_world_permutation(d) for d in CardinalDirection
}


@dataclass(frozen=True)
class Orientation:
    """Bijection from body faces to world directions.

    ``body_to_world[f]`` is the world direction that body face ``f`` points
    toward. The identity orientation pairs each body face with the world
    direction of the same name.
    """

    body_to_world: tuple[Face, ...]

    def __post_init__(self) -> None:
        if sorted(self.body_to_world) != list(Face):
            raise ValueError("orientation must be a bijection over the six faces")

    @staticmethod
    def identity() -> "Orientation":
        return _IDENTITY

    def roll(self, d: CardinalDirection) -> "Orientation":
        perm = _ROLL_PERMS[d]
        return Orientation(tuple(perm[w] for w in self.body_to_world))

    def compose(self, other: "Orientation") -> "Orientation":
        """Orientation reached by applying ``self`` first, then ``other``."""
        return Orientation(tuple(other.body_to_world[w] for w in self.body_to_world))

    def inverse(self) -> "Orientation":
        inv = [Face.UP] * 6
        for body, world in enumerate(self.body_to_world):
            inv[world] = Face(body)
        return Orientation(tuple(inv))

    def world_direction_of(self, body: Face) -> Face:
        return self.body_to_world[body]

    def body_face_at(self, world: Face) -> Face:
        """The body face currently pointing toward ``world``."""
        return Face(self.body_to_world.index(world))


_IDENTITY = Orientation(tuple(Face))


@lru_cache(maxsize=1)
def all_orientations() -> tuple[Orientation, ...]:
    """The full rotation group: orbit of the identity under rolls."""
    seen: dict[tuple[Face, ...], Orientation] = {}
    frontier = [Orientation.identity()]
    seen[frontier[0].body_to_world] = frontier[0]
    while frontier:
        o = frontier.pop()
        for d in CardinalDirection:
            nxt = o.roll(d)
            if nxt.body_to_world not in seen:
                seen[nxt.body_to_world] = nxt
                frontier.append(nxt)
    return tuple(sorted(seen.values(), key=lambda o: o.body_to_world))
