"""Grading: exact match for deterministic tasks, simulator replay for plans.

Plan answers are accepted whenever they are fully legal and reach the goal;
optimality is never required.
"""

from __future__ import annotations

from typing import Any

from spatialbench.benchgen.instance import PuzzleInstance
from spatialbench.envs import klotski as kl
from spatialbench.envs import sokoban as sk
from spatialbench.errors import IllegalMove
from spatialbench.evalharness.parsing import UNPARSEABLE


def grade(instance: PuzzleInstance, answer: Any) -> bool:
    if answer == UNPARSEABLE or answer is None:
        return False
    task = instance.task
    if task in ("cube_roll", "rubiks"):
        return answer == instance.data["answer"]
    if task == "mental_rotation":
        want = [
            [c if c is not None else None for c in row]
            for row in instance.data["answer_grid"]
        ]
        return answer == want
    if task == "sokoban":
        level = sk.SokobanLevel.from_text(instance.data["board"])
        try:
            final = sk.replay(level, answer)
        except IllegalMove:
            return False
        return final.is_solved()
    if task == "klotski":
        board = kl.KlotskiBoard.from_text(instance.data["board"])
        try:
            moves = kl.parse_moves(board, answer)
            final = kl.replay(board, moves)
        except IllegalMove:
            return False
        return final.is_solved()
    raise ValueError(f"unknown task {task!r}")
