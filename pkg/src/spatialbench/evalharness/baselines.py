"""Chance-level baselines for the deterministic tasks."""

from __future__ import annotations

import json
from collections import Counter

from spatialbench.benchgen.instance import PuzzleInstance
from spatialbench.envs import PLAN_TASKS
from spatialbench.errors import UnsupportedTask


def _label(inst: PuzzleInstance) -> str:
    if inst.task in ("cube_roll", "rubiks"):
        return str(inst.data["answer"])
    if inst.task == "mental_rotation":
        return json.dumps(inst.data["answer_grid"])
    raise UnsupportedTask(f"no answer label for plan task {inst.task!r}")


def baseline_frequency(instances: list[PuzzleInstance]) -> float:
    """Accuracy of always answering the dataset's most frequent label."""
    if not instances:
        raise ValueError("empty dataset")
    if any(i.task in PLAN_TASKS for i in instances):
        raise UnsupportedTask("frequency baseline is undefined for plan tasks")
    counts = Counter(_label(i) for i in instances)
    return counts.most_common(1)[0][1] / len(instances)


def baseline_random(instances: list[PuzzleInstance]) -> float:
    """Expected accuracy of a uniform guess over each item's answer space.

    Defined for the color-answer tasks (six equally likely colors). Mental
    rotation's answer space is astronomically large, so its random baseline
    is treated as zero by convention.
    """
    if not instances:
        raise ValueError("empty dataset")
    if any(i.task in PLAN_TASKS for i in instances):
        raise UnsupportedTask("random baseline is undefined for plan tasks")
    total = 0.0
    for inst in instances:
        if inst.task in ("cube_roll", "rubiks"):
            total += 1 / 6
        else:
            total += 0.0
    return total / len(instances)
