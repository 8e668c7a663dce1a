"""One benchmark item and its stable serialized form."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

from spatialbench.envs import CATEGORY_BY_TASK, PLAN_TASKS, TASKS


@dataclass(frozen=True)
class PuzzleInstance:
    """A graded benchmark item.

    ``data`` holds the full task-specific state (enough to re-validate the
    ground truth in the simulator); ``renditions`` hold the frozen prompt
    texts and, when the task renders, relative image paths.
    """

    id: str
    task: str
    category: str
    tier: str
    complexity: float
    seed: int
    terse: str
    symbolic: str | None
    detailed: str | None
    images: tuple[str, ...]
    data: dict[str, Any]

    def __post_init__(self) -> None:
        if self.task not in TASKS:
            raise ValueError(f"unknown task {self.task!r}")
        if self.category != CATEGORY_BY_TASK[self.task]:
            raise ValueError("category does not match the task family")

    @property
    def optimal_length(self) -> int | None:
        return self.data.get("optimal_length")

    @property
    def is_plan_task(self) -> bool:
        return self.task in PLAN_TASKS

    def to_record(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "task": self.task,
            "category": self.category,
            "tier": self.tier,
            "complexity": self.complexity,
            "seed": self.seed,
            "renditions": {
                "terse": self.terse,
                "symbolic": self.symbolic,
                "detailed": self.detailed,
                "images": list(self.images),
            },
            "data": self.data,
        }

    @staticmethod
    def from_record(record: dict[str, Any]) -> "PuzzleInstance":
        rend = record["renditions"]
        return PuzzleInstance(
            id=record["id"],
            task=record["task"],
            category=record["category"],
            tier=record["tier"],
            complexity=record["complexity"],
            seed=record["seed"],
            terse=rend["terse"],
            symbolic=rend["symbolic"],
            detailed=rend["detailed"],
            images=tuple(rend["images"]),
            data=record["data"],
        )


def stable_hash(*parts: Any) -> str:
    blob = json.dumps(parts, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def instance_id(task: str, seed: int, generator_version: str) -> str:
    return stable_hash("instance", task, seed, generator_version)[:16]


def child_seed(dataset_seed: int, task: str, tier: str, index: int) -> int:
    digest = hashlib.sha256(f"{dataset_seed}:{task}:{tier}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def cube_roll_state_text(coloring: dict[str, str], start: list[int] | tuple[int, int]) -> str:
    return f"{json.dumps(coloring, sort_keys=True)}|start={list(start)}"


def rubiks_state_text(stickers: list[str] | tuple[str, ...]) -> str:
    return ",".join(stickers)


def canonical_state_text(task: str, data: dict[str, Any]) -> str:
    """Canonical initial-state string shared with the overlap filter."""
    if task == "cube_roll":
        return cube_roll_state_text(data["coloring"], data["start"])
    if task == "rubiks":
        from spatialbench.envs.rubiks import CubeState

        return rubiks_state_text(list(CubeState.solved().stickers))
    if task == "mental_rotation":
        return data["assembly"]
    if task in ("sokoban", "klotski"):
        return data["board"]
    raise ValueError(task)


def canonical_actions_text(task: str, data: dict[str, Any]) -> str:
    if task == "cube_roll":
        return data["moves"]
    if task == "rubiks":
        return data["scramble"]
    return ""


def fingerprint(task: str, state_text: str, actions_text: str) -> str:
    return stable_hash("fingerprint", task, state_text, actions_text)


def instance_fingerprints(inst: PuzzleInstance) -> set[str]:
    """Fingerprints a training sample must avoid: the exact item and a
    state-only variant (conservative overlap test)."""
    state = canonical_state_text(inst.task, inst.data)
    actions = canonical_actions_text(inst.task, inst.data)
    return {
        fingerprint(inst.task, state, actions),
        fingerprint(inst.task, state, ""),
    }
