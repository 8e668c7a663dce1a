"""Training-data synthesis in two stages.

Stage 1 (imagery): random-walk simulation samples: an initial state, a
short legal action sequence, and the exact resulting state. Stage 2
(reasoning): full narrated solutions reconstructed from the ground-truth
plans of freshly generated plan-task instances. Both stages are filtered
against a benchmark manifest by state/action fingerprints before emission.

Every sample is self-consistent under its simulator: replaying the actions
from the initial state reproduces the stored target exactly. That property
is the core guarantee of stage 1 and is re-verified by ``verify_sample``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Iterable

from spatialbench.benchgen.dataset import build_instance
from spatialbench.benchgen.instance import (
    PuzzleInstance,
    cube_roll_state_text,
    fingerprint,
    instance_fingerprints,
    rubiks_state_text,
)
from spatialbench.core.directions import CardinalDirection, Face
from spatialbench.core.orientation import Orientation
from spatialbench.core.palette import PALETTE
from spatialbench.envs import TASKS
from spatialbench.envs import klotski as kl
from spatialbench.envs import mental_rotation as mr
from spatialbench.envs import rubiks as rk
from spatialbench.envs import sokoban as sk
from spatialbench.envs.cube_roll import CUBE_COLORS, RollPath, RollingCubeState
from spatialbench.envs.cube_roll import apply_roll_sequence
from spatialbench.errors import InvalidSolution

_ROTATION_ACTIONS = ("x_cw", "x_ccw", "y_cw", "y_ccw", "z_cw", "z_ccw")


@dataclass(frozen=True)
class ImagerySample:
    """State -> actions -> predicted state, with an optional teacher slot."""

    task: str
    initial: str
    actions: tuple[str, ...]
    target: str
    rationale: str | None
    seed: int

    def to_record(self) -> dict[str, Any]:
        return {
            "task": self.task,
            "initial": self.initial,
            "actions": list(self.actions),
            "target": self.target,
            "rationale": self.rationale,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class TrajectorySample:
    """A narrated correct solution of one plan-task instance."""

    instance_id: str
    task: str
    steps: tuple[dict[str, str], ...]  # before / action / after
    narration: str
    final_answer: str

    def to_record(self) -> dict[str, Any]:
        return {
            "instance_id": self.instance_id,
            "task": self.task,
            "steps": list(self.steps),
            "narration": self.narration,
            "final_answer": self.final_answer,
        }


# -- stage 1: per-environment random walks ------------------------------------


def _cube_roll_state_lines(state: RollingCubeState) -> str:
    colors = {f.label: state.coloring[state.orientation.body_face_at(f)] for f in Face}
    facing = ", ".join(f"{k}={v}" for k, v in sorted(colors.items()))
    return f"cube at {state.position}; faces: {facing}"


def _walk_cube_roll(rng: random.Random, steps: int, seed: int) -> ImagerySample:
    coloring = tuple(rng.sample(CUBE_COLORS, 6))
    start = (rng.randrange(8), rng.randrange(8))
    state = RollingCubeState(Orientation.identity(), start, coloring)
    moves: list[CardinalDirection] = []
    pos = start
    for _ in range(steps):
        legal = []
        for d in CardinalDirection:
            dr, dc = d.delta
            nxt = (pos[0] + dr, pos[1] + dc)
            if 0 <= nxt[0] < 8 and 0 <= nxt[1] < 8:
                legal.append((d, nxt))
        d, pos = legal[rng.randrange(len(legal))]
        moves.append(d)
    final = state
    for i, m in enumerate(moves):
        final = apply_roll_sequence(
            final, RollPath(final.position, (m,))
        )
    coloring_map = {f.label: coloring[f] for f in Face}
    return ImagerySample(
        task="cube_roll",
        initial=cube_roll_state_text(coloring_map, start) + "\n" + _cube_roll_state_lines(state),
        actions=tuple(m.name.lower() for m in moves),
        target=_cube_roll_state_lines(final),
        rationale=None,
        seed=seed,
    )


def _walk_rubiks(rng: random.Random, steps: int, seed: int) -> ImagerySample:
    setup = rk.random_scramble(rng, rng.randint(1, 20))
    state = rk.apply_sequence(rk.CubeState.solved(), setup)
    walk = rk.random_scramble(rng, steps)
    final = rk.apply_sequence(state, walk)
    return ImagerySample(
        task="rubiks",
        initial=rubiks_state_text(list(state.stickers)) + "\n" + state.to_text(),
        actions=tuple(m.notation() for m in walk),
        target=final.to_text(),
        rationale=None,
        seed=seed,
    )


def _walk_mental_rotation(rng: random.Random, steps: int, seed: int) -> ImagerySample:
    assembly = mr.generate_assembly(rng.randrange(2**32), rng.randint(4, 8))
    actions = tuple(rng.choice(_ROTATION_ACTIONS) for _ in range(steps))
    rotated = assembly
    for action in actions:
        axis, sense = action.split("_")
        rotated = rotated.rotated(axis, clockwise=(sense == "cw"))
    return ImagerySample(
        task="mental_rotation",
        initial=mr.assembly_text(assembly),
        actions=actions,
        target=mr.assembly_text(rotated),
        rationale=None,
        seed=seed,
    )


def _sokoban_pool(pool_seed: int, size: int = 24) -> list[sk.SokobanLevel]:
    return [
        sk.generate_level(pool_seed * 10_007 + i, size=6 if i % 2 else 7, tier="easy").level
        for i in range(size)
    ]


def _walk_sokoban(rng: random.Random, steps: int, seed: int, pool: list[sk.SokobanLevel]) -> ImagerySample:
    level = pool[rng.randrange(len(pool))]
    state = level
    actions: list[str] = []
    for _ in range(steps):
        legal = state.legal_moves()
        if not legal:
            break
        m = legal[rng.randrange(len(legal))]
        state = sk.apply_move(state, m)
        actions.append(m)
    if not actions:  # every generated level has at least one legal move
        raise InvalidSolution("random walk produced no moves")
    return ImagerySample(
        task="sokoban",
        initial=level.to_text(),
        actions=tuple(actions),
        target=state.to_text(),
        rationale=None,
        seed=seed,
    )


def _klotski_pool(pool_seed: int, size: int = 24) -> list[kl.KlotskiBoard]:
    return [
        kl.generate_board(pool_seed * 7_919 + i, "easy" if i % 2 else "medium").board
        for i in range(size)
    ]


def _walk_klotski(rng: random.Random, steps: int, seed: int, pool: list[kl.KlotskiBoard]) -> ImagerySample:
    board = pool[rng.randrange(len(pool))]
    state = board
    actions: list[str] = []
    for _ in range(steps):
        legal = kl.legal_moves(state)
        if not legal:
            break
        mv = legal[rng.randrange(len(legal))]
        actions.append(mv.notation(state))
        state = kl.apply_move(state, mv)
    if not actions:
        raise InvalidSolution("random walk produced no moves")
    return ImagerySample(
        task="klotski",
        initial=board.to_text(),
        actions=tuple(actions),
        target=state.to_text(),
        rationale=None,
        seed=seed,
    )


def random_walk_samples(
    env: str, steps_range: tuple[int, int], count: int, seed: int
) -> list[ImagerySample]:
    """``count`` simulator-consistent walk samples for one environment."""
    if env not in TASKS:
        raise ValueError(f"unknown environment {env!r}")
    lo, hi = steps_range
    if not (1 <= lo <= hi <= 8):
        raise ValueError("steps_range must lie within [1, 8]")
    rng = random.Random(f"idf-stage1-{env}-{seed}")
    pool: Any = None
    if env == "sokoban":
        pool = _sokoban_pool(seed)
    elif env == "klotski":
        pool = _klotski_pool(seed)
    out: list[ImagerySample] = []
    for i in range(count):
        steps = rng.randint(lo, hi)
        if env == "cube_roll":
            out.append(_walk_cube_roll(rng, steps, seed + i))
        elif env == "rubiks":
            out.append(_walk_rubiks(rng, steps, seed + i))
        elif env == "mental_rotation":
            out.append(_walk_mental_rotation(rng, steps, seed + i))
        elif env == "sokoban":
            out.append(_walk_sokoban(rng, steps, seed + i, pool))
        else:
            out.append(_walk_klotski(rng, steps, seed + i, pool))
    return out


def verify_sample(sample: ImagerySample) -> bool:
    """Replay the actions in the simulator; target must match exactly."""
    if sample.task == "cube_roll":
        header = sample.initial.splitlines()[0]
        coloring_json, start_part = header.split("|start=")
        coloring = json.loads(coloring_json)
        start = tuple(json.loads(start_part))
        ordered = tuple(coloring[f.label] for f in Face)
        state = RollingCubeState(Orientation.identity(), start, ordered)
        for name in sample.actions:
            d = CardinalDirection[name.upper()]
            state = apply_roll_sequence(state, RollPath(state.position, (d,)))
        return _cube_roll_state_lines(state) == sample.target
    if sample.task == "rubiks":
        stickers = tuple(sample.initial.splitlines()[0].split(","))
        state = rk.CubeState(stickers)
        final = rk.apply_sequence(state, rk.parse_sequence(" ".join(sample.actions)))
        return final.to_text() == sample.target
    if sample.task == "mental_rotation":
        from spatialbench.core.voxel import VoxelSet

        cells = {}
        for line in sample.initial.splitlines():
            coord_part, color = line.split(":")
            x, y, z = (int(v) for v in coord_part.split(","))
            cells[(x, y, z)] = color
        assembly = VoxelSet.from_cells(cells)
        for action in sample.actions:
            axis, sense = action.split("_")
            assembly = assembly.rotated(axis, clockwise=(sense == "cw"))
        return mr.assembly_text(assembly) == sample.target
    if sample.task == "sokoban":
        level = sk.SokobanLevel.from_text(sample.initial)
        return sk.replay(level, list(sample.actions)).to_text() == sample.target
    if sample.task == "klotski":
        board = kl.KlotskiBoard.from_text(sample.initial)
        moves = kl.parse_moves(board, list(sample.actions))
        return kl.replay(board, moves).to_text() == sample.target
    raise ValueError(sample.task)


# -- stage 2: pseudo-reasoning trajectories ------------------------------------


def pseudo_reasoning(instance: PuzzleInstance, solution: list[str] | None = None) -> TrajectorySample:
    """Narrate a validated plan step by step, ending in the answer block."""
    if not instance.is_plan_task:
        raise InvalidSolution("pseudo reasoning is defined for plan tasks only")
    moves = solution if solution is not None else str(instance.data["solution"]).split()
    steps: list[dict[str, str]] = []
    lines: list[str] = []
    if instance.task == "sokoban":
        state = sk.SokobanLevel.from_text(instance.data["board"])
        lines.append("Starting board:")
        lines.append(state.to_text())
        try:
            for mv in moves:
                before = state.to_text()
                state = sk.apply_move(state, mv)
                after = state.to_text()
                steps.append({"before": before, "action": mv, "after": after})
                lines.append(f"Move {mv}:")
                lines.append(after)
            if not state.is_solved():
                raise InvalidSolution("plan replays legally but does not solve the level")
        except Exception as exc:
            raise InvalidSolution(f"solution replay failed: {exc}") from exc
        lines.append("Every box is on a goal now.")
    else:
        board = kl.KlotskiBoard.from_text(instance.data["board"])
        lines.append("Starting board:")
        lines.append(board.to_text())
        try:
            parsed = kl.parse_moves(board, moves)
            for mv, token in zip(parsed, moves):
                before = board.to_text()
                board = kl.apply_move(board, mv)
                after = board.to_text()
                steps.append({"before": before, "action": token, "after": after})
                lines.append(f"Move {token}:")
                lines.append(after)
            if not board.is_solved():
                raise InvalidSolution("plan replays legally but does not park the 2x2 block")
        except InvalidSolution:
            raise
        except Exception as exc:
            raise InvalidSolution(f"solution replay failed: {exc}") from exc
        lines.append("The 2x2 block sits on the exit.")
    answer = " ".join(moves)
    lines.append("```")
    lines.append(answer)
    lines.append("```")
    return TrajectorySample(
        instance_id=instance.id,
        task=instance.task,
        steps=tuple(steps),
        narration="\n".join(lines),
        final_answer=answer,
    )


# -- overlap filtering -----------------------------------------------------------


def sample_fingerprints(sample: ImagerySample | TrajectorySample, instance: PuzzleInstance | None = None) -> set[str]:
    if isinstance(sample, ImagerySample):
        state = sample.initial.splitlines()[0] if sample.task in ("cube_roll", "rubiks") else sample.initial
        actions = " ".join(sample.actions)
        return {
            fingerprint(sample.task, state, actions),
            fingerprint(sample.task, state, ""),
        }
    board = sample.steps[0]["before"] if sample.steps else (instance.data["board"] if instance else "")
    return {fingerprint(sample.task, board, "")}


def filter_overlap(
    samples: list, benchmark: Iterable[PuzzleInstance]
) -> tuple[list, int]:
    """Drop samples whose fingerprints collide with benchmark instances."""
    banned: set[str] = set()
    by_id: dict[str, PuzzleInstance] = {}
    for inst in benchmark:
        banned |= instance_fingerprints(inst)
        by_id[inst.id] = inst
    kept = []
    dropped = 0
    for sample in samples:
        inst = by_id.get(sample.instance_id) if isinstance(sample, TrajectorySample) else None
        if sample_fingerprints(sample, inst) & banned:
            dropped += 1
        else:
            kept.append(sample)
    return kept, dropped


# -- profiles and emission --------------------------------------------------------


@dataclass(frozen=True)
class Stage1Profile:
    total: int = 20_000
    steps_range: tuple[int, int] = (1, 8)
    seed: int = 0

    @property
    def per_task(self) -> int:
        return self.total // len(TASKS)


@dataclass(frozen=True)
class Stage2Profile:
    total: int = 5_000
    seed: int = 0


def synth_stage1(profile: Stage1Profile) -> list[ImagerySample]:
    out: list[ImagerySample] = []
    for task in TASKS:
        out.extend(random_walk_samples(task, profile.steps_range, profile.per_task, profile.seed))
    return out


def synth_stage2(profile: Stage2Profile) -> list[TrajectorySample]:
    """Trajectories narrated from fresh plan-task instances."""
    out: list[TrajectorySample] = []
    rng = random.Random(f"idf-stage2-{profile.seed}")
    half = profile.total - profile.total // 2
    specs = [("sokoban", half), ("klotski", profile.total // 2)]
    for task, count in specs:
        for i in range(count):
            tier = "easy" if rng.random() < 0.7 else "medium"
            seed = profile.seed * 1_000_003 + i * 2 + (task == "klotski")
            inst, _ = build_instance(task, tier, seed, with_assets=False)
            out.append(pseudo_reasoning(inst))
    return out


_STAGE1_SYSTEM = (
    "You simulate spatial systems. Given a state and a sequence of actions, "
    "predict the exact resulting state."
)
_STAGE2_SYSTEM = (
    "You solve spatial puzzles step by step, writing out each intermediate "
    "state, and finish with the final answer in a fenced code block."
)


def _stage1_record(sample: ImagerySample) -> dict[str, Any]:
    user = (
        f"Environment: {sample.task}\n"
        f"Initial state:\n{sample.initial}\n"
        f"Actions: {' '.join(sample.actions)}\n"
        "Give the resulting state."
    )
    assistant = sample.target
    if sample.rationale:
        assistant = f"{sample.rationale}\n\n{sample.target}"
    return {
        "messages": [
            {"role": "system", "content": _STAGE1_SYSTEM},
            {"role": "user", "content": user},
            {"role": "assistant", "content": assistant},
        ],
        "meta": sample.to_record(),
    }


def _stage2_record(sample: TrajectorySample) -> dict[str, Any]:
    first = sample.steps[0]["before"] if sample.steps else ""
    user = (
        f"Environment: {sample.task}\n"
        f"Board:\n{first}\n"
        "Solve the puzzle; show your plan and end with the move sequence in a fenced code block."
    )
    return {
        "messages": [
            {"role": "system", "content": _STAGE2_SYSTEM},
            {"role": "user", "content": user},
            {"role": "assistant", "content": sample.narration},
        ],
        "meta": {"instance_id": sample.instance_id, "task": sample.task},
    }


def emit_sft(samples: list, out_path: Path) -> Path:
    """Line-delimited chat records with a stable field order."""
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        for sample in samples:
            record = (
                _stage1_record(sample)
                if isinstance(sample, ImagerySample)
                else _stage2_record(sample)
            )
            fh.write(json.dumps(record, sort_keys=True, separators=(",", ":"), ensure_ascii=False))
            fh.write("\n")
    return out_path


def fill_rationales(samples: list[ImagerySample], gateway: Any, token_cap: int = 2048) -> list[ImagerySample]:
    """Optional teacher pass: ask a gateway to narrate each prediction.

    Offline builds skip this; the rationale slot stays empty.
    """
    from spatialbench.benchgen.prompts import ModalityBundle

    filled = []
    for sample in samples:
        prompt = (
            f"Explain, step by step, how this {sample.task} state evolves under "
            f"the actions {' '.join(sample.actions)}, then state the final state.\n"
            f"Initial state:\n{sample.initial}"
        )
        bundle = ModalityBundle("TQA", ({"kind": "text", "text": prompt},), "")
        response = gateway.send(bundle, token_cap)
        filled.append(replace(sample, rationale=response.text))
    return filled
