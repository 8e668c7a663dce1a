"""Dataset construction: per-task instance builders and serialization.

A dataset directory contains ``manifest.jsonl`` (one instance per line,
UTF-8, LF, sorted keys), ``dataset.json`` (generation metadata) and
``assets/{task}/`` with the rendered SVG images. Identical seeds and
generator version reproduce identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from spatialbench import GENERATOR_VERSION
from spatialbench.benchgen import render
from spatialbench.benchgen.instance import PuzzleInstance, child_seed, instance_id
from spatialbench.benchgen.prompts import AXIS_PHRASE, render_template
from spatialbench.core.directions import Face
from spatialbench.envs import CATEGORY_BY_TASK, TASKS, TIERS
from spatialbench.envs import cube_roll as cr
from spatialbench.envs import klotski as kl
from spatialbench.envs import mental_rotation as mr
from spatialbench.envs import rubiks as rk
from spatialbench.envs import sokoban as sk

Assets = dict[str, bytes]


def _build_cube_roll(seed: int, tier: str, with_assets: bool = True) -> tuple[PuzzleInstance, Assets]:
    inst = cr.generate_instance(seed, tier)
    iid = instance_id("cube_roll", seed, GENERATOR_VERSION)
    colors = {f.label: inst.state.coloring[f] for f in Face}
    moves_text = " ".join(m.name.lower() for m in inst.path.moves)
    symbolic = render_template(
        "cube_roll_tqa",
        size=inst.state.board_size,
        max_rc=inst.state.board_size - 1,
        start_row=inst.path.start[0],
        start_col=inst.path.start[1],
        moves=moves_text,
        query=inst.query.label,
        **colors,
    )
    terse = render_template("cube_roll_vqa", query=inst.query.label)
    image_path = f"assets/cube_roll/{iid}_board.svg"
    data = {
        "board_size": inst.state.board_size,
        "start": list(inst.path.start),
        "coloring": colors,
        "moves": moves_text,
        "query": inst.query.label,
        "answer": inst.answer,
    }
    instance = PuzzleInstance(
        id=iid,
        task="cube_roll",
        category=CATEGORY_BY_TASK["cube_roll"],
        tier=tier,
        complexity=inst.tortuosity,
        seed=seed,
        terse=terse,
        symbolic=symbolic,
        detailed=symbolic,
        images=(image_path,),
        data=data,
    )
    assets = {image_path: render.cube_roll_svg(inst).encode()} if with_assets else {}
    return instance, assets


def _build_rubiks(seed: int, tier: str, with_assets: bool = True) -> tuple[PuzzleInstance, Assets]:
    inst = rk.generate_instance(seed, tier)
    iid = instance_id("rubiks", seed, GENERATOR_VERSION)
    scramble = rk.format_sequence(inst.scramble)
    face, row, col = inst.query
    symbolic = render_template("rubiks_tqa", scramble=scramble, face=face, row=row, col=col)
    terse = render_template("rubiks_vqa", scramble=scramble, face=face, row=row, col=col)
    image_path = f"assets/rubiks/{iid}_net.svg"
    data = {
        "scramble": scramble,
        "query": [face, row, col],
        "answer": inst.answer,
        "final_state": list(inst.final_state.stickers),
    }
    instance = PuzzleInstance(
        id=iid,
        task="rubiks",
        category=CATEGORY_BY_TASK["rubiks"],
        tier=tier,
        complexity=float(len(inst.scramble)),
        seed=seed,
        terse=terse,
        symbolic=symbolic,
        detailed=symbolic,
        images=(image_path,),
        data=data,
    )
    assets = {image_path: render.rubiks_svg(rk.CubeState.solved()).encode()} if with_assets else {}
    return instance, assets


def _build_mental_rotation(seed: int, tier: str, with_assets: bool = True) -> tuple[PuzzleInstance, Assets]:
    inst = mr.generate_instance(seed, tier)
    iid = instance_id("mental_rotation", seed, GENERATOR_VERSION)
    phrase, frame = AXIS_PHRASE[inst.query_axis]
    terse = render_template(
        "mental_rotation_vqa",
        n=inst.n_cubes,
        axis_phrase=phrase,
        frame=frame,
        rows=inst.answer.rows,
        cols=inst.answer.cols,
    )
    image_paths = tuple(
        f"assets/mental_rotation/{iid}_view{i}.svg" for i in range(8)
    )
    data = {
        "assembly": mr.assembly_text(inst.assembly),
        "query_axis": inst.query_axis,
        "answer_grid": [list(row) for row in inst.answer.cells],
        "n_cubes": inst.n_cubes,
    }
    instance = PuzzleInstance(
        id=iid,
        task="mental_rotation",
        category=CATEGORY_BY_TASK["mental_rotation"],
        tier=tier,
        complexity=float(inst.n_cubes),
        seed=seed,
        terse=terse,
        symbolic=None,
        detailed=None,
        images=image_paths,
        data=data,
    )
    if not with_assets:
        return instance, {}
    views = mr.render_views(inst.assembly)
    assets = {path: svg.encode() for path, svg in zip(image_paths, views)}
    return instance, assets


def _build_sokoban(seed: int, tier: str, with_assets: bool = True) -> tuple[PuzzleInstance, Assets]:
    size = 7 if tier == "hard" else (6 if seed % 2 == 0 else 7)
    gen = sk.generate_level(seed, size=size, tier=tier)
    iid = instance_id("sokoban", seed, GENERATOR_VERSION)
    board = gen.level.to_text()
    symbolic = render_template("sokoban_tqa", board=board)
    terse = render_template("sokoban_vqa")
    image_path = f"assets/sokoban/{iid}_board.svg"
    data = {
        "board": board,
        "solution": " ".join(gen.solution),
        "optimal_length": gen.optimal_length,
        "difficulty_score": gen.score,
    }
    instance = PuzzleInstance(
        id=iid,
        task="sokoban",
        category=CATEGORY_BY_TASK["sokoban"],
        tier=tier,
        complexity=gen.score,
        seed=seed,
        terse=terse,
        symbolic=symbolic,
        detailed=symbolic,
        images=(image_path,),
        data=data,
    )
    assets = {image_path: render.sokoban_svg(gen.level).encode()} if with_assets else {}
    return instance, assets


def _build_klotski(seed: int, tier: str, with_assets: bool = True) -> tuple[PuzzleInstance, Assets]:
    gen = kl.generate_board(seed, tier)
    iid = instance_id("klotski", seed, GENERATOR_VERSION)
    board_text = gen.board.to_text()
    big_index = next(i for i, (s, _) in enumerate(gen.board.blocks) if s == "b")
    big_letter = gen.board.letter_of(big_index)
    symbolic = render_template("klotski_tqa", board=board_text, big_letter=big_letter)
    terse = render_template("klotski_vqa", big_letter=big_letter)
    image_path = f"assets/klotski/{iid}_board.svg"
    data = {
        "board": board_text,
        "solution": " ".join(gen.solution),
        "optimal_length": gen.optimal_length,
        "big_letter": big_letter,
    }
    instance = PuzzleInstance(
        id=iid,
        task="klotski",
        category=CATEGORY_BY_TASK["klotski"],
        tier=tier,
        complexity=float(gen.optimal_length),
        seed=seed,
        terse=terse,
        symbolic=symbolic,
        detailed=symbolic,
        images=(image_path,),
        data=data,
    )
    assets = {image_path: render.klotski_svg(gen.board).encode()} if with_assets else {}
    return instance, assets


_BUILDERS = {
    "cube_roll": _build_cube_roll,
    "rubiks": _build_rubiks,
    "mental_rotation": _build_mental_rotation,
    "sokoban": _build_sokoban,
    "klotski": _build_klotski,
}


def build_instance(
    task: str, tier: str, seed: int, with_assets: bool = True
) -> tuple[PuzzleInstance, Assets]:
    """Build one instance; ``with_assets=False`` skips SVG rendering (the
    instance still lists its image paths, for callers that only need TQA)."""
    return _BUILDERS[task](seed, tier, with_assets)


@dataclass(frozen=True)
class DatasetProfile:
    """How many instances to build per (task, tier)."""

    name: str = "default"
    counts: dict[str, dict[str, int]] = field(default_factory=dict)
    seed: int = 0

    @staticmethod
    def default(seed: int, count_per_cell: int = 10, tasks: tuple[str, ...] = TASKS, tiers: tuple[str, ...] = TIERS) -> "DatasetProfile":
        counts = {task: {tier: count_per_cell for tier in tiers} for task in tasks}
        return DatasetProfile(name="default", counts=counts, seed=seed)

    @staticmethod
    def human_baseline(seed: int) -> "DatasetProfile":
        """30 questions per task, split evenly across the three tiers."""
        counts = {task: {tier: 10 for tier in TIERS} for task in TASKS}
        return DatasetProfile(name="human-baseline", counts=counts, seed=seed)


def generate_dataset(profile: DatasetProfile) -> tuple[list[PuzzleInstance], Assets]:
    instances: list[PuzzleInstance] = []
    assets: Assets = {}
    for task in sorted(profile.counts):
        for tier in sorted(profile.counts[task]):
            for index in range(profile.counts[task][tier]):
                seed = child_seed(profile.seed, task, tier, index)
                inst, inst_assets = build_instance(task, tier, seed)
                instances.append(inst)
                assets.update(inst_assets)
    ids = [i.id for i in instances]
    if len(set(ids)) != len(ids):
        raise ValueError("instance id collision inside one dataset")
    instances.sort(key=lambda i: (i.task, i.tier, i.id))
    return instances, assets


def _dump_record(record: dict[str, Any]) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def emit_dataset(
    instances: list[PuzzleInstance],
    assets: Assets,
    out_dir: Path,
    profile: DatasetProfile,
) -> Path:
    """Write manifest, metadata and image assets; returns the manifest path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = out_dir / "manifest.jsonl"
    with open(manifest, "w", encoding="utf-8", newline="\n") as fh:
        for inst in instances:
            fh.write(_dump_record(inst.to_record()))
            fh.write("\n")

    per_tier: dict[str, dict[str, int]] = {}
    for inst in instances:
        per_tier.setdefault(inst.task, {}).setdefault(inst.tier, 0)
        per_tier[inst.task][inst.tier] += 1
    metadata = {
        "generator_version": GENERATOR_VERSION,
        "profile": profile.name,
        "seed": profile.seed,
        "counts": per_tier,
        "n_instances": len(instances),
    }
    with open(out_dir / "dataset.json", "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(metadata, sort_keys=True, indent=2, ensure_ascii=False))
        fh.write("\n")

    for rel_path, blob in sorted(assets.items()):
        path = out_dir / rel_path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(blob)
    return manifest


def load_manifest(dataset_dir: Path) -> list[PuzzleInstance]:
    manifest = Path(dataset_dir) / "manifest.jsonl"
    out = []
    with open(manifest, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                out.append(PuzzleInstance.from_record(json.loads(line)))
    return out


def load_metadata(dataset_dir: Path) -> dict[str, Any]:
    with open(Path(dataset_dir) / "dataset.json", encoding="utf-8") as fh:
        return json.load(fh)
