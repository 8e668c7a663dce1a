"""Acceptance suite: one test per release criterion, at its stated tolerance.

Each test prints a single PASS line when its criterion holds (run with
``pytest tests/test_acceptance.py -v -s``). The suite uses only the public
package plus independent oracles defined inline; no network access.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import deque

import pytest

from spatialbench.benchgen import DatasetProfile, emit_dataset, generate_dataset
from spatialbench.benchgen.dataset import build_instance
from spatialbench.benchgen.instance import child_seed
from spatialbench.core.directions import CardinalDirection, Face
from spatialbench.core.orientation import Orientation, all_orientations
from spatialbench.core.palette import DICE_COLORING
from spatialbench.core.projection import Viewpoint, isometric_project, orthographic_project
from spatialbench.core.voxel import VoxelSet
from spatialbench.envs import TIERS
from spatialbench.envs import klotski as kl
from spatialbench.envs import mental_rotation as mr
from spatialbench.envs import rubiks as rk
from spatialbench.envs import sokoban as sk
from spatialbench.envs.cube_roll import apply_roll_sequence, generate_instance as gen_cube_roll
from spatialbench.errors import IllegalMove
from spatialbench.evalharness import (
    OracleGateway,
    RandomGateway,
    aggregate,
    baseline_frequency,
    baseline_random,
    run_eval,
)
from spatialbench.idf import (
    ImagerySample,
    Stage1Profile,
    Stage2Profile,
    filter_overlap,
    synth_stage1,
    synth_stage2,
    verify_sample,
)


def _report(name: str, elapsed: float, limit: float | None = None) -> None:
    budget = f" (limit {limit:.0f}s)" if limit else ""
    print(f"\nACCEPTANCE PASS: {name} in {elapsed:.1f}s{budget}")


# --- criterion 1: rotation group ------------------------------------------------


def _dice_oracle(moves: list[CardinalDirection]) -> dict[Face, str]:
    world = {Face(i): DICE_COLORING[i] for i in range(6)}
    for m in moves:
        w = dict(world)
        toward = m.face
        w[toward] = world[Face.UP]
        w[Face.DOWN] = world[toward]
        w[toward.opposite] = world[Face.DOWN]
        w[Face.UP] = world[toward.opposite]
        world = w
    return world


def test_c1_rotation_group_suite():
    start = time.perf_counter()
    assert len(all_orientations()) == 24

    for o in all_orientations():
        for d in CardinalDirection:
            assert o.roll(d).roll(d.opposite) == o
            r = o
            for _ in range(4):
                r = r.roll(d)
            assert r == o

    rng = random.Random(161803)
    for _ in range(1000):
        moves = [rng.choice(list(CardinalDirection)) for _ in range(rng.randint(0, 24))]
        o = Orientation.identity()
        for m in moves:
            o = o.roll(m)
        got = {w: DICE_COLORING[o.body_face_at(w)] for w in Face}
        assert got == _dice_oracle(moves)

    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    _report("rotation-group suite", elapsed, 1.0)


# --- criterion 2: sticker machine ------------------------------------------------


def test_c2_rubiks_suite():
    start = time.perf_counter()
    solved = rk.CubeState.solved()
    centers = [solved.sticker(f, 1, 1) for f in rk.FACES]

    rng = random.Random(271828)
    for _ in range(10_000):
        state = rk.apply_sequence(solved, rk.random_scramble(rng, rng.randint(1, 12)))
        counts = state.color_counts()
        assert sorted(counts.values()) == [9] * 6
        assert [state.sticker(f, 1, 1) for f in rk.FACES] == centers

    for f in rk.FACES:
        quarter = rk.FaceMove(f, 1)
        state = solved
        for _ in range(4):
            state = rk.apply_move(state, quarter)
        assert state == solved
        assert rk.apply_move(rk.apply_move(solved, quarter), quarter.inverse) == solved

    assert rk.permutation_order(rk.sequence_permutation(rk.parse_sequence("R U"))) == 105
    assert rk.permutation_order(rk.sequence_permutation(rk.parse_sequence("R U R' U'"))) == 6

    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    _report("sticker-machine suite", elapsed, 5.0)


# --- criterion 3: solver-oracle equivalence --------------------------------------


def _sokoban_bfs(level: sk.SokobanLevel) -> int | None:
    if level.is_solved():
        return 0
    seen = {(level.boxes, level.player)}
    queue = deque([(level, 0)])
    while queue:
        state, d = queue.popleft()
        for m in sk.MOVE_ORDER:
            try:
                nxt = sk.apply_move(state, m)
            except IllegalMove:
                continue
            key = (nxt.boxes, nxt.player)
            if key in seen:
                continue
            seen.add(key)
            if nxt.is_solved():
                return d + 1
            queue.append((nxt, d + 1))
    return None


def _klotski_identity_bfs(board: kl.KlotskiBoard) -> int | None:
    shapes = tuple(s for s, _ in board.blocks)
    deltas = {"U": (-1, 0), "D": (1, 0), "L": (0, -1), "R": (0, 1)}

    def solved(anchors):
        return anchors[shapes.index("b")] == kl.EXIT_ANCHOR

    start = tuple(a for _, a in board.blocks)
    if solved(start):
        return 0
    seen = {start}
    queue = deque([(start, 0)])
    while queue:
        anchors, d = queue.popleft()
        occ = set()
        for shape, (r, c) in zip(shapes, anchors):
            occ.update((r + dr, c + dc) for dr, dc in kl.SHAPES[shape])
        for i, shape in enumerate(shapes):
            r, c = anchors[i]
            own = {(r + dr, c + dc) for dr, dc in kl.SHAPES[shape]}
            for dr, dc in deltas.values():
                ok = True
                for a, b in kl.SHAPES[shape]:
                    cell = (r + a + dr, c + b + dc)
                    if not (0 <= cell[0] < kl.HEIGHT and 0 <= cell[1] < kl.WIDTH) or (
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
                if solved(nxt):
                    return d + 1
                queue.append((nxt, d + 1))
    return None


def _random_sparse_board(rng: random.Random) -> kl.KlotskiBoard:
    while True:
        big = (rng.randrange(kl.HEIGHT - 1), rng.randrange(kl.WIDTH - 1))
        taken = {(big[0] + dr, big[1] + dc) for dr, dc in kl.SHAPES["b"]}
        blocks = [("b", big)]
        for _ in range(rng.randint(0, 5)):
            shape = rng.choice(("s", "h", "v"))
            anchor = (rng.randrange(kl.HEIGHT), rng.randrange(kl.WIDTH))
            cells = [(anchor[0] + dr, anchor[1] + dc) for dr, dc in kl.SHAPES[shape]]
            if any(
                not (0 <= r < kl.HEIGHT and 0 <= c < kl.WIDTH) or (r, c) in taken
                for r, c in cells
            ):
                continue
            taken.update(cells)
            blocks.append((shape, anchor))
        if len(taken) <= kl.WIDTH * kl.HEIGHT - 2:
            return kl.KlotskiBoard(tuple(sorted(blocks, key=lambda b: b[1])))


def test_c3_solver_oracle_equivalence():
    start = time.perf_counter()

    checked = 0
    seed = 0
    while checked < 200:
        tier = "easy" if checked % 2 else "medium"
        gen = sk.generate_level(90_000 + seed, size=6 if seed % 2 else 7, tier=tier)
        seed += 1
        if len(gen.level.boxes) > 2:
            continue
        assert _sokoban_bfs(gen.level) == gen.optimal_length
        checked += 1

    rng = random.Random(314159)
    for _ in range(100):
        board = _random_sparse_board(rng)
        assert len(board.blocks) <= 6
        oracle = _klotski_identity_bfs(board)
        result = kl.solve(board)
        if oracle is None:
            assert result.status == "unsolvable"
        else:
            assert result.status == "solved" and result.length == oracle

    elapsed = time.perf_counter() - start
    assert elapsed < 120.0
    _report("solver-oracle equivalence", elapsed, 120.0)


# --- criterion 4: generation soundness --------------------------------------------


def test_c4_generation_soundness():
    start = time.perf_counter()

    n = 0
    for i in range(500):
        tier = TIERS[i % 3]
        size = 7 if tier == "hard" else (6 if i % 2 else 7)
        gen = sk.generate_level(10_000 + i, size=size, tier=tier)
        assert sk.replay(gen.level, gen.solution).is_solved()
        n += 1
    assert n == 500

    for i in range(300):
        gen = kl.generate_board(20_000 + i, TIERS[i % 3])
        moves = kl.parse_moves(gen.board, list(gen.solution))
        assert kl.replay(gen.board, moves).is_solved()

    for i in range(1000):
        inst = gen_cube_roll(30_000 + i, TIERS[i % 3])
        final = apply_roll_sequence(inst.state, inst.path)
        assert final.color_facing(inst.query) == inst.answer

    for i in range(1000):
        inst = rk.generate_instance(40_000 + i, TIERS[i % 3])
        final = rk.apply_sequence(rk.CubeState.solved(), inst.scramble)
        assert final == inst.final_state
        face, row, col = inst.query
        assert final.sticker(face, row, col) == inst.answer

    for i in range(1000):
        inst = mr.generate_instance(50_000 + i, TIERS[i % 3])
        grid = orthographic_project(inst.assembly, Viewpoint.orthographic(inst.query_axis))
        assert grid == inst.answer
        views = [isometric_project(inst.assembly, Viewpoint.isometric(c)) for c in range(8)]
        assert (
            mr.uniqueness_check(views, Viewpoint.orthographic(inst.query_axis)) == mr.UNIQUE
        )

    elapsed = time.perf_counter() - start
    assert elapsed < 300.0
    _report("generation soundness (500+300+3x1000 instances)", elapsed, 300.0)


# --- criterion 5: baseline reproduction ---------------------------------------------


def _light_instances(task: str, count: int, base_seed: int):
    out = []
    for i in range(count):
        inst, _ = build_instance(task, TIERS[i % 3], base_seed + i, with_assets=False)
        out.append(inst)
    return out


def test_c5_baseline_reproduction():
    start = time.perf_counter()

    cube = _light_instances("cube_roll", 10_000, 60_000)
    cubes_records = run_eval(
        RandomGateway.for_dataset(cube, seed=1), cube, "TQA", parallelism=8
    )
    cube_acc = sum(r.correct for r in cubes_records) / len(cubes_records)
    assert abs(cube_acc - 1 / 6) < 0.015, cube_acc

    rub = _light_instances("rubiks", 10_000, 70_000)
    rub_records = run_eval(
        RandomGateway.for_dataset(rub, seed=2), rub, "TQA", parallelism=8
    )
    rub_acc = sum(r.correct for r in rub_records) / len(rub_records)
    assert abs(rub_acc - 1 / 6) < 0.015, rub_acc

    for dataset in (cube, rub, cube[:500] + rub[:500]):
        assert baseline_frequency(dataset) >= baseline_random(dataset)

    elapsed = time.perf_counter() - start
    _report(
        f"baseline reproduction (random {cube_acc:.3f}/{rub_acc:.3f} vs 0.167)", elapsed
    )


# --- criterion 6: difficulty monotonicity -----------------------------------------


def test_c6_difficulty_monotonicity():
    start = time.perf_counter()
    per_tier = 200

    means = []
    for t, tier in enumerate(TIERS):
        size = 7 if tier == "hard" else 6
        lens = [
            sk.generate_level(100_000 + t * per_tier + i, size=size, tier=tier).optimal_length
            for i in range(per_tier)
        ]
        means.append(sum(lens) / per_tier)
    assert means[0] < means[1] < means[2], means

    means = []
    for t, tier in enumerate(TIERS):
        lens = [
            kl.generate_board(110_000 + t * per_tier + i, tier).optimal_length
            for i in range(per_tier)
        ]
        means.append(sum(lens) / per_tier)
    assert means[0] < means[1] < means[2], means

    means = []
    for t, tier in enumerate(TIERS):
        vals = [
            gen_cube_roll(120_000 + t * per_tier + i, tier).tortuosity
            for i in range(per_tier)
        ]
        means.append(sum(vals) / per_tier)
    assert means[0] < means[1] < means[2], means

    means = []
    for t, tier in enumerate(TIERS):
        vals = [
            len(rk.generate_instance(130_000 + t * per_tier + i, tier).scramble)
            for i in range(per_tier)
        ]
        means.append(sum(vals) / per_tier)
    assert means[0] < means[1] < means[2], means

    means = []
    for t, tier in enumerate(TIERS):
        vals = [
            mr.generate_instance(140_000 + t * per_tier + i, tier).n_cubes
            for i in range(per_tier)
        ]
        means.append(sum(vals) / per_tier)
    assert means[0] < means[1] < means[2], means

    elapsed = time.perf_counter() - start
    assert elapsed < 120.0
    _report("difficulty monotonicity (200 per tier per task)", elapsed, 120.0)


# --- criterion 7: determinism -------------------------------------------------------


def test_c7_dataset_determinism(tmp_path):
    start = time.perf_counter()
    profile = DatasetProfile.default(seed=42, count_per_cell=10)
    instances_a, assets_a = generate_dataset(profile)
    instances_b, assets_b = generate_dataset(profile)
    assert instances_a == instances_b

    emit_dataset(instances_a, assets_a, tmp_path / "a", profile)
    emit_dataset(instances_b, assets_b, tmp_path / "b", profile)
    manifest_a = (tmp_path / "a" / "manifest.jsonl").read_bytes()
    manifest_b = (tmp_path / "b" / "manifest.jsonl").read_bytes()
    assert manifest_a == manifest_b
    assert set(assets_a) == set(assets_b)
    for rel in assets_a:
        assert (tmp_path / "a" / rel).read_bytes() == (tmp_path / "b" / rel).read_bytes()

    elapsed = time.perf_counter() - start
    _report(f"byte-identical regeneration ({len(instances_a)} instances)", elapsed)


# --- criterion 8: training-data synthesis -------------------------------------------


def test_c8_idf_suite():
    start = time.perf_counter()

    stage1 = synth_stage1(Stage1Profile(total=20_000, seed=5))
    assert len(stage1) == 20_000
    per_task: dict[str, list[ImagerySample]] = {}
    for sample in stage1:
        per_task.setdefault(sample.task, []).append(sample)
    assert all(len(v) == 4_000 for v in per_task.values())

    for task, samples in per_task.items():
        for sample in samples[:1000]:
            assert verify_sample(sample), task

    stage2 = synth_stage2(Stage2Profile(total=5_000, seed=6))
    assert len(stage2) == 5_000

    benchmark, _ = generate_dataset(DatasetProfile.default(seed=8, count_per_cell=1))
    clones = []
    for inst in benchmark:
        if inst.task in ("sokoban", "klotski"):
            clones.append(
                ImagerySample(
                    task=inst.task,
                    initial=inst.data["board"],
                    actions=tuple(inst.data["solution"].split()),
                    target="cloned",
                    rationale=None,
                    seed=0,
                )
            )
    mixed = clones + per_task["sokoban"][:50] + per_task["klotski"][:50]
    kept, dropped = filter_overlap(mixed, benchmark)
    assert dropped == len(clones)
    assert len(kept) == 100

    elapsed = time.perf_counter() - start
    assert elapsed < 120.0
    _report("training-data synthesis suite (20k/5k profiles)", elapsed, 120.0)


# --- criterion 9: end-to-end mock evaluation ----------------------------------------


def test_c9_end_to_end_mock_eval():
    start = time.perf_counter()

    instances, _ = generate_dataset(DatasetProfile.default(seed=9, count_per_cell=2))
    oracle = OracleGateway.for_dataset(instances)
    all_records = []
    for mode in ("TQA", "VQA", "VTQA"):
        records = run_eval(oracle, instances, mode, parallelism=8)
        all_records.extend(records)
    report = aggregate(all_records)
    assert report["cells"], "no evaluation cells"
    for cell in report["cells"]:
        assert cell["accuracy"] == 1.0, cell
    covered = {(c["task"], c["tier"], c["modality"]) for c in report["cells"]}
    for task in ("cube_roll", "rubiks", "sokoban", "klotski"):
        for tier in TIERS:
            for mode in ("TQA", "VQA", "VTQA"):
                assert (task, tier, mode) in covered
    for tier in TIERS:
        assert ("mental_rotation", tier, "VQA") in covered

    # hand-computed check of the paired token-difference quartiles:
    # deltas 1,2,3,4 -> q1 1.75, median 2.5, q3 3.25 (inclusive method)
    from spatialbench.evalharness.runner import EvalRecord

    synth = []
    for i, (t_tokens, v_tokens) in enumerate([(11, 10), (22, 20), (33, 30), (44, 40)]):
        for mode, tokens in (("TQA", t_tokens), ("VQA", v_tokens)):
            synth.append(
                EvalRecord(
                    instance_id=f"pair{i}",
                    task="klotski",
                    tier="easy",
                    modality=mode,
                    parse_status="parsed-deterministic",
                    answer="x",
                    correct=True,
                    prompt_tokens=1,
                    completion_tokens=tokens,
                    latency_ms=0.0,
                )
            )
    delta = aggregate(synth)["delta_tokens"][0]
    assert delta["n"] == 4
    assert delta["min"] == 1.0
    assert delta["q1"] == 1.75
    assert delta["median"] == 2.5
    assert delta["q3"] == 3.25
    assert delta["max"] == 4.0

    elapsed = time.perf_counter() - start
    _report("end-to-end mock evaluation", elapsed)
