from __future__ import annotations

import json

import pytest

from spatialbench.benchgen import DatasetProfile, generate_dataset
from spatialbench.envs import TASKS
from spatialbench.errors import InvalidSolution
from spatialbench.idf import (
    ImagerySample,
    Stage1Profile,
    Stage2Profile,
    emit_sft,
    fill_rationales,
    filter_overlap,
    pseudo_reasoning,
    random_walk_samples,
    synth_stage1,
    synth_stage2,
    verify_sample,
)


@pytest.fixture(scope="module")
def benchmark():
    instances, _ = generate_dataset(DatasetProfile.default(seed=17, count_per_cell=1))
    return instances


def test_walks_are_simulator_consistent():
    for env in TASKS:
        samples = random_walk_samples(env, (1, 8), 30, seed=2)
        assert len(samples) == 30
        assert all(verify_sample(s) for s in samples)


def test_walks_deterministic_per_seed():
    for env in ("cube_roll", "rubiks"):
        assert random_walk_samples(env, (1, 4), 10, seed=9) == random_walk_samples(
            env, (1, 4), 10, seed=9
        )


def test_steps_range_validation():
    with pytest.raises(ValueError):
        random_walk_samples("rubiks", (0, 4), 5, seed=1)
    with pytest.raises(ValueError):
        random_walk_samples("rubiks", (1, 9), 5, seed=1)


def test_default_profiles_match_paper_scale():
    assert Stage1Profile().total == 20_000
    assert Stage1Profile().per_task == 4_000
    assert Stage2Profile().total == 5_000


def test_stage1_small_profile_counts():
    samples = synth_stage1(Stage1Profile(total=25, seed=3))
    assert len(samples) == 25
    per_task = {t: sum(1 for s in samples if s.task == t) for t in TASKS}
    assert all(v == 5 for v in per_task.values())


def test_stage2_trajectories_replay(benchmark):
    trajectories = synth_stage2(Stage2Profile(total=10, seed=4))
    assert len(trajectories) == 10
    for traj in trajectories:
        assert traj.task in ("sokoban", "klotski")
        assert traj.steps
        assert traj.narration.endswith("```")
        assert traj.final_answer == " ".join(s["action"] for s in traj.steps)


def test_pseudo_reasoning_zero_move_board():
    from spatialbench.benchgen.instance import PuzzleInstance

    # hand-built board whose 2x2 block already sits on the exit
    solved_board = "B..C\nB..C\nD..E\nDAAF\nGAAH"
    inst = PuzzleInstance(
        id="zeromove",
        task="klotski",
        category="collaborative",
        tier="easy",
        complexity=0.0,
        seed=0,
        terse="t",
        symbolic="s",
        detailed="s",
        images=(),
        data={"board": solved_board, "solution": "", "optimal_length": 0, "big_letter": "A"},
    )
    traj = pseudo_reasoning(inst, solution=[])
    assert traj.steps == ()
    assert traj.final_answer == ""


def test_pseudo_reasoning_rejects_bad_solution(benchmark):
    inst = next(i for i in benchmark if i.task == "sokoban")
    with pytest.raises(InvalidSolution):
        pseudo_reasoning(inst, solution=["U"] * 50)


def test_pseudo_reasoning_rejects_non_plan(benchmark):
    inst = next(i for i in benchmark if i.task == "rubiks")
    with pytest.raises(InvalidSolution):
        pseudo_reasoning(inst)


def test_overlap_filter_drops_clones(benchmark):
    clones = []
    for inst in benchmark:
        if inst.task == "sokoban":
            clones.append(
                ImagerySample(
                    task="sokoban",
                    initial=inst.data["board"],
                    actions=tuple(inst.data["solution"].split()),
                    target="irrelevant",
                    rationale=None,
                    seed=0,
                )
            )
    fresh = random_walk_samples("sokoban", (1, 4), 5, seed=77)
    kept, dropped = filter_overlap(clones + fresh, benchmark)
    assert dropped == len(clones)
    assert kept == fresh


def test_overlap_filter_idempotent(benchmark):
    samples = random_walk_samples("klotski", (1, 4), 8, seed=5)
    kept, _ = filter_overlap(samples, benchmark)
    again, dropped = filter_overlap(kept, benchmark)
    assert again == kept and dropped == 0


def test_emit_round_trip(tmp_path):
    samples = random_walk_samples("rubiks", (1, 3), 12, seed=6)
    path = emit_sft(samples, tmp_path / "idf_stage1.jsonl")
    lines = path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == len(samples)
    for line, sample in zip(lines, samples):
        record = json.loads(line)
        assert record["meta"]["task"] == "rubiks"
        assert record["messages"][2]["content"] == sample.target
    assert emit_sft(samples, tmp_path / "again.jsonl").read_bytes() == path.read_bytes()


def test_fill_rationales_uses_gateway(tmp_path):
    samples = random_walk_samples("cube_roll", (1, 2), 3, seed=8)

    class EchoGateway:
        def send(self, bundle, max_output_tokens):
            from spatialbench.evalharness.gateway import ModelResponse

            return ModelResponse("teacher narration", 5, 5)

    filled = fill_rationales(samples, EchoGateway())
    assert all(s.rationale == "teacher narration" for s in filled)
    path = emit_sft(filled, tmp_path / "idf_rationales.jsonl")
    record = json.loads(path.read_text(encoding="utf-8").splitlines()[0])
    assert record["messages"][2]["content"].startswith("teacher narration")
