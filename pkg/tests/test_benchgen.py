from __future__ import annotations

import json
from pathlib import Path

import pytest

from spatialbench.benchgen import (
    DatasetProfile,
    build_prompts,
    emit_dataset,
    generate_dataset,
    load_manifest,
)
from spatialbench.benchgen.dataset import build_instance, load_metadata
from spatialbench.benchgen.instance import PuzzleInstance, instance_fingerprints
from spatialbench.envs import CATEGORY_BY_TASK, TASKS, TIERS
from spatialbench.errors import UnsupportedModality


@pytest.fixture(scope="module")
def small_dataset(tmp_path_factory):
    profile = DatasetProfile.default(seed=5, count_per_cell=2)
    instances, assets = generate_dataset(profile)
    out = tmp_path_factory.mktemp("ds")
    emit_dataset(instances, assets, out, profile)
    return profile, instances, assets, out


def test_categories_follow_task_mapping(small_dataset):
    _, instances, _, _ = small_dataset
    for inst in instances:
        assert inst.category == CATEGORY_BY_TASK[inst.task]
    assert CATEGORY_BY_TASK["mental_rotation"] == "visual-centric"
    assert CATEGORY_BY_TASK["cube_roll"] == "linguistic-centric"
    assert CATEGORY_BY_TASK["rubiks"] == "linguistic-centric"
    assert CATEGORY_BY_TASK["sokoban"] == "collaborative"
    assert CATEGORY_BY_TASK["klotski"] == "collaborative"


def test_ids_unique_and_stable(small_dataset):
    _, instances, _, _ = small_dataset
    ids = [i.id for i in instances]
    assert len(set(ids)) == len(ids)
    again, _ = generate_dataset(DatasetProfile.default(seed=5, count_per_cell=2))
    assert [i.id for i in again] == ids


def test_emit_round_trip(small_dataset):
    _, instances, _, out = small_dataset
    loaded = load_manifest(out)
    assert loaded == instances


def test_emit_is_byte_deterministic(tmp_path, small_dataset):
    profile, instances, assets, out = small_dataset
    emit_dataset(instances, assets, tmp_path / "again", profile)
    a = (out / "manifest.jsonl").read_bytes()
    b = (tmp_path / "again" / "manifest.jsonl").read_bytes()
    assert a == b
    for rel in list(assets)[:10]:
        assert (out / rel).read_bytes() == (tmp_path / "again" / rel).read_bytes()


def test_metadata_counts(small_dataset):
    profile, instances, _, out = small_dataset
    meta = load_metadata(out)
    assert meta["generator_version"]
    assert meta["n_instances"] == len(instances)
    for task in TASKS:
        for tier in TIERS:
            assert meta["counts"][task][tier] == 2


def test_manifest_lines_have_sorted_keys(small_dataset):
    _, _, _, out = small_dataset
    with open(out / "manifest.jsonl", encoding="utf-8") as fh:
        first = fh.readline()
    record = json.loads(first)
    assert list(record) == sorted(record)


def test_human_baseline_profile_counts():
    profile = DatasetProfile.human_baseline(seed=3)
    total = sum(sum(tiers.values()) for tiers in profile.counts.values())
    assert total == 150
    for task in TASKS:
        assert sum(profile.counts[task].values()) == 30


def test_tqa_bundle_has_no_images(small_dataset):
    _, instances, _, _ = small_dataset
    for inst in instances:
        if inst.task == "mental_rotation":
            continue
        bundle = build_prompts(inst, "TQA")
        assert bundle.image_paths() == []
        assert bundle.text()


def test_vqa_bundle_has_images_and_terse_text(small_dataset):
    _, instances, _, _ = small_dataset
    for inst in instances:
        bundle = build_prompts(inst, "VQA")
        assert bundle.image_paths()
        assert bundle.text() == inst.terse


def test_vtqa_text_contains_tqa_text(small_dataset):
    _, instances, _, _ = small_dataset
    for inst in instances:
        if inst.task == "mental_rotation":
            continue
        tqa = build_prompts(inst, "TQA").text()
        vtqa = build_prompts(inst, "VTQA").text()
        assert tqa in vtqa


def test_mental_rotation_rejects_text_modalities(small_dataset):
    _, instances, _, _ = small_dataset
    inst = next(i for i in instances if i.task == "mental_rotation")
    with pytest.raises(UnsupportedModality):
        build_prompts(inst, "TQA")
    with pytest.raises(UnsupportedModality):
        build_prompts(inst, "VTQA")


def test_mental_rotation_assets_named_by_view(small_dataset):
    _, instances, assets, _ = small_dataset
    inst = next(i for i in instances if i.task == "mental_rotation")
    assert len(inst.images) == 8
    for i, path in enumerate(inst.images):
        assert path.endswith(f"{inst.id}_view{i}.svg")
        assert path in assets


def test_sokoban_tqa_contains_board(small_dataset):
    _, instances, _, _ = small_dataset
    inst = next(i for i in instances if i.task == "sokoban")
    bundle = build_prompts(inst, "TQA")
    assert inst.data["board"] in bundle.text()


def test_plan_instances_carry_solutions(small_dataset):
    _, instances, _, _ = small_dataset
    for inst in instances:
        if inst.is_plan_task:
            assert inst.data["solution"]
            assert inst.optimal_length == len(inst.data["solution"].split())


def test_fingerprints_stable(small_dataset):
    _, instances, _, _ = small_dataset
    for inst in instances[:5]:
        assert instance_fingerprints(inst) == instance_fingerprints(inst)


def test_record_round_trip(small_dataset):
    _, instances, _, _ = small_dataset
    for inst in instances[:5]:
        assert PuzzleInstance.from_record(inst.to_record()) == inst
