from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from spatialbench.benchgen import DatasetProfile, emit_dataset, generate_dataset
from spatialbench.service import create_app


@pytest.fixture(scope="module")
def served(tmp_path_factory):
    out = tmp_path_factory.mktemp("served")
    profile = DatasetProfile.default(seed=23, count_per_cell=1)
    instances, assets = generate_dataset(profile)
    emit_dataset(instances, assets, out / "ds", profile)
    log = out / "sessions.jsonl"
    app = create_app(out / "ds", session_log=log)
    return TestClient(app), instances, log, out / "ds"


def test_health_and_dataset(served):
    client, instances, _, _ = served
    assert client.get("/api/health").json()["instances"] == len(instances)
    assert client.get("/api/dataset").json()["n_instances"] == len(instances)


def test_get_puzzle_hides_ground_truth(served):
    client, instances, _, _ = served
    body = client.get("/api/puzzle", params={"task": "sokoban"}).json()
    assert body["task"] == "sokoban"
    assert body["board"]
    assert body["time_limit_ms"] == 120_000
    inst = next(i for i in instances if i.id == body["instance_id"])
    payload = json.dumps(body)
    assert inst.data["solution"] not in payload


def test_unknown_filter_404(served):
    client, _, _, _ = served
    assert client.get("/api/puzzle", params={"task": "sokoban", "tier": "nope"}).status_code == 404


def test_instance_fetch_and_assets(served):
    client, instances, _, _ = served
    inst = next(i for i in instances if i.task == "mental_rotation")
    body = client.get(f"/api/instance/{inst.id}").json()
    assert len(body["images"]) == 8
    svg = client.get(body["images"][0])
    assert svg.status_code == 200
    assert b"<svg" in svg.content


def test_manifest_not_exposed(served):
    client, _, _, _ = served
    assert client.get("/assets/../manifest.jsonl").status_code in (400, 404)


def test_submit_optimal_sokoban_solution(served):
    client, instances, _, _ = served
    inst = next(i for i in instances if i.task == "sokoban")
    body = {
        "instance_id": inst.id,
        "moves": inst.data["solution"].split(),
        "elapsed_ms": 30_000,
        "session": "tester",
    }
    verdict = client.post("/api/sessions", json=body).json()
    assert verdict == {
        "valid": True,
        "correct": True,
        "optimal_len": inst.optimal_length,
        "over_time": False,
    }


def test_submit_illegal_moves_invalid(served):
    client, instances, _, _ = served
    inst = next(i for i in instances if i.task == "sokoban")
    verdict = client.post(
        "/api/sessions",
        json={"instance_id": inst.id, "moves": ["U"] * 40, "elapsed_ms": 10},
    ).json()
    assert verdict["valid"] is False
    assert verdict["correct"] is False


def test_over_time_flagged_and_excluded(served):
    client, instances, log, _ = served
    inst = next(i for i in instances if i.task == "klotski")
    verdict = client.post(
        "/api/sessions",
        json={
            "instance_id": inst.id,
            "moves": inst.data["solution"].split(),
            "elapsed_ms": 130_000,
            "session": "slowpoke",
        },
    ).json()
    assert verdict["correct"] is True
    assert verdict["over_time"] is True
    entries = [json.loads(l) for l in log.read_text().splitlines()]
    slow = [e for e in entries if e["session"] == "slowpoke"]
    assert slow and slow[-1]["over_time"] is True
    summary = client.get("/api/summary").json()
    klotski_rows = [t for t in summary["tasks"] if t["task"] == "klotski"]
    assert klotski_rows[0]["over_time"] >= 1
    assert klotski_rows[0]["in_time"] == klotski_rows[0]["sessions"] - klotski_rows[0]["over_time"]


def test_color_answer_submission(served):
    client, instances, _, _ = served
    inst = next(i for i in instances if i.task == "cube_roll")
    good = client.post(
        "/api/sessions",
        json={"instance_id": inst.id, "answer": inst.data["answer"], "elapsed_ms": 5},
    ).json()
    assert good["valid"] and good["correct"]
    bad = client.post(
        "/api/sessions",
        json={"instance_id": inst.id, "answer": "not-a-color", "elapsed_ms": 5},
    ).json()
    assert not bad["valid"] and not bad["correct"]


def test_unknown_instance_404(served):
    client, _, _, _ = served
    r = client.post(
        "/api/sessions", json={"instance_id": "missing", "answer": "red", "elapsed_ms": 1}
    )
    assert r.status_code == 404


def test_malformed_body_400(served):
    client, instances, _, _ = served
    r = client.post("/api/sessions", json={"elapsed_ms": 1})
    assert r.status_code == 400
    r = client.post(
        "/api/sessions",
        json={"instance_id": instances[0].id, "elapsed_ms": -3, "answer": "red"},
    )
    assert r.status_code == 400


def test_serve_mode_never_mutates_dataset(served):
    client, instances, _, dataset_dir = served
    before = (dataset_dir / "manifest.jsonl").read_bytes()
    inst = next(i for i in instances if i.task == "rubiks")
    client.post(
        "/api/sessions",
        json={"instance_id": inst.id, "answer": inst.data["answer"], "elapsed_ms": 4},
    )
    assert (dataset_dir / "manifest.jsonl").read_bytes() == before
