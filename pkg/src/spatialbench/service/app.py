"""FastAPI application wrapping the benchmark core.

Serves puzzle renditions and grades submitted sessions against the
simulators; every submission is appended to a line-delimited session log.
Dataset files are never written, only read.
"""

from __future__ import annotations

import json
import threading
import time
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from spatialbench.benchgen.dataset import load_manifest, load_metadata
from spatialbench.benchgen.instance import PuzzleInstance, stable_hash
from spatialbench.envs import klotski as kl
from spatialbench.envs import sokoban as sk
from spatialbench.errors import IllegalMove
from spatialbench.evalharness.grading import grade
from spatialbench.evalharness.parsing import UNPARSEABLE, parse_structured
from spatialbench.service.schemas import (
    TIME_LIMIT_MS,
    AnswerSpec,
    PuzzleOut,
    SessionIn,
    SessionOut,
    SummaryOut,
    TaskSummary,
)


def _answer_spec(inst: PuzzleInstance) -> AnswerSpec:
    if inst.task in ("cube_roll", "rubiks"):
        return AnswerSpec(kind="color")
    if inst.task == "mental_rotation":
        grid = inst.data["answer_grid"]
        return AnswerSpec(kind="grid", rows=len(grid), cols=len(grid[0]))
    if inst.task == "sokoban":
        return AnswerSpec(kind="moves")
    return AnswerSpec(kind="block_moves", big_letter=inst.data.get("big_letter"))


def _puzzle_payload(inst: PuzzleInstance) -> PuzzleOut:
    prompt = inst.terse if inst.task == "mental_rotation" else (inst.symbolic or inst.terse)
    board = inst.data.get("board")
    return PuzzleOut(
        instance_id=inst.id,
        task=inst.task,
        category=inst.category,
        tier=inst.tier,
        prompt=prompt,
        images=[f"/{p}" for p in inst.images],
        board=board,
        answer_spec=_answer_spec(inst),
    )


def _grade_moves(inst: PuzzleInstance, moves: list[str]) -> tuple[bool, bool]:
    """(valid, correct) for a plan-task move list."""
    try:
        if inst.task == "sokoban":
            final = sk.replay(sk.SokobanLevel.from_text(inst.data["board"]), moves)
            return True, final.is_solved()
        board = kl.KlotskiBoard.from_text(inst.data["board"])
        final = kl.replay(board, kl.parse_moves(board, moves))
        return True, final.is_solved()
    except IllegalMove:
        return False, False


def create_app(
    dataset_dir: Path,
    session_log: Path | None = None,
    ui_dir: Path | None = None,
) -> FastAPI:
    dataset_dir = Path(dataset_dir)
    instances = load_manifest(dataset_dir)
    by_id = {i.id: i for i in instances}
    log_path = Path(session_log) if session_log else dataset_dir / "sessions.jsonl"
    log_lock = threading.Lock()

    app = FastAPI(title="spatial-reasoning benchmark")

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    def read_log() -> list[dict]:
        if not log_path.exists():
            return []
        out = []
        with open(log_path, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    out.append(json.loads(line))
        return out

    def append_log(entry: dict) -> None:
        with log_lock:
            with open(log_path, "a", encoding="utf-8", newline="\n") as fh:
                fh.write(json.dumps(entry, sort_keys=True, separators=(",", ":")))
                fh.write("\n")

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "instances": len(instances)}

    @app.get("/api/dataset")
    def dataset_info() -> dict:
        return load_metadata(dataset_dir)

    @app.get("/api/puzzle", response_model=PuzzleOut)
    def get_puzzle(task: str, tier: str = "all", session: str = "anon") -> PuzzleOut:
        pool = [
            i
            for i in instances
            if i.task == task and (tier in ("all", i.tier))
        ]
        if not pool:
            raise HTTPException(status_code=404, detail="no instance matches the filter")
        served = sum(
            1
            for e in read_log()
            if e.get("session") == session and e.get("task") == task
        )
        index = int(stable_hash("serve", session, task, tier, served), 16) % len(pool)
        return _puzzle_payload(pool[index])

    @app.get("/api/instance/{instance_id}", response_model=PuzzleOut)
    def get_instance(instance_id: str) -> PuzzleOut:
        inst = by_id.get(instance_id)
        if inst is None:
            raise HTTPException(status_code=404, detail="unknown instance")
        return _puzzle_payload(inst)

    @app.post("/api/sessions", response_model=SessionOut)
    def submit_session(body: SessionIn) -> SessionOut:
        inst = by_id.get(body.instance_id)
        if inst is None:
            raise HTTPException(status_code=404, detail="unknown instance")
        if inst.is_plan_task:
            if body.moves is None:
                raise HTTPException(status_code=400, detail="plan tasks submit moves")
            valid, correct = _grade_moves(inst, body.moves)
        else:
            if body.answer is None:
                raise HTTPException(status_code=400, detail="answer tasks submit an answer")
            parsed = parse_structured(inst.task, body.answer)
            valid = parsed != UNPARSEABLE
            correct = grade(inst, parsed) if valid else False
        over_time = body.elapsed_ms > TIME_LIMIT_MS
        append_log(
            {
                "ts": time.time(),
                "session": body.session,
                "instance_id": inst.id,
                "task": inst.task,
                "tier": inst.tier,
                "moves": body.moves,
                "answer": body.answer,
                "elapsed_ms": body.elapsed_ms,
                "valid": valid,
                "correct": correct,
                "over_time": over_time,
            }
        )
        return SessionOut(
            valid=valid,
            correct=correct,
            optimal_len=inst.optimal_length,
            over_time=over_time,
        )

    @app.get("/api/summary", response_model=SummaryOut)
    def summary() -> SummaryOut:
        entries = read_log()
        tasks: dict[str, dict[str, int]] = {}
        for e in entries:
            bucket = tasks.setdefault(
                e["task"], {"sessions": 0, "in_time": 0, "correct_in_time": 0, "over_time": 0}
            )
            bucket["sessions"] += 1
            if e["over_time"]:
                # recorded but excluded from baseline accuracy
                bucket["over_time"] += 1
            else:
                bucket["in_time"] += 1
                bucket["correct_in_time"] += int(bool(e["correct"]))
        rows = [
            TaskSummary(
                task=task,
                sessions=v["sessions"],
                in_time=v["in_time"],
                correct_in_time=v["correct_in_time"],
                accuracy=(v["correct_in_time"] / v["in_time"]) if v["in_time"] else None,
                over_time=v["over_time"],
            )
            for task, v in sorted(tasks.items())
        ]
        return SummaryOut(total_sessions=len(entries), tasks=rows)

    # Only the rendered images are exposed; the manifest (with ground truth)
    # stays server-side.
    assets = dataset_dir / "assets"
    if assets.exists():
        app.mount("/assets", StaticFiles(directory=assets), name="assets")
    if ui_dir is not None and Path(ui_dir).exists():
        app.mount("/", StaticFiles(directory=Path(ui_dir), html=True), name="ui")
    return app
