"""Request/response models of the human-baseline API."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

TIME_LIMIT_MS = 120_000


class AnswerSpec(BaseModel):
    kind: str  # color | grid | moves | block_moves
    rows: int | None = None
    cols: int | None = None
    big_letter: str | None = None


class PuzzleOut(BaseModel):
    instance_id: str
    task: str
    category: str
    tier: str
    prompt: str
    images: list[str]
    board: str | None
    answer_spec: AnswerSpec
    time_limit_ms: int = TIME_LIMIT_MS


class SessionIn(BaseModel):
    model_config = ConfigDict(extra="forbid")

    instance_id: str
    session: str = "anon"
    moves: list[str] | None = None
    answer: str | None = None
    elapsed_ms: int = Field(ge=0)


class SessionOut(BaseModel):
    valid: bool
    correct: bool
    optimal_len: int | None
    over_time: bool


class TaskSummary(BaseModel):
    task: str
    sessions: int
    in_time: int
    correct_in_time: int
    accuracy: float | None
    over_time: int


class SummaryOut(BaseModel):
    total_sessions: int
    tasks: list[TaskSummary]
