"""Bounded-parallel evaluation runs over a dataset.

One record per instance; output order and all downstream aggregates are
independent of request completion order. Transport failures are retried a
bounded number of times with backoff, then recorded as unparseable.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable

from spatialbench.benchgen.instance import PuzzleInstance
from spatialbench.benchgen.prompts import build_prompts, supported_modes
from spatialbench.errors import ConfigError
from spatialbench.evalharness.gateway import AgentGateway
from spatialbench.evalharness.grading import grade
from spatialbench.evalharness.parsing import UNPARSEABLE, parse_answer

PARSED_DETERMINISTIC = "parsed-deterministic"
PARSED_LLM = "parsed-llm"

# Optional fallback parser signature: (task, response_text) -> answer | UNPARSEABLE
FallbackParser = Callable[[str, str], Any]


@dataclass(frozen=True)
class EvalRecord:
    instance_id: str
    task: str
    tier: str
    modality: str
    parse_status: str  # parsed-deterministic | parsed-llm | unparseable
    answer: Any
    correct: bool
    prompt_tokens: int
    completion_tokens: int
    latency_ms: float

    def __post_init__(self) -> None:
        if self.parse_status == UNPARSEABLE and self.correct:
            raise ValueError("unparseable answers can never be correct")

    def to_record(self) -> dict[str, Any]:
        return {
            "instance_id": self.instance_id,
            "task": self.task,
            "tier": self.tier,
            "modality": self.modality,
            "parse_status": self.parse_status,
            "answer": self.answer if self.answer != UNPARSEABLE else None,
            "correct": self.correct,
            "prompt_tokens": self.prompt_tokens,
            "completion_tokens": self.completion_tokens,
            "latency_ms": round(self.latency_ms, 3),
        }


def _evaluate_one(
    gateway: AgentGateway,
    inst: PuzzleInstance,
    modality: str,
    token_cap: int,
    retries: int,
    backoff_s: float,
    fallback_parser: FallbackParser | None,
) -> EvalRecord:
    bundle = build_prompts(inst, modality)
    start = time.perf_counter()
    response = None
    for attempt in range(retries + 1):
        try:
            response = gateway.send(bundle, token_cap)
            break
        except Exception:
            if attempt == retries:
                response = None
            else:
                time.sleep(backoff_s * (2**attempt))
    latency_ms = (time.perf_counter() - start) * 1000

    if response is None:
        return EvalRecord(
            instance_id=inst.id,
            task=inst.task,
            tier=inst.tier,
            modality=modality,
            parse_status=UNPARSEABLE,
            answer=UNPARSEABLE,
            correct=False,
            prompt_tokens=0,
            completion_tokens=0,
            latency_ms=latency_ms,
        )

    answer = parse_answer(inst.task, response.text)
    status = PARSED_DETERMINISTIC
    if answer == UNPARSEABLE and fallback_parser is not None:
        answer = fallback_parser(inst.task, response.text)
        status = PARSED_LLM
    if answer == UNPARSEABLE:
        status = UNPARSEABLE
    correct = grade(inst, answer) if status != UNPARSEABLE else False
    return EvalRecord(
        instance_id=inst.id,
        task=inst.task,
        tier=inst.tier,
        modality=modality,
        parse_status=status,
        answer=answer,
        correct=correct,
        prompt_tokens=response.prompt_tokens,
        completion_tokens=response.completion_tokens,
        latency_ms=latency_ms,
    )


def run_eval(
    gateway: AgentGateway,
    instances: list[PuzzleInstance],
    modality: str,
    parallelism: int = 4,
    token_cap: int = 8192,
    retries: int = 2,
    backoff_s: float = 0.05,
    fallback_parser: FallbackParser | None = None,
) -> list[EvalRecord]:
    """Evaluate every instance that supports ``modality``.

    Instances whose task does not define the modality (mental rotation
    outside VQA) are skipped rather than failed.
    """
    if parallelism < 1:
        raise ConfigError("parallelism must be >= 1")
    if token_cap < 1:
        raise ConfigError("token cap must be >= 1")
    eligible = [i for i in instances if modality in supported_modes(i.task)]
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        futures = [
            pool.submit(
                _evaluate_one, gateway, inst, modality, token_cap, retries, backoff_s, fallback_parser
            )
            for inst in eligible
        ]
        records = [f.result() for f in futures]
    records.sort(key=lambda r: (r.task, r.tier, r.instance_id))
    return records
