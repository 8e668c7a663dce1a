"""Agent gateways: the transport between prompts and answer text.

A gateway is anything with ``send(bundle, max_output_tokens) ->
ModelResponse`` and no hidden cross-call state. The mock gateways keep the
whole harness testable offline; ``HttpGateway`` speaks the common
chat-completions JSON shape with image parts attached as data URLs.
"""

from __future__ import annotations

import base64
import math
import os
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Protocol

import httpx

from spatialbench.benchgen.instance import PuzzleInstance
from spatialbench.benchgen.prompts import ModalityBundle
from spatialbench.core.palette import PALETTE
from spatialbench.errors import ConfigError


@dataclass(frozen=True)
class ModelResponse:
    text: str
    prompt_tokens: int
    completion_tokens: int


class AgentGateway(Protocol):
    def send(self, bundle: ModalityBundle, max_output_tokens: int) -> ModelResponse: ...


def _approx_tokens(text: str) -> int:
    # offline stand-in for real tokenizer counts
    return max(1, math.ceil(len(text) / 4))


def _respond(prompt: str, text: str) -> ModelResponse:
    return ModelResponse(
        text=text,
        prompt_tokens=_approx_tokens(prompt),
        completion_tokens=_approx_tokens(text),
    )


@dataclass
class OracleGateway:
    """Answers every instance correctly from its stored ground truth."""

    by_id: dict[str, PuzzleInstance]

    @staticmethod
    def for_dataset(instances: list[PuzzleInstance]) -> "OracleGateway":
        return OracleGateway({i.id: i for i in instances})

    def send(self, bundle: ModalityBundle, max_output_tokens: int) -> ModelResponse:
        inst = self.by_id[bundle.instance_id]
        body = oracle_answer_text(inst)
        return _respond(bundle.text(), f"Working it out step by step.\n```\n{body}\n```\n")


def oracle_answer_text(inst: PuzzleInstance) -> str:
    if inst.task in ("cube_roll", "rubiks"):
        return str(inst.data["answer"])
    if inst.task == "mental_rotation":
        return "\n".join(
            " ".join(c if c is not None else "empty" for c in row)
            for row in inst.data["answer_grid"]
        )
    return str(inst.data["solution"])


@dataclass
class RandomGateway:
    """Uniform guesses: chance-level behavior for the answer formats."""

    by_id: dict[str, PuzzleInstance]
    seed: int = 0
    _rng: random.Random = field(init=False)

    def __post_init__(self) -> None:
        self._rng = random.Random(self.seed)

    @staticmethod
    def for_dataset(instances: list[PuzzleInstance], seed: int = 0) -> "RandomGateway":
        return RandomGateway({i.id: i for i in instances}, seed=seed)

    def send(self, bundle: ModalityBundle, max_output_tokens: int) -> ModelResponse:
        inst = self.by_id[bundle.instance_id]
        rng = self._rng
        if inst.task in ("cube_roll", "rubiks"):
            six = sorted(set(inst.data["coloring"].values())) if inst.task == "cube_roll" else list(PALETTE[:6])
            body = rng.choice(sorted(six))
        elif inst.task == "mental_rotation":
            grid = inst.data["answer_grid"]
            body = "\n".join(
                " ".join(rng.choice(PALETTE + ("empty",)) for _ in row) for row in grid
            )
        elif inst.task == "sokoban":
            body = " ".join(rng.choice("UDLR") for _ in range(rng.randint(1, 20)))
        else:
            letters = sorted({ch for ch in inst.data["board"] if ch.isalpha()})
            body = " ".join(
                rng.choice(letters) + rng.choice("UDLR") for _ in range(rng.randint(1, 20))
            )
        return _respond(bundle.text(), f"```\n{body}\n```\n")


@dataclass
class GarbageGateway:
    """Free text with no extractable answer."""

    def send(self, bundle: ModalityBundle, max_output_tokens: int) -> ModelResponse:
        return _respond(bundle.text(), "I am not sure what you mean by any of this.")


@dataclass
class FlakyGateway:
    """Wraps another gateway, failing the first ``failures`` calls per item."""

    inner: Any
    failures: int = 1
    _counts: dict[str, int] = field(default_factory=dict)

    def send(self, bundle: ModalityBundle, max_output_tokens: int) -> ModelResponse:
        n = self._counts.get(bundle.instance_id, 0)
        self._counts[bundle.instance_id] = n + 1
        if n < self.failures:
            raise ConnectionError("transient gateway failure")
        return self.inner.send(bundle, max_output_tokens)


@dataclass
class HttpGateway:
    """Chat-completions client; credentials come from the environment.

    ``api_key_env`` names the environment variable holding the key; the
    request fails fast with ConfigError when it is missing.
    """

    endpoint: str
    model: str
    api_key_env: str = "SPATIALBENCH_API_KEY"
    timeout_s: float = 120.0
    dataset_dir: Path | None = None
    system_prompt: str = "You are a careful spatial-reasoning solver."

    def __post_init__(self) -> None:
        if not self.endpoint or not self.model:
            raise ConfigError("http gateway needs endpoint and model")
        if not os.environ.get(self.api_key_env):
            raise ConfigError(f"missing credentials: set {self.api_key_env}")

    def _image_part(self, rel_path: str) -> dict[str, Any]:
        path = Path(rel_path)
        if self.dataset_dir is not None:
            path = self.dataset_dir / rel_path
        blob = base64.b64encode(path.read_bytes()).decode()
        return {
            "type": "image_url",
            "image_url": {"url": f"data:image/svg+xml;base64,{blob}"},
        }

    def send(self, bundle: ModalityBundle, max_output_tokens: int) -> ModelResponse:
        content: list[dict[str, Any]] = []
        for message in bundle.messages:
            if message["kind"] == "image":
                content.append(self._image_part(message["path"]))
            else:
                content.append({"type": "text", "text": message["text"]})
        payload = {
            "model": self.model,
            "max_tokens": max_output_tokens,
            "messages": [
                {"role": "system", "content": self.system_prompt},
                {"role": "user", "content": content},
            ],
        }
        headers = {"Authorization": f"Bearer {os.environ[self.api_key_env]}"}
        response = httpx.post(self.endpoint, json=payload, headers=headers, timeout=self.timeout_s)
        response.raise_for_status()
        data = response.json()
        text = data["choices"][0]["message"]["content"]
        usage = data.get("usage", {})
        return ModelResponse(
            text=text,
            prompt_tokens=int(usage.get("prompt_tokens", _approx_tokens(bundle.text()))),
            completion_tokens=int(usage.get("completion_tokens", _approx_tokens(text))),
        )


def make_mock_gateway(kind: str, instances: list[PuzzleInstance], seed: int = 0) -> Any:
    if kind == "oracle":
        return OracleGateway.for_dataset(instances)
    if kind == "random":
        return RandomGateway.for_dataset(instances, seed=seed)
    if kind == "garbage":
        return GarbageGateway()
    raise ConfigError(f"unknown mock gateway {kind!r}")
