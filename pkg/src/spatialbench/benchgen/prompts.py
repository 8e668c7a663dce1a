"""Frozen prompt templates and modality bundle construction.

Templates live as text assets next to this module; the same rendered texts
are stored verbatim on each instance so datasets never change wording
between releases.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Any

from spatialbench.errors import UnsupportedModality

MODES = ("TQA", "VQA", "VTQA")

AXIS_PHRASE: dict[str, tuple[str, str]] = {
    "+x": (
        "due east (camera east of the assembly, looking west)",
        "rows top-to-bottom go from the assembly's top layer down; columns left-to-right go from its south side to its north side",
    ),
    "-x": (
        "due west (camera west of the assembly, looking east)",
        "rows top-to-bottom go from the top layer down; columns left-to-right go from north to south",
    ),
    "+y": (
        "due north (camera north of the assembly, looking south)",
        "rows top-to-bottom go from the top layer down; columns left-to-right go from east to west",
    ),
    "-y": (
        "due south (camera south of the assembly, looking north)",
        "rows top-to-bottom go from the top layer down; columns left-to-right go from west to east",
    ),
    "+z": (
        "directly above, looking straight down",
        "rows top-to-bottom go from north to south; columns left-to-right go from west to east",
    ),
    "-z": (
        "directly below, looking straight up",
        "rows top-to-bottom go from north to south; columns left-to-right go from east to west",
    ),
}


def load_template(name: str) -> str:
    return (
        resources.files("spatialbench.benchgen")
        .joinpath("templates", f"{name}.txt")
        .read_text(encoding="utf-8")
    )


def render_template(name: str, **fields: Any) -> str:
    return load_template(name).format(**fields)


@dataclass(frozen=True)
class ModalityBundle:
    """Ordered prompt parts for one (instance, mode) pair."""

    mode: str
    messages: tuple[dict[str, str], ...]
    instance_id: str = ""

    def text(self) -> str:
        return "\n".join(m["text"] for m in self.messages if m["kind"] == "text")

    def image_paths(self) -> list[str]:
        return [m["path"] for m in self.messages if m["kind"] == "image"]


def build_prompts(instance: Any, mode: str) -> ModalityBundle:
    """Assemble the prompt for a modality.

    TQA is text only; VQA pairs the images with the terse prompt; VTQA pairs
    the images with the full symbolic body. Mental rotation supports VQA
    only: its symbolic description would spell out the voxel coordinates and
    give the answer away.
    """
    if mode not in MODES:
        raise UnsupportedModality(f"unknown modality {mode!r}")
    if instance.task == "mental_rotation" and mode != "VQA":
        raise UnsupportedModality("mental rotation instances are image-only (VQA)")

    if mode == "TQA":
        assert instance.symbolic is not None
        return ModalityBundle(
            mode, ({"kind": "text", "text": instance.symbolic},), instance.id
        )

    images = tuple({"kind": "image", "path": p} for p in instance.images)
    if not images:
        raise UnsupportedModality(f"task {instance.task} has no rendered images")
    if mode == "VQA":
        return ModalityBundle(
            mode, images + ({"kind": "text", "text": instance.terse},), instance.id
        )
    assert instance.detailed is not None
    return ModalityBundle(
        mode, images + ({"kind": "text", "text": instance.detailed},), instance.id
    )


def supported_modes(task: str) -> tuple[str, ...]:
    if task == "mental_rotation":
        return ("VQA",)
    return MODES


def default_mode(task: str) -> str:
    """The benchmark's standard presentation: VTQA except mental rotation."""
    return "VQA" if task == "mental_rotation" else "VTQA"
