"""Deterministic answer extraction from free-form model responses.

Extraction order: the last fenced code block, else the text after the last
``Answer:`` marker. The extracted segment is then parsed with the task's
mini-grammar. Anything that fails both stages is the ``UNPARSEABLE``
sentinel; an optional LLM-backed parser with the same signature may be
plugged in behind this one (see runner.run_eval), keeping offline runs
fully reproducible.
"""

from __future__ import annotations

import re
from typing import Any

from spatialbench.core.palette import PALETTE

UNPARSEABLE = "unparseable"

_FENCE_RE = re.compile(r"```[^\n`]*\n(.*?)```", re.DOTALL)
_ANSWER_RE = re.compile(r"(?i)answer\s*[:=]\s*")

COLOR_SYNONYMS: dict[str, str] = {
    "crimson": "red",
    "scarlet": "red",
    "maroon": "red",
    "emerald": "green",
    "lime": "green",
    "navy": "blue",
    "azure": "blue",
    "indigo": "blue",
    "gold": "yellow",
    "amber": "yellow",
    "violet": "purple",
    "magenta": "purple",
    "lavender": "purple",
    "teal": "cyan",
    "turquoise": "cyan",
    "aqua": "cyan",
    "ivory": "white",
    "snow": "white",
    "tangerine": "orange",
}

_EMPTY_TOKENS = {"empty", "none", ".", "-", "_", "x"}

_MOVE_WORDS = {"up": "U", "down": "D", "left": "L", "right": "R"}


def _extract_segment(text: str) -> str | None:
    blocks = _FENCE_RE.findall(text)
    if blocks:
        return blocks[-1].strip()
    parts = _ANSWER_RE.split(text)
    if len(parts) > 1:
        # keep the first line-ish chunk after the marker
        tail = parts[-1].strip()
        return tail.splitlines()[0].strip() if tail else None
    return None


def _clean_token(token: str) -> str:
    return token.strip().strip("*_`'\".,;:!()[]{}").lower()


def normalize_color(token: str) -> str | None:
    word = _clean_token(token)
    word = COLOR_SYNONYMS.get(word, word)
    return word if word in PALETTE else None


def _parse_color(segment: str) -> str | None:
    tokens = [t for t in re.split(r"\s+", segment.strip()) if t]
    if not tokens:
        return None
    # tolerate a trailing period or emphasis on a single-word answer
    candidates = [normalize_color(t) for t in tokens]
    found = [c for c in candidates if c is not None]
    if len(found) == 1:
        return found[0]
    if found and all(c == found[0] for c in found):
        return found[0]
    return None


def _parse_grid(segment: str) -> list[list[str | None]] | None:
    rows: list[list[str | None]] = []
    for line in segment.splitlines():
        line = line.strip()
        if not line:
            continue
        row: list[str | None] = []
        for token in re.split(r"[\s,|]+", line):
            if not token:
                continue
            word = _clean_token(token)
            if word in _EMPTY_TOKENS:
                row.append(None)
                continue
            color = normalize_color(word)
            if color is None:
                return None
            row.append(color)
        if row:
            rows.append(row)
    if not rows or len({len(r) for r in rows}) != 1:
        return None
    return rows


def _parse_player_moves(segment: str) -> list[str] | None:
    moves: list[str] = []
    for token in re.split(r"[\s,;>→-]+", segment.strip()):
        if not token:
            continue
        word = token.strip().lower()
        if word in _MOVE_WORDS:
            moves.append(_MOVE_WORDS[word])
            continue
        cleaned = _clean_token(token).upper()
        if not cleaned:
            continue
        if all(ch in "UDLR" for ch in cleaned):
            moves.extend(cleaned)
        else:
            return None
    return moves if moves else None


def _parse_block_moves(segment: str) -> list[str] | None:
    moves: list[str] = []
    for token in re.split(r"[\s,;]+", segment.strip()):
        if not token:
            continue
        cleaned = _clean_token(token).upper()
        if not cleaned:
            continue
        if len(cleaned) == 2 and cleaned[0].isalpha() and cleaned[1] in "UDLR":
            moves.append(cleaned)
        else:
            return None
    return moves if moves else None


def parse_structured(task: str, segment: str) -> Any:
    """Apply just the task mini-grammar to an already-extracted segment."""
    if task in ("cube_roll", "rubiks"):
        parsed = _parse_color(segment)
    elif task == "mental_rotation":
        parsed = _parse_grid(segment)
    elif task == "sokoban":
        parsed = _parse_player_moves(segment)
    elif task == "klotski":
        parsed = _parse_block_moves(segment)
    else:
        raise ValueError(f"unknown task {task!r}")
    return parsed if parsed is not None else UNPARSEABLE


def parse_answer(task: str, response_text: str) -> Any:
    """Structured answer for the task, or the UNPARSEABLE sentinel."""
    segment = _extract_segment(response_text)
    if segment is None:
        return UNPARSEABLE
    return parse_structured(task, segment)
