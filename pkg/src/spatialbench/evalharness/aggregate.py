"""Accuracy and token-efficiency aggregation over evaluation records.

Per (task, tier, modality): accuracy and completion-token statistics.
Per (task, tier): the paired per-instance token difference TQA - VQA over
instances answered correctly under both modalities, with box statistics and
sample-size bookkeeping.
"""

from __future__ import annotations

import csv
import json
import statistics
from pathlib import Path
from typing import Any

from spatialbench.evalharness.runner import EvalRecord


def _quartiles(values: list[float]) -> dict[str, float]:
    if len(values) == 1:
        v = float(values[0])
        return {"min": v, "q1": v, "median": v, "q3": v, "max": v}
    q1, med, q3 = statistics.quantiles(values, n=4, method="inclusive")
    return {
        "min": float(min(values)),
        "q1": float(q1),
        "median": float(med),
        "q3": float(q3),
        "max": float(max(values)),
    }


def _token_stats(tokens: list[int]) -> dict[str, float]:
    stats = _quartiles([float(t) for t in tokens])
    stats["mean"] = float(statistics.fmean(tokens))
    return stats


def aggregate(records: list[EvalRecord]) -> dict[str, Any]:
    groups: dict[tuple[str, str, str], list[EvalRecord]] = {}
    for record in records:
        groups.setdefault((record.task, record.tier, record.modality), []).append(record)

    cells = []
    for (task, tier, modality) in sorted(groups):
        cell_records = groups[(task, tier, modality)]
        tokens = [r.completion_tokens for r in cell_records]
        cells.append(
            {
                "task": task,
                "tier": tier,
                "modality": modality,
                "n": len(cell_records),
                "accuracy": sum(r.correct for r in cell_records) / len(cell_records),
                "unparseable": sum(r.parse_status == "unparseable" for r in cell_records),
                "tokens": _token_stats(tokens),
            }
        )

    # paired TQA - VQA token difference on instances correct under both
    by_instance: dict[str, dict[str, EvalRecord]] = {}
    for record in records:
        by_instance.setdefault(record.instance_id, {})[record.modality] = record
    deltas: dict[tuple[str, str], list[int]] = {}
    for per_mode in by_instance.values():
        tqa, vqa = per_mode.get("TQA"), per_mode.get("VQA")
        if tqa is None or vqa is None or not (tqa.correct and vqa.correct):
            continue
        key = (tqa.task, tqa.tier)
        deltas.setdefault(key, []).append(tqa.completion_tokens - vqa.completion_tokens)

    delta_cells = []
    for (task, tier) in sorted(deltas):
        values = [float(v) for v in deltas[(task, tier)]]
        entry = {"task": task, "tier": tier, "n": len(values)}
        entry.update(_quartiles(values))
        entry["mean"] = float(statistics.fmean(values))
        delta_cells.append(entry)

    return {"cells": cells, "delta_tokens": delta_cells}


def emit_report(
    records: list[EvalRecord], report: dict[str, Any], out_dir: Path
) -> Path:
    """records.jsonl + summary.csv + delta_tokens.csv; returns summary path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    with open(out_dir / "records.jsonl", "w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            fh.write(json.dumps(record.to_record(), sort_keys=True, separators=(",", ":")))
            fh.write("\n")

    summary = out_dir / "summary.csv"
    with open(summary, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["task", "tier", "modality", "n", "accuracy", "unparseable",
             "tokens_mean", "tokens_median", "tokens_q1", "tokens_q3"]
        )
        for cell in report["cells"]:
            writer.writerow(
                [
                    cell["task"],
                    cell["tier"],
                    cell["modality"],
                    cell["n"],
                    f"{cell['accuracy']:.4f}",
                    cell["unparseable"],
                    f"{cell['tokens']['mean']:.1f}",
                    f"{cell['tokens']['median']:.1f}",
                    f"{cell['tokens']['q1']:.1f}",
                    f"{cell['tokens']['q3']:.1f}",
                ]
            )

    with open(out_dir / "delta_tokens.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["task", "tier", "n", "min", "q1", "median", "q3", "max", "mean"])
        for cell in report["delta_tokens"]:
            writer.writerow(
                [cell["task"], cell["tier"], cell["n"], cell["min"], cell["q1"],
                 cell["median"], cell["q3"], cell["max"], f"{cell['mean']:.2f}"]
            )
    return summary
