"""Imagery-distillation data synthesis."""

from spatialbench.idf.synth import (
    ImagerySample,
    Stage1Profile,
    Stage2Profile,
    TrajectorySample,
    emit_sft,
    fill_rationales,
    filter_overlap,
    pseudo_reasoning,
    random_walk_samples,
    sample_fingerprints,
    synth_stage1,
    synth_stage2,
    verify_sample,
)

__all__ = [
    "ImagerySample",
    "Stage1Profile",
    "Stage2Profile",
    "TrajectorySample",
    "emit_sft",
    "fill_rationales",
    "filter_overlap",
    "pseudo_reasoning",
    "random_walk_samples",
    "sample_fingerprints",
    "synth_stage1",
    "synth_stage2",
    "verify_sample",
]
