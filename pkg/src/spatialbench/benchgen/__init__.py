"""Benchmark assembly: instances, modality prompts, dataset serialization."""

from spatialbench.benchgen.instance import PuzzleInstance, instance_fingerprints
from spatialbench.benchgen.prompts import ModalityBundle, build_prompts
from spatialbench.benchgen.dataset import (
    DatasetProfile,
    build_instance,
    emit_dataset,
    generate_dataset,
    load_manifest,
)

__all__ = [
    "DatasetProfile",
    "ModalityBundle",
    "PuzzleInstance",
    "build_instance",
    "build_prompts",
    "emit_dataset",
    "generate_dataset",
    "instance_fingerprints",
    "load_manifest",
]
