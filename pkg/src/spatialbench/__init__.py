"""Spatial-reasoning benchmark engine.

Generates, solves, renders, and grades five puzzle families (cube rolling,
Rubik's cube, mental rotation, box pushing, sliding blocks), evaluates
answer-producing agents under three input modalities, and synthesizes
imagery-distillation training data.
"""

__version__ = "0.1.0"

GENERATOR_VERSION = "1.0.0"
