"""Shared 3-D primitives: directions, orientations, voxel grids, projections."""

from spatialbench.core.directions import CardinalDirection, Face
from spatialbench.core.orientation import Orientation
from spatialbench.core.palette import PALETTE, color_hex
from spatialbench.core.projection import (
    ColorGrid,
    ProjectedFace,
    Viewpoint,
    isometric_project,
    orthographic_project,
)
from spatialbench.core.voxel import VoxelSet

__all__ = [
    "CardinalDirection",
    "ColorGrid",
    "Face",
    "Orientation",
    "PALETTE",
    "ProjectedFace",
    "Viewpoint",
    "VoxelSet",
    "color_hex",
    "isometric_project",
    "orthographic_project",
]
