"""Deterministic SVG renderings of task states for the image modalities."""

from __future__ import annotations

import math

from spatialbench.core.directions import Face
from spatialbench.core.palette import color_hex
from spatialbench.core.svg import SvgDoc
from spatialbench.envs.cube_roll import CubeRollInstance
from spatialbench.envs.klotski import HEIGHT as KH
from spatialbench.envs.klotski import SHAPES as KSHAPES
from spatialbench.envs.klotski import WIDTH as KW
from spatialbench.envs.klotski import KlotskiBoard
from spatialbench.envs.rubiks import FACES, CubeState
from spatialbench.envs.sokoban import SokobanLevel

_WALL = "#4A4A4A"
_FLOOR = "#FDFDFD"
_GOAL = "#B7E4C7"
_BOX = "#B5651D"
_PLAYER = "#1D6FB5"
_GRID = "#999999"

_BLOCK_FILL = {
    "b": "#E74C3C",
    "h": "#F4D03F",
    "v": "#2E86DE",
    "s": "#27AE60",
}


def sokoban_svg(level: SokobanLevel, cell: float = 42.0) -> str:
    doc = SvgDoc(level.cols * cell, level.rows * cell)
    for r in range(level.rows):
        for c in range(level.cols):
            x, y = c * cell, r * cell
            pos = (r, c)
            fill = _WALL if pos in level.walls else _FLOOR
            doc.rect(x, y, cell, cell, fill=fill, stroke=_GRID, stroke_width=1.0)
            if pos in level.goals and pos not in level.walls:
                doc.rect(x + cell * 0.25, y + cell * 0.25, cell * 0.5, cell * 0.5, fill=_GOAL, stroke="#2D6A4F", stroke_width=1.5)
            if pos in level.boxes:
                doc.rect(x + cell * 0.12, y + cell * 0.12, cell * 0.76, cell * 0.76, fill=_BOX, stroke="#5C2E0E", stroke_width=2.0)
            if pos == level.player:
                doc.circle(x + cell / 2, y + cell / 2, cell * 0.3, fill=_PLAYER)
    return doc.render()


def klotski_svg(board: KlotskiBoard, cell: float = 52.0) -> str:
    doc = SvgDoc(KW * cell, KH * cell + 14)
    for r in range(KH):
        for c in range(KW):
            doc.rect(c * cell, r * cell, cell, cell, fill=_FLOOR, stroke=_GRID, stroke_width=1.0)
    # exit marker under the bottom-center columns
    doc.rect(1 * cell, KH * cell, 2 * cell, 12, fill="#2D6A4F")
    for i, (shape, (r, c)) in enumerate(board.blocks):
        h = max(dr for dr, _ in KSHAPES[shape]) + 1
        w = max(dc for _, dc in KSHAPES[shape]) + 1
        doc.rect(
            c * cell + 3,
            r * cell + 3,
            w * cell - 6,
            h * cell - 6,
            fill=_BLOCK_FILL[shape],
            stroke="#333333",
            stroke_width=2.0,
        )
        doc.text(
            c * cell + w * cell / 2,
            r * cell + h * cell / 2 + 6,
            board.letter_of(i),
            size=20,
            anchor="middle",
        )
    return doc.render()


_NET_OFFSETS = {  # face -> (grid col, grid row) in the unfolded cross
    "U": (1, 0),
    "L": (0, 1),
    "F": (1, 1),
    "R": (2, 1),
    "B": (3, 1),
    "D": (1, 2),
}


def rubiks_svg(state: CubeState, sticker: float = 22.0) -> str:
    pad = 6.0
    face_size = sticker * 3
    doc = SvgDoc(4 * face_size + 5 * pad, 3 * face_size + 4 * pad + 18)
    for face in FACES:
        gc, gr = _NET_OFFSETS[face]
        ox = pad + gc * (face_size + pad)
        oy = pad + gr * (face_size + pad)
        rows = state.face_rows(face)
        for r in range(3):
            for c in range(3):
                doc.rect(
                    ox + c * sticker,
                    oy + r * sticker,
                    sticker,
                    sticker,
                    fill=color_hex(rows[r][c]),
                    stroke="#222222",
                    stroke_width=1.2,
                )
        doc.text(ox + face_size / 2, oy + face_size + 13, face, size=12, anchor="middle")
    return doc.render()


def cube_roll_svg(instance: CubeRollInstance, cell: float = 46.0) -> str:
    """Board with the rolling path and a face-color legend.

    Row 0 is drawn at the top (north edge); the cube glyph shows the three
    faces visible from the south-east-above corner at the start pose.
    """
    size = instance.state.board_size
    legend_h = 52.0
    doc = SvgDoc(size * cell, size * cell + legend_h)
    for r in range(size):
        for c in range(size):
            doc.rect(c * cell, r * cell, cell, cell, fill=_FLOOR, stroke=_GRID, stroke_width=1.0)

    cells = instance.path.cells()
    for (r0, c0), (r1, c1) in zip(cells, cells[1:]):
        x0, y0 = c0 * cell + cell / 2, r0 * cell + cell / 2
        x1, y1 = c1 * cell + cell / 2, r1 * cell + cell / 2
        doc.line(x0, y0, x1, y1, stroke="#555555", width=3.0)
        # arrow head
        ang = math.atan2(y1 - y0, x1 - x0)
        for spread in (2.6, -2.6):
            doc.line(
                x1,
                y1,
                x1 - 10 * math.cos(ang + spread * 0.25),
                y1 - 10 * math.sin(ang + spread * 0.25),
                stroke="#555555",
                width=3.0,
            )
    er, ec = cells[-1]
    doc.circle(ec * cell + cell / 2, er * cell + cell / 2, 5.0, fill="#555555")

    # start-cell cube glyph: top/north/east faces of the start orientation
    sr, sc = instance.path.start
    cx, cy = sc * cell + cell / 2, sr * cell + cell / 2
    k = cell * 0.38
    top = [(cx, cy - k), (cx + k * 0.87, cy - k * 0.5), (cx, cy), (cx - k * 0.87, cy - k * 0.5)]
    east = [(cx, cy), (cx + k * 0.87, cy - k * 0.5), (cx + k * 0.87, cy + k * 0.5), (cx, cy + k)]
    north = [(cx, cy), (cx - k * 0.87, cy - k * 0.5), (cx - k * 0.87, cy + k * 0.5), (cx, cy + k)]
    colors = instance.state.coloring
    orient = instance.state.orientation
    doc.polygon(top, fill=color_hex(colors[orient.body_face_at(Face.UP)]))
    doc.polygon(east, fill=color_hex(colors[orient.body_face_at(Face.EAST)]))
    doc.polygon(north, fill=color_hex(colors[orient.body_face_at(Face.NORTH)]))

    # legend strip: all six faces
    y = size * cell + 14
    x = 6.0
    for face in Face:
        doc.rect(x, y, 14, 14, fill=color_hex(colors[orient.body_face_at(face)]), stroke="#222222", stroke_width=1.0)
        doc.text(x + 18, y + 12, face.label, size=11)
        x += 18 + 7.2 * len(face.label) + 16
    doc.text(6, y + 32, "north is up; arrows show the rolling path", size=11)
    return doc.render()
