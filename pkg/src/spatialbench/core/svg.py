"""Minimal deterministic SVG writer.

Coordinates are formatted with a fixed precision so identical inputs always
produce identical bytes.
"""

from __future__ import annotations

from spatialbench.core.palette import color_hex
from spatialbench.core.projection import ProjectedFace, Viewpoint, isometric_project
from spatialbench.core.voxel import VoxelSet

_SQRT3_2 = 0.8660254037844386


def _fmt(x: float) -> str:
    return f"{x:.2f}"


class SvgDoc:
    def __init__(self, width: float, height: float) -> None:
        self.width = width
        self.height = height
        self._parts: list[str] = []

    def polygon(self, points: list[tuple[float, float]], fill: str, stroke: str = "#222222", stroke_width: float = 1.0) -> None:
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
        self._parts.append(
            f'<polygon points="{pts}" fill="{fill}" stroke="{stroke}" stroke-width="{_fmt(stroke_width)}" />'
        )

    def rect(self, x: float, y: float, w: float, h: float, fill: str, stroke: str = "none", stroke_width: float = 1.0) -> None:
        attrs = f'x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" height="{_fmt(h)}" fill="{fill}"'
        if stroke != "none":
            attrs += f' stroke="{stroke}" stroke-width="{_fmt(stroke_width)}"'
        self._parts.append(f"<rect {attrs} />")

    def circle(self, cx: float, cy: float, r: float, fill: str) -> None:
        self._parts.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" fill="{fill}" />')

    def line(self, x1: float, y1: float, x2: float, y2: float, stroke: str, width: float = 1.0) -> None:
        self._parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="{stroke}" stroke-width="{_fmt(width)}" />'
        )

    def text(self, x: float, y: float, content: str, size: int = 14, fill: str = "#222222", anchor: str = "start") -> None:
        self._parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="monospace" font-size="{size}" fill="{fill}" text-anchor="{anchor}">{content}</text>'
        )

    def render(self) -> str:
        body = "\n".join(self._parts)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(self.width)}" '
            f'height="{_fmt(self.height)}" viewBox="0 0 {_fmt(self.width)} {_fmt(self.height)}">\n'
            f"{body}\n</svg>\n"
        )


def lattice_to_screen(u: int, v: int, scale: float) -> tuple[float, float]:
    """Map corner-view lattice coordinates to screen units (y grows down)."""
    return (u * _SQRT3_2 * scale, v * 0.5 * scale)


def render_isometric_view(
    voxels: VoxelSet, view: Viewpoint, label: str, scale: float = 36.0
) -> str:
    """One corner view as a standalone SVG document with a caption."""
    faces = isometric_project(voxels, view)
    return render_face_list(faces, label, scale=scale)


def render_face_list(faces: tuple[ProjectedFace, ...], label: str, scale: float = 36.0) -> str:
    points = [lattice_to_screen(u, v, scale) for f in faces for (u, v) in f.polygon]
    min_x = min(p[0] for p in points)
    max_x = max(p[0] for p in points)
    min_y = min(p[1] for p in points)
    max_y = max(p[1] for p in points)
    margin = scale * 0.8
    label_band = 26.0
    width = (max_x - min_x) + 2 * margin
    height = (max_y - min_y) + 2 * margin + label_band

    doc = SvgDoc(width, height)
    doc.rect(0, 0, width, height, fill="#FFFFFF")
    dx = margin - min_x
    dy = margin - min_y + label_band
    for face in faces:
        pts = [
            (x + dx, y + dy)
            for x, y in (lattice_to_screen(u, v, scale) for (u, v) in face.polygon)
        ]
        doc.polygon(pts, fill=color_hex(face.color))
    doc.text(width / 2, 18, label, size=15, anchor="middle")
    return doc.render()
