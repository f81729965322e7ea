"""Deterministic renderings: DOT text for modular graphs, SVG and PDF for çarks."""

from dataclasses import dataclass
from math import cos, pi, sin
from pathlib import Path
from typing import List, Optional, Tuple

from reportlab.graphics import renderPDF, renderSVG
from reportlab.graphics.shapes import Circle, Drawing, Line, String
from reportlab.lib import colors

from farey.carks import Cark, P
from farey.graphs import BULLET, CIRCLE, SCHEMA_VERSION, RibbonGraph


@dataclass
class RenderStyle:
    """Sizes and colors for çark drawings."""

    # Canvas (points, square)
    size: float = 320.0
    margin: float = 24.0

    # Spine
    spine_color: str = "black"
    spine_width: float = 1.5

    # Vertices
    vertex_radius: float = 4.0
    circle_fill: str = "white"
    bullet_fill: str = "black"

    # Branch stubs
    branch_length: float = 28.0
    branch_width: float = 1.0
    branch_color: str = "gray"
    branch_dash: Tuple[float, float] = (4.0, 3.0)

    # Label in the middle of the spine
    font: str = "Helvetica"
    font_size: int = 12
    show_label: bool = True

    @property
    def spine_radius(self) -> float:
        """Radius of the spine circle, leaving room for outward branches."""
        return max(self.size / 2 - self.margin - self.branch_length, self.branch_length + self.vertex_radius)


def _dot_node(g: RibbonGraph, v: int) -> str:
    if g.vertex_type(v) == CIRCLE:
        return f"  v{v} [shape=circle, width=0.18];"
    return f"  v{v} [shape=point, width=0.12];"


def to_dot(g: RibbonGraph) -> str:
    """
    DOT digraph of a modular graph.

    Circles are drawn as open circles and bullets as filled points. Each edge
    points from its circle to its bullet and is labeled with its index; the
    base edge is bold. Every missing slot at a stubbed vertex becomes a dashed
    ray to an invisible node.
    """
    lay = g.layout
    base = g.base_edge if g.base is not None else None
    lines = [
        f"// farey modular graph, schemaVersion {SCHEMA_VERSION}",
        "digraph modular {",
        '  node [label=""];',
    ]
    for v in range(len(lay.cycles)):
        lines.append(_dot_node(g, v))
    for e, (circle, bullet) in enumerate(lay.edges):
        attrs = f'label="{e}"'
        if e == base:
            attrs += ", penwidth=2"
        lines.append(f"  v{lay.vertex[circle]} -> v{lay.vertex[bullet]} [{attrs}];")
    ray = 0
    for v, cycle in enumerate(lay.cycles):
        for _ in range(lay.full[v] - len(cycle)):
            lines.append(f"  r{ray} [shape=none, width=0, height=0];")
            lines.append(f"  v{v} -> r{ray} [style=dashed, arrowhead=none];")
            ray += 1
    lines.append("}")
    return "\n".join(lines) + "\n"


class CarkRenderer:
    """
    Draw a çark as its spine circle with one branch stub per block.

    The spine carries 2·len vertices alternating bullet and circle, laid out
    clockwise from the top. A P block sends its branch outward and an M
    block inward.
    """

    def __init__(self, style: Optional[RenderStyle] = None):
        self.style = style or RenderStyle()

    def _point(self, i: int, count: int, radius: float) -> Tuple[float, float]:
        center = self.style.size / 2
        angle = pi / 2 - 2 * pi * i / count
        return round(center + radius * cos(angle), 3), round(center + radius * sin(angle), 3)

    def _branch(self, block: str, i: int, count: int) -> Line:
        style = self.style
        r = style.spine_radius
        reach = r + style.branch_length if block == P else r - style.branch_length
        x1, y1 = self._point(i, count, r)
        x2, y2 = self._point(i, count, reach)
        return Line(
            x1, y1, x2, y2,
            strokeColor=colors.toColor(style.branch_color),
            strokeWidth=style.branch_width,
            strokeDashArray=list(style.branch_dash),
        )

    def drawing(self, c: Cark) -> Drawing:
        style = self.style
        d = Drawing(style.size, style.size)
        count = 2 * len(c)
        r = style.spine_radius
        points: List[Tuple[float, float]] = [self._point(i, count, r) for i in range(count)]

        # Spine edges
        for i in range(count):
            (x1, y1), (x2, y2) = points[i], points[(i + 1) % count]
            d.add(Line(x1, y1, x2, y2, strokeColor=colors.toColor(style.spine_color), strokeWidth=style.spine_width))

        # Branches hang off the bullets
        for k, block in enumerate(c.spine):
            d.add(self._branch(block, 2 * k, count))

        for i, (x, y) in enumerate(points):
            kind = BULLET if i % 2 == 0 else CIRCLE
            fill = style.bullet_fill if kind == BULLET else style.circle_fill
            d.add(Circle(
                x, y, style.vertex_radius,
                fillColor=colors.toColor(fill),
                strokeColor=colors.toColor(style.spine_color),
                strokeWidth=style.branch_width,
            ))

        if style.show_label:
            d.add(String(
                style.size / 2, style.size / 2 - style.font_size / 3, str(c),
                fontName=style.font,
                fontSize=style.font_size,
                textAnchor="middle",
            ))
        return d

    def to_svg(self, c: Cark) -> str:
        return renderSVG.drawToString(self.drawing(c))

    def to_pdf(self, c: Cark, output_path: Path) -> Path:
        # invariant=1: no creation date or document id in the file
        renderPDF.drawToFile(self.drawing(c), str(output_path), invariant=1)
        return output_path


def cark_svg(c: Cark, style: Optional[RenderStyle] = None) -> str:
    """SVG 1.0 text of a çark drawing, as reportlab's renderSVG writes it."""
    return CarkRenderer(style).to_svg(c)


def cark_pdf(c: Cark, output: Path, style: Optional[RenderStyle] = None) -> Path:
    """Write a one-page PDF of a çark drawing."""
    return CarkRenderer(style).to_pdf(c, output)
