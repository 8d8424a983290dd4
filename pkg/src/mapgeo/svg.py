"""Deterministic SVG emission for maps and traces.

Byte-identical output for identical inputs: fixed float formatting, no
timestamps, elements emitted in input order. The plane's y axis points up;
screen coordinates flip it, which the header comment of every file records.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import geom
from .errors import EmptyViewport
from .map_core import EdgeClass, PlanarMap, PointClass, classify_edge
from .mline import TraceResult

POINT_COLORS = {
    PointClass.ELLIPTIC: "#1f77b4",
    PointClass.EUCLIDEAN: "#2ca02c",
    PointClass.HYPERBOLIC: "#d62728",
}

EDGE_COLORS = {
    EdgeClass.CE1: "#17becf",
    EdgeClass.CE2: "#2ca02c",
    EdgeClass.CE3: "#bcbd22",
    EdgeClass.CE4: "#1f77b4",
    EdgeClass.CE5: "#9467bd",
    EdgeClass.CE6: "#d62728",
}


@dataclass(frozen=True)
class RenderSpec:
    canvas: tuple[int, int] = (800, 800)
    viewport: tuple[float, float, float, float] | None = None  # xmin, ymin, xmax, ymax
    trace_color: str = "#111111"
    stroke_width: float = 2.0
    point_colors: dict[PointClass, str] = field(default_factory=lambda: dict(POINT_COLORS))
    edge_colors: dict[EdgeClass, str] = field(default_factory=lambda: dict(EDGE_COLORS))


def _fmt(x: float) -> str:
    return f"{x:.6f}"


class SvgCanvas:
    def __init__(self, width: int, height: int, viewport: tuple[float, float, float, float]):
        xmin, ymin, xmax, ymax = viewport
        if width <= 0 or height <= 0 or xmax <= xmin or ymax <= ymin:
            raise EmptyViewport("canvas and viewport must have positive extent")
        self.width = width
        self.height = height
        self.viewport = viewport
        self._scale = min(width / (xmax - xmin), height / (ymax - ymin))
        self._elements: list[str] = []

    def to_screen(self, p: geom.Point) -> tuple[float, float]:
        xmin, ymin, _, ymax = self.viewport
        return ((p[0] - xmin) * self._scale, self.height - (p[1] - ymin) * self._scale)

    def _clip(self, a: geom.Point, b: geom.Point):
        return geom.clip_segment_to_rect(a, b, *self._rect())

    def _rect(self):
        xmin, ymin, xmax, ymax = self.viewport
        return (xmin, ymin, xmax, ymax)

    def line(self, a: geom.Point, b: geom.Point, color: str, width: float = 2.0) -> None:
        clipped = self._clip(a, b)
        if clipped is None:
            return
        (x0, y0), (x1, y1) = (self.to_screen(clipped[0]), self.to_screen(clipped[1]))
        self._elements.append(
            f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}" '
            f'stroke="{color}" stroke-width="{_fmt(width)}" />'
        )

    def polyline(self, points: list[geom.Point], color: str, width: float = 2.0) -> None:
        for a, b in zip(points[:-1], points[1:]):
            self.line(a, b, color, width)

    def circle(self, center: geom.Point, radius_px: float, color: str) -> None:
        xmin, ymin, xmax, ymax = self.viewport
        if not (xmin <= center[0] <= xmax and ymin <= center[1] <= ymax):
            return
        cx, cy = self.to_screen(center)
        self._elements.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(radius_px)}" '
            f'fill="{color}" />'
        )

    def to_text(self) -> str:
        header = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" '
            f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">\n'
            "<!-- plane y axis points up; screen y is flipped -->\n"
            f'<rect width="{self.width}" height="{self.height}" fill="#ffffff" />\n'
        )
        return header + "\n".join(self._elements) + "\n</svg>\n"


def _auto_viewport(pmap: PlanarMap | None, traces: list[TraceResult]) -> tuple[float, float, float, float]:
    xs: list[float] = []
    ys: list[float] = []
    if pmap is not None:
        for v in pmap.vertices.values():
            xs.append(v.position[0])
            ys.append(v.position[1])
    for tr in traces:
        for a, b in tr.segments:
            xs.extend((a[0], b[0]))
            ys.extend((a[1], b[1]))
    if not xs:
        raise EmptyViewport("nothing to render")
    pad = 0.1 * max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    return (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)


def render_svg(
    pmap: PlanarMap | None,
    traces: list[TraceResult],
    spec: RenderSpec | None = None,
) -> str:
    """Map edges colored by edge class, traces as polylines, crossings as
    circles colored by point class."""
    spec = spec or RenderSpec()
    viewport = spec.viewport or _auto_viewport(pmap, traces)
    canvas = SvgCanvas(spec.canvas[0], spec.canvas[1], viewport)
    if pmap is not None:
        for e in pmap.edges:
            a, b = pmap.edge_points(e.endpoints)
            canvas.line(a, b, spec.edge_colors[classify_edge(pmap, e.endpoints)],
                        spec.stroke_width)
        for v in pmap.vertices.values():
            from .map_core import classify_vertex

            canvas.circle(v.position, 4.0, spec.point_colors[classify_vertex(pmap, v.id)])
    for tr in traces:
        for a, b in tr.segments:
            canvas.line(a, b, spec.trace_color, spec.stroke_width * 0.75)
        for ev in tr.crossings:
            cls = (
                PointClass.ELLIPTIC
                if ev.sign > 0
                else PointClass.HYPERBOLIC
                if ev.sign < 0
                else PointClass.EUCLIDEAN
            )
            canvas.circle(ev.point, 3.0, spec.point_colors[cls])
    return canvas.to_text()
