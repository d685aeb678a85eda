"""Static SVG pictures of instances, colorings and decompositions (display only)."""

from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

from .geometry import Point, Polygon, Rect

PALETTE = {"red": "#d62728", "blue": "#1f77b4", None: "#444444"}


def _fmt(v: float) -> str:
    return f"{v:.4f}".rstrip("0").rstrip(".")


class _Canvas:
    def __init__(self, boxes: list[tuple[float, float, float, float]], size: int = 640):
        x0 = min(b[0] for b in boxes)
        y0 = min(b[1] for b in boxes)
        x1 = max(b[2] for b in boxes)
        y1 = max(b[3] for b in boxes)
        span = max(x1 - x0, y1 - y0) or 1.0
        pad = 0.05 * span
        self.x0, self.y1 = x0 - pad, y1 + pad
        self.scale = size / (span + 2 * pad)
        self.size = size
        self.parts: list[str] = []

    def xy(self, p) -> tuple[str, str]:
        # Flip y so the picture has the y axis pointing up.
        return _fmt((float(p[0]) - self.x0) * self.scale), _fmt((self.y1 - float(p[1])) * self.scale)

    def polygon(self, pts, fill="none", stroke="#000", opacity=1.0, width=1.0):
        coords = " ".join(",".join(self.xy(p)) for p in pts)
        self.parts.append(f'<polygon points="{coords}" fill="{fill}" fill-opacity="{_fmt(opacity)}" '
                          f'stroke="{stroke}" stroke-width="{_fmt(width)}"/>')

    def polyline(self, pts, stroke="#000", width=1.0, closed=False):
        tag = "polygon" if closed else "polyline"
        coords = " ".join(",".join(self.xy(p)) for p in pts)
        self.parts.append(f'<{tag} points="{coords}" fill="none" stroke="{stroke}" stroke-width="{_fmt(width)}"/>')

    def dot(self, p, color, r=3.0):
        x, y = self.xy(p)
        self.parts.append(f'<circle cx="{x}" cy="{y}" r="{_fmt(r)}" fill="{color}"/>')

    def text(self, s: str):
        self.parts.append(f'<text x="6" y="16" font-family="monospace" font-size="12">{escape(s)}</text>')

    def document(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.size}" height="{self.size}" '
                f'viewBox="0 0 {self.size} {self.size}">')
        return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *self.parts, "</svg>"]) + "\n"


def _bbox(pts) -> tuple[float, float, float, float]:
    xs = [float(p[0]) for p in pts]
    ys = [float(p[1]) for p in pts]
    return min(xs), min(ys), max(xs), max(ys)


def render_svg(S: Polygon, points: Sequence[Point] = (), colors: dict | None = None,
               cycle: Sequence[Point] = (), centers: Sequence[Point] = (), center_colors: dict | None = None,
               region: Rect | None = None, wedges: Sequence[tuple[int, Point]] = (),
               title: str = "", size: int = 640) -> str:
    """Draw points (colored if ``colors``), the boundary cycle, translates and wedges.

    ``wedges`` are drawn as two rays of the full picture diameter from the apex.
    """
    boxes = []
    if points:
        boxes.append(_bbox(points))
    for c in centers:
        boxes.append(_bbox(S.translate_vertices(c)))
    if region is not None:
        boxes.append((float(region.x0), float(region.y0), float(region.x1), float(region.y1)))
    for _, apex in wedges:
        boxes.append(_bbox([apex]))
    if not boxes:
        boxes.append(_bbox(S.vertices))
    cv = _Canvas(boxes, size)
    for c in centers:
        tone = PALETTE[(center_colors or {}).get(c)]
        cv.polygon(S.translate_vertices(c), fill=tone, stroke=tone, opacity=0.4, width=0.5)
    if region is not None:
        cv.polygon(region.corners(), stroke="#2ca02c", width=2.0)
    if len(cycle) > 1:
        cv.polyline(cycle, stroke="#888888", width=1.0, closed=True)
    reach = max(cv.size / cv.scale, 1.0)
    for i, apex in wedges:
        w = S.wedge(i)
        rays = []
        for d in (w.dir_prev, w.dir_next):
            norm = max(abs(float(d[0])), abs(float(d[1])))
            rays.append((float(apex[0]) + reach * float(d[0]) / norm, float(apex[1]) + reach * float(d[1]) / norm))
        cv.polyline([rays[0], apex, rays[1]], stroke="#9467bd", width=1.5)
    for p in points:
        cv.dot(p, PALETTE[(colors or {}).get(p)])
    for c in centers:
        cv.dot(c, PALETTE[(center_colors or {}).get(c)], r=1.5)
    if title:
        cv.text(title)
    return cv.document()
