"""Exact rational plane kernel.

Coordinates are :class:`fractions.Fraction` throughout. Predicates reduce to
signs of cross products, so the distinction between a closed polygon and its
interior is kept exactly; nothing here touches floating point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import InvalidInput, InvalidPolygon

Rat = Fraction


def to_rat(value) -> Fraction:
    """Coerce an int, a ``"num/den"`` string or a Fraction to a Fraction.

    Floats are refused: they would silently import binary rounding noise.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInput(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"not a rational: {value!r}") from exc
    raise InvalidInput(f"not a rational: {value!r}")


def rat_str(value: Fraction) -> str:
    """Serialize as ``"num/den"``, omitting the denominator when it is 1."""
    return str(value)


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(to_rat(x), to_rat(y))

    def __repr__(self) -> str:
        return f"Point({self.x}, {self.y})"

    def __sub__(self, other):  # type: ignore[override]
        return (self.x - other[0], self.y - other[1])

    def shifted(self, dx, dy) -> "Point":
        return Point(self.x + dx, self.y + dy)


class Dir(tuple):
    """A nonzero direction vector; equal as an angle to its positive multiples."""

    __slots__ = ()

    def __new__(cls, dx, dy):
        dx, dy = to_rat(dx), to_rat(dy)
        if dx == 0 and dy == 0:
            raise InvalidInput("zero vector is not a direction")
        return super().__new__(cls, (dx, dy))

    def __getnewargs__(self):
        return tuple(self)

    @property
    def dx(self) -> Fraction:
        return self[0]

    @property
    def dy(self) -> Fraction:
        return self[1]

    def __neg__(self) -> "Dir":
        return Dir(-self[0], -self[1])

    def __repr__(self) -> str:
        return f"Dir({self[0]}, {self[1]})"


def cross(u: Sequence, v: Sequence):
    return u[0] * v[1] - u[1] * v[0]


def dot(u: Sequence, v: Sequence):
    return u[0] * v[0] + u[1] * v[1]


def _cw_quadrant(d: Sequence) -> int:
    # Quadrant of the clockwise angle from +x: [0, pi/2) -> 0, ..., [3pi/2, 2pi) -> 3.
    dx, dy = d[0], d[1]
    if dx > 0 and dy <= 0:
        return 0
    if dx <= 0 and dy < 0:
        return 1
    if dx < 0 and dy >= 0:
        return 2
    return 3


def arg_cmp(a: Sequence, b: Sequence) -> int:
    """Compare clockwise angles from the positive x axis; returns -1, 0 or 1."""
    qa, qb = _cw_quadrant(a), _cw_quadrant(b)
    if qa != qb:
        return -1 if qa < qb else 1
    c = cross(a, b)
    if c == 0:
        return 0
    # b is clockwise of a (negative cross) means a larger clockwise angle for b.
    return -1 if c < 0 else 1


class Closedness(enum.Enum):
    CLOSED = "closed"
    OPEN = "open"


CLOSED = Closedness.CLOSED
OPEN = Closedness.OPEN


@dataclass(frozen=True)
class WedgeTemplate:
    """The wedge belonging to a vertex: the cone spanned by the two edge directions."""

    index: int
    dir_prev: Dir
    dir_next: Dir
    closedness: Closedness

    def contains_vector(self, u: Sequence) -> bool:
        a, b = self.dir_prev, self.dir_next
        s, t = cross(a, u), cross(u, b)
        if self.closedness is Closedness.CLOSED:
            return s >= 0 and t >= 0
        return s > 0 and t > 0

    def at(self, apex: Point) -> "WedgePlacement":
        return WedgePlacement(self, apex)


@dataclass(frozen=True)
class WedgePlacement:
    template: WedgeTemplate
    apex: Point

    def __contains__(self, p) -> bool:
        return wedge_contains(self, p)


def wedge_contains(w: WedgePlacement, p: Sequence) -> bool:
    return w.template.contains_vector((p[0] - w.apex[0], p[1] - w.apex[1]))


class Polygon:
    """Closed or open, strictly convex, centrally symmetric polygon.

    ``vertices`` run clockwise (y axis pointing up). Vertex and wedge indices
    are 1-based and taken modulo ``2n``. Counterclockwise input is rejected
    rather than reversed, since the index arithmetic depends on orientation.
    """

    def __init__(self, vertices: Iterable[Sequence]):
        verts = tuple(Point.of(v[0], v[1]) for v in vertices)
        m = len(verts)
        if m < 4 or m % 2:
            raise InvalidPolygon(f"need an even number >= 4 of vertices, got {m}")
        if len(set(verts)) != m:
            raise InvalidPolygon("vertices must be distinct")
        for i in range(m):
            a, b = verts[i], verts[(i + 1) % m]
            edge = b - a
            for j in range(m):
                if j in (i, (i + 1) % m):
                    continue
                side = cross(edge, verts[j] - a)
                if side >= 0:
                    raise InvalidPolygon(
                        "vertices are not in strictly convex clockwise position "
                        f"(edge {i + 1}, vertex {j + 1})"
                    )
        n = m // 2
        cx = sum(v.x for v in verts) / m
        cy = sum(v.y for v in verts) / m
        for i in range(n):
            v, w = verts[i], verts[i + n]
            if v.x + w.x != 2 * cx or v.y + w.y != 2 * cy:
                raise InvalidPolygon(f"not centrally symmetric at vertex {i + 1}")
        self.vertices = verts
        self.n = n
        self.center = Point(cx, cy)
        self._wedge_cache: dict = {}

    def __repr__(self) -> str:
        body = ", ".join(f"({v.x}, {v.y})" for v in self.vertices)
        return f"Polygon([{body}])"

    def __eq__(self, other) -> bool:
        return isinstance(other, Polygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    @property
    def size(self) -> int:
        """Number of vertices, ``2n``."""
        return 2 * self.n

    def vertex(self, i: int) -> Point:
        return self.vertices[(i - 1) % self.size]

    def norm_index(self, i: int) -> int:
        return (i - 1) % self.size + 1

    def edges(self) -> list[tuple[Point, Point]]:
        """Sides ``(v_i, v_{i+1})`` for i = 1..2n."""
        return [(self.vertex(i), self.vertex(i + 1)) for i in range(1, self.size + 1)]

    @cached_property
    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    @property
    def width(self) -> Fraction:
        x0, _, x1, _ = self.bbox
        return x1 - x0

    @property
    def height(self) -> Fraction:
        _, y0, _, y1 = self.bbox
        return y1 - y0

    def translate_vertices(self, center: Sequence) -> list[Point]:
        """Vertices of the translate whose center sits at ``center``."""
        dx, dy = center[0] - self.center.x, center[1] - self.center.y
        return [Point(v.x + dx, v.y + dy) for v in self.vertices]

    def scaled(self, factor) -> "Polygon":
        f = to_rat(factor)
        return Polygon([(v.x * f, v.y * f) for v in self.vertices])

    def wedge(self, i: int, closedness: Closedness = Closedness.CLOSED) -> WedgeTemplate:
        key = (self.norm_index(i), closedness)
        cache = self._wedge_cache
        if key not in cache:
            cache[key] = wedge_of_vertex(self, i, closedness)
        return cache[key]

    def wedges(self, closedness: Closedness = Closedness.CLOSED) -> list[WedgeTemplate]:
        return [self.wedge(i, closedness) for i in range(1, self.size + 1)]


def wedge_of_vertex(S: Polygon, i: int, c: Closedness = Closedness.CLOSED) -> WedgeTemplate:
    if not isinstance(i, int) or isinstance(i, bool):
        raise IndexError(f"vertex index must be an integer, got {i!r}")
    v = S.vertex(i)
    return WedgeTemplate(
        index=S.norm_index(i),
        dir_prev=Dir(*(S.vertex(i - 1) - v)),
        dir_next=Dir(*(S.vertex(i + 1) - v)),
        closedness=c,
    )


def polygon_contains(S: Polygon, center: Sequence, p: Sequence, c: Closedness = Closedness.CLOSED) -> bool:
    """Is ``p`` in the translate of ``S`` centered at ``center``?"""
    dx, dy = center[0] - S.center.x, center[1] - S.center.y
    px, py = p[0] - dx, p[1] - dy
    closed = c is Closedness.CLOSED
    for a, b in S.edges():
        side = (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x)
        # Interior lies to the right of each clockwise edge.
        if side > 0 or (side == 0 and not closed):
            return False
    return True


def point_segment_dist2(p: Sequence, a: Sequence, b: Sequence) -> Fraction:
    ab = (b[0] - a[0], b[1] - a[1])
    ap = (p[0] - a[0], p[1] - a[1])
    t = Fraction(dot(ap, ab)) / dot(ab, ab)
    t = min(max(t, Fraction(0)), Fraction(1))
    qx, qy = a[0] + t * ab[0], a[1] + t * ab[1]
    return (p[0] - qx) ** 2 + (p[1] - qy) ** 2


def segment_dist2(a: Sequence, b: Sequence, c: Sequence, d: Sequence) -> Fraction:
    """Squared distance between two non-crossing closed segments."""
    return min(
        point_segment_dist2(a, c, d),
        point_segment_dist2(b, c, d),
        point_segment_dist2(c, a, b),
        point_segment_dist2(d, a, b),
    )


def nonadjacent_side_dist2(S: Polygon) -> Fraction:
    edges = S.edges()
    m = len(edges)
    best = None
    for i in range(m):
        for j in range(i + 2, m):
            if i == 0 and j == m - 1:
                continue
            d2 = segment_dist2(*edges[i], *edges[j])
            if best is None or d2 < best:
                best = d2
    return best


def grid_cell_size(S: Polygon) -> Fraction:
    """Largest power of two ``x`` (possibly negative exponent) with ``2 x^2 < D^2``.

    ``D`` is the smallest distance between two non-adjacent sides, so a square
    of side ``x`` (diameter ``x * sqrt 2 < D``) meets at most two consecutive
    sides of any translate of ``S``.
    """
    d2 = nonadjacent_side_dist2(S)
    x = Fraction(1)
    while 2 * x * x >= d2:
        x /= 2
    while 2 * (2 * x) ** 2 < d2:
        x *= 2
    return x


def squares_per_translate(S: Polygon, x) -> int:
    """Upper bound on the number of half-open grid cells of side ``x`` met by a translate."""
    x = to_rat(x)
    if x <= 0:
        raise ValueError("cell side must be positive")
    return (math.ceil(S.width / x) + 1) * (math.ceil(S.height / x) + 1)


@dataclass(frozen=True)
class GridParams:
    cell_side: Fraction
    squares_per_translate: int
    fold_constant: int
    m: int = 9

    def __post_init__(self):
        if self.cell_side <= 0 or self.squares_per_translate < 1:
            raise ValueError("invalid grid parameters")
        if self.fold_constant != self.squares_per_translate * self.m:
            raise ValueError("fold constant must equal m * squares_per_translate")


def grid_params(S: Polygon, m: int = 9) -> GridParams:
    x = grid_cell_size(S)
    kp = squares_per_translate(S, x)
    return GridParams(x, kp, kp * m, m)


BUILTIN_POLYGONS: dict[str, list[tuple[str, str]]] = {
    "square": [("0", "1"), ("1", "1"), ("1", "0"), ("0", "0")],
    "hexagon": [("-1/2", "1"), ("1/2", "1"), ("1", "0"), ("1/2", "-1"), ("-1/2", "-1"), ("-1", "0")],
    "octagon": [
        ("-1/2", "5/4"), ("1/2", "5/4"), ("5/4", "1/2"), ("5/4", "-1/2"),
        ("1/2", "-5/4"), ("-1/2", "-5/4"), ("-5/4", "-1/2"), ("-5/4", "1/2"),
    ],
}


def builtin_polygon(name: str) -> Polygon:
    try:
        return Polygon(BUILTIN_POLYGONS[name])
    except KeyError:
        raise InvalidInput(f"unknown polygon {name!r}; built-ins: {sorted(BUILTIN_POLYGONS)}") from None


@dataclass(frozen=True)
class Rect:
    """Closed axis-aligned rational rectangle; may degenerate to a segment or point."""

    x0: Fraction
    y0: Fraction
    x1: Fraction
    y1: Fraction

    def __post_init__(self):
        for name in ("x0", "y0", "x1", "y1"):
            object.__setattr__(self, name, to_rat(getattr(self, name)))
        if self.x1 < self.x0 or self.y1 < self.y0:
            raise InvalidInput(f"empty rectangle {self}")

    def __contains__(self, p) -> bool:
        return self.x0 <= p[0] <= self.x1 and self.y0 <= p[1] <= self.y1

    def corners(self) -> list[Point]:
        return [Point(self.x0, self.y0), Point(self.x1, self.y0),
                Point(self.x1, self.y1), Point(self.x0, self.y1)]


def random_points(n: int, rng, max_den: int = 64, region: "Rect | None" = None) -> list[Point]:
    """``n`` distinct seeded rational points of ``region`` (unit square by default).

    Each coordinate draws a denominator in ``1..max_den`` and then a numerator,
    so small denominators (and hence collinear points) are common.
    """
    R = region or Rect(0, 0, 1, 1)
    if n < 0:
        raise InvalidInput("point count must be nonnegative")
    out: dict[Point, None] = {}
    guard = 0
    while len(out) < n:
        guard += 1
        if guard > 1000 * (n + 10):
            raise InvalidInput(f"cannot draw {n} distinct points with denominators <= {max_den}")
        coords = []
        for lo, hi in ((R.x0, R.x1), (R.y0, R.y1)):
            d = rng.randint(1, max_den)
            a, b = math.ceil(lo * d), math.floor(hi * d)
            coords.append(Fraction(rng.randint(a, b), d) if a <= b else lo)
        out.setdefault(Point(coords[0], coords[1]), None)
    return list(out)
