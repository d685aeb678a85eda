"""Two-colorings of finite point sets so that large wedge traces see both colors.

Finite specializations of the boundary procedures: on a finite set every two
cyclically adjacent boundary points are neighbors, so there are no lonely
points and all the interval-halving machinery for accumulating boundaries
never fires.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .boundary import BoundaryStructure, assemble_cyclic, level_peel
from .errors import ConstraintUnsatisfiable, StructuralViolation
from .geometry import Closedness, Point, Polygon

CLOSED = Closedness.CLOSED
OPEN = Closedness.OPEN


class BWColor(enum.Enum):
    BLACK = "black"
    WHITE = "white"


class RBColor(enum.Enum):
    RED = "red"
    BLUE = "blue"


BLACK, WHITE = BWColor.BLACK, BWColor.WHITE
RED, BLUE = RBColor.RED, RBColor.BLUE

RICH_OR_WHITE_NOTE = (
    "levels of the multi-level procedure map blue (even) / red (odd) to points "
    "that are rich or white"
)
INFINITE_FOLD_NOTE = (
    "the infinite-fold guarantee has no finite restatement; it is replaced by "
    "the level-peeling checks and the step-1 gap/alternation audit"
)


def bw_constraints_ok(colors: Sequence[BWColor]) -> bool:
    """Cyclically: no two consecutive black, and (length >= 3) no three consecutive white."""
    L = len(colors)
    if L <= 1:
        return True
    for k in range(L):
        if colors[k] is BLACK and colors[(k + 1) % L] is BLACK:
            return False
    if L >= 3:
        for k in range(L):
            if colors[k] is WHITE and colors[(k + 1) % L] is WHITE and colors[(k + 2) % L] is WHITE:
                return False
    return True


def _fill_cycle(forced: list[Optional[BWColor]]) -> list[BWColor]:
    """Lexicographically first (black before white) valid cyclic coloring."""
    L = len(forced)
    if L == 0:
        return []
    if L == 1:
        return [forced[0] or WHITE]
    options = [(BLACK, WHITE) if f is None else (f,) for f in forced]
    if L == 2:
        for c0 in options[0]:
            for c1 in options[1]:
                if not (c0 is BLACK and c1 is BLACK):
                    return [c0, c1]
        raise ConstraintUnsatisfiable("two forced black neighbors")

    def ok(x, y, z):
        return not (y is BLACK and z is BLACK) and not (x is WHITE and y is WHITE and z is WHITE)

    for c0 in options[0]:
        for c1 in options[1]:
            if c0 is BLACK and c1 is BLACK:
                continue
            # feasible[k] = set of states (c[k-1], c[k]) from which positions k+1.. complete.
            feasible: list[set] = [set() for _ in range(L)]
            for x in (BLACK, WHITE):
                for y in options[L - 1]:
                    if y is BLACK and c0 is BLACK:
                        continue
                    if not ok(x, y, c0) or not ok(y, c0, c1):
                        continue
                    feasible[L - 1].add((x, y))
            for k in range(L - 2, 0, -1):
                for x in (BLACK, WHITE):
                    for y in options[k]:
                        if any(ok(x, y, z) and (y, z) in feasible[k + 1] for z in options[k + 1]):
                            feasible[k].add((x, y))
            if (c0, c1) not in feasible[1]:
                continue
            colors = [c0, c1]
            for k in range(2, L):
                x, y = colors[-2], colors[-1]
                for z in options[k]:
                    if ok(x, y, z) and (y, z) in feasible[k]:
                        colors.append(z)
                        break
            return colors
    raise ConstraintUnsatisfiable(f"no valid black/white coloring of a cycle of length {L}")


def bw_cycle_colors(B: BoundaryStructure) -> list[BWColor]:
    """Black/white color of every slot of the cyclic boundary sequence."""
    forced: list[Optional[BWColor]] = [None] * len(B.cyclic)
    color_of: dict[Point, BWColor] = {}
    for e in B.cyclic:
        if e.copy == 0 and B.entries[e.point].singular:
            color_of[e.point] = BLACK if len(color_of) % 2 == 0 else WHITE
    for k, e in enumerate(B.cyclic):
        if e.point in color_of:
            forced[k] = color_of[e.point]
    colors = _fill_cycle(forced)
    if len(colors) >= 3 and not bw_constraints_ok(colors):
        raise StructuralViolation("black/white constraints violated", [e.point for e in B.cyclic])
    return colors


def bw_boundary_coloring(B: BoundaryStructure) -> dict[Point, BWColor]:
    """Color the boundary black/white: no two adjacent black, no three adjacent white.

    Singular points are fixed first, alternating along the boundary order
    starting with black; the regular stretches are then filled with the
    pattern black, white, black, ... as far as the cyclic constraints allow.
    A lone boundary point is white; two are black then white.
    """
    colors = bw_cycle_colors(B)
    out: dict[Point, BWColor] = {}
    for e, col in zip(B.cyclic, colors):
        if out.setdefault(e.point, col) is not col:
            raise StructuralViolation("singular point received two colors", (e.point,))
    return out


@dataclass
class ColoringResult:
    rb: dict[Point, RBColor]
    bw_audit: dict[tuple[Point, object], BWColor] = field(default_factory=dict)
    level_audit: dict[Point, object] = field(default_factory=dict)
    rich_audit: frozenset[Point] = frozenset()
    bw_cycles: list[tuple[object, tuple[tuple[Point, BWColor], ...]]] = field(default_factory=list)
    step1_audit: list[tuple[Point, int, RBColor]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def color_classes(self) -> tuple[list[Point], list[Point]]:
        red = [p for p, c in self.rb.items() if c is RED]
        blue = [p for p, c in self.rb.items() if c is BLUE]
        return red, blue


def bounding_square(points: Sequence[Point]) -> tuple[Fraction, Fraction, Fraction]:
    """Lower-left corner and side of the smallest axis-aligned square at the bbox corner."""
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    side = max(max(xs) - min(xs), max(ys) - min(ys))
    return min(xs), min(ys), side if side > 0 else Fraction(1)


def _quadrant_split(pts, x0, y0, side):
    half = side / 2
    mx, my = x0 + half, y0 + half
    quads = {(0, 0): [], (0, 1): [], (1, 0): [], (1, 1): []}
    for p in pts:
        # Points on a shared edge go to the lexicographically least closed quadrant.
        quads[(int(p.x > mx), int(p.y > my))].append(p)
    return [(quads[key], x0 + key[0] * half, y0 + key[1] * half, half) for key in sorted(quads)]


def quadtree_color(H4: Sequence[Point], square: tuple | None = None,
                   threshold: int = 2) -> dict[Point, RBColor]:
    """Recursive four-way subdivision coloring of the deepest level.

    A square holding at most ``threshold`` points colors its uncolored points
    red and stops; otherwise it colors its two lexicographically least
    uncolored points red and blue and recurses into its quadrants.
    """
    H4 = sorted(H4)
    colors: dict[Point, RBColor] = {}
    if not H4:
        return colors
    x0, y0, side = square if square is not None else bounding_square(H4)
    stack = [(H4, x0, y0, side)]
    while stack:
        pts, x0, y0, side = stack.pop()
        fresh = [p for p in pts if p not in colors]
        if not fresh:
            continue
        if len(pts) <= threshold:
            for p in fresh:
                colors[p] = RED
            continue
        colors[fresh[0]] = RED
        if len(fresh) > 1:
            colors[fresh[1]] = BLUE
        children = [q for q in _quadrant_split(pts, x0, y0, side) if q[0]]
        stack.extend(reversed(children))
    return colors


def _record_bw(result: ColoringResult, label, B: BoundaryStructure) -> dict[Point, BWColor]:
    colors = bw_cycle_colors(B)
    result.bw_cycles.append((label, tuple((e.point, c) for e, c in zip(B.cyclic, colors))))
    bw = {e.point: c for e, c in zip(B.cyclic, colors)}
    for p, c in bw.items():
        result.bw_audit[(p, label)] = c
    return bw


def red_blue_coloring(H: Sequence[Point], S: Polygon) -> ColoringResult:
    """Four-level red/blue coloring of a finite point set.

    1. closed boundary: blue if rich or white, otherwise red;
    2. closed boundary of the rest: red;
    3. open boundary of the rest: blue if white, red if black;
    4. what is left: quadtree coloring.
    """
    H = tuple(H)
    result = ColoringResult(rb={})
    if not H:
        return result

    B1 = assemble_cyclic(H, S, CLOSED)
    bw = _record_bw(result, "first", B1)
    result.rich_audit = B1.rich
    for p, c in bw.items():
        result.rb[p] = BLUE if (p in B1.rich or c is WHITE) else RED
        result.level_audit[p] = "first"
    H1 = B1.interior

    B2 = assemble_cyclic(H1, S, CLOSED, with_rich=False) if H1 else None
    H2: tuple[Point, ...] = ()
    if B2 is not None:
        for p in B2.boundary:
            result.rb[p] = RED
            result.level_audit[p] = "second"
        H2 = B2.interior

    H3: tuple[Point, ...] = ()
    if H2:
        B3 = assemble_cyclic(H2, S, OPEN, with_rich=False)
        bw = _record_bw(result, "third", B3)
        for p, c in bw.items():
            result.rb[p] = BLUE if c is WHITE else RED
            result.level_audit[p] = "third"
        H3 = B3.interior

    for p, c in quadtree_color(H3).items():
        result.rb[p] = c
        result.level_audit[p] = "fourth"
    if len(result.rb) != len(H):
        raise StructuralViolation("red/blue coloring is not total", [p for p in H if p not in result.rb])
    return result


def _closed_square_members(points, x0, y0, side):
    return [p for p in points if x0 <= p.x <= x0 + side and y0 <= p.y <= y0 + side]


def multiple_red_blue(H: Sequence[Point], S: Polygon, gap: int = 3) -> ColoringResult:
    """Multi-level coloring over the open-boundary onion layers of ``H``.

    Step 1 walks the breadth-first list of subdivision squares and alternately
    picks a red and a blue point, each from a level at least ``gap`` above the
    previous pick, stopping at the first square with no eligible point. Then
    each level is black/white colored on its own; on even levels rich or white
    means blue, on odd levels the roles of the colors are swapped.
    """
    H = tuple(H)
    result = ColoringResult(rb={}, notes=[RICH_OR_WHITE_NOTE, INFINITE_FOLD_NOTE])
    if not H:
        return result
    dec = level_peel(H, S)
    h = dec.level_of

    squares = deque([bounding_square(H)])
    last_level: Optional[int] = None
    color = RED
    while squares:
        x0, y0, side = squares[0]
        members = _closed_square_members(H, x0, y0, side)
        eligible = [p for p in members if p not in result.rb
                    and (last_level is None or h[p] >= last_level + gap)]
        if not eligible:
            break
        pick = min(eligible, key=lambda p: (h[p], p))
        result.rb[pick] = color
        result.step1_audit.append((pick, h[pick], color))
        last_level = h[pick]
        if color is RED:
            color = BLUE
        else:
            color = RED
            squares.popleft()
            half = side / 2
            for dx in (0, 1):
                for dy in (0, 1):
                    squares.append((x0 + dx * half, y0 + dy * half, half))

    for n, level in enumerate(dec.levels):
        B = assemble_cyclic(dec.residual(n), S, OPEN)
        if B.boundary != frozenset(level):
            raise StructuralViolation(f"level {n} is not the open boundary of its residual", level)
        bw = _record_bw(result, n, B)
        result.rich_audit = result.rich_audit | B.rich
        favored, other = (BLUE, RED) if n % 2 == 0 else (RED, BLUE)
        for p in level:
            result.level_audit[p] = n
            if p in result.rb:
                continue
            result.rb[p] = favored if (p in B.rich or bw[p] is WHITE) else other
    return result
