"""Split a deep covering of a rectangle by polygon translates into two coverings.

Translates are replaced by their centers: ``a`` lies in the translate at
``c`` exactly when ``c`` lies in the translate at ``a``. A grid of cells small
enough that each cell meets at most two consecutive sides of any translate
turns every translate-cell intersection into a wedge trace, so coloring the
centers of each cell separately with the wedge coloring does the job.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .coloring import RED, ColoringResult, red_blue_coloring
from .errors import DecompositionFailure, InsufficientFold, InvalidInput, StructuralViolation
from .geometry import Closedness, GridParams, Point, Polygon, Rect, grid_params, to_rat
from .oracle import DepthReport, coverage_depth

CLOSED = Closedness.CLOSED


@dataclass(frozen=True)
class CoverInstance:
    """Translates of ``polygon`` given by their centers, meant to cover ``region`` k-fold.

    Repeated centers are allowed; they are set aside before coloring and
    dealt out to the two classes afterwards.
    """

    polygon: Polygon
    centers: tuple[Point, ...]
    region: Rect
    fold_target: int

    def __post_init__(self):
        object.__setattr__(self, "centers",
                           tuple(p if isinstance(p, Point) else Point.of(p[0], p[1]) for p in self.centers))
        if not isinstance(self.fold_target, int) or isinstance(self.fold_target, bool) or self.fold_target < 1:
            raise InvalidInput(f"fold target must be a positive integer, got {self.fold_target!r}")


@dataclass
class Decomposition:
    red_centers: list[Point]
    blue_centers: list[Point]
    params: GridParams | None = None
    input_depth: DepthReport | None = None
    red_depth: DepthReport | None = None
    blue_depth: DepthReport | None = None
    cells: dict[tuple[int, int], ColoringResult] = field(default_factory=dict, repr=False)
    duplicates: int = 0


def cell_of(p: Sequence, x: Fraction) -> tuple[int, int]:
    """Half-open grid cell ``[jx, (j+1)x) x [lx, (l+1)x)`` holding ``p``."""
    return math.floor(p[0] / x), math.floor(p[1] / x)


def dualize(instance: CoverInstance, x: Fraction | None = None) -> dict[tuple[int, int], tuple[Point, ...]]:
    """Distinct centers bucketed by grid cell (cell side ``grid_cell_size`` by default)."""
    x = to_rat(x) if x is not None else grid_params(instance.polygon).cell_side
    cells: dict[tuple[int, int], list[Point]] = {}
    for p in dict.fromkeys(instance.centers):
        cells.setdefault(cell_of(p, x), []).append(p)
    return {key: tuple(sorted(pts)) for key, pts in sorted(cells.items())}


def _color_cell(job):
    pts, S = job
    return red_blue_coloring(pts, S)


def decompose(instance: CoverInstance, m: int = 9, check_input: bool = True,
              verify: bool = True, jobs: int = 1) -> Decomposition:
    """Color every translate red or blue so that each color alone covers the region.

    ``jobs > 1`` colors the cells in a process pool; the merge is in cell order,
    so the result does not depend on ``jobs``.
    """
    S, R = instance.polygon, instance.region
    params = grid_params(S, m)
    if instance.fold_target < params.fold_constant:
        raise InsufficientFold(
            f"fold target {instance.fold_target} is below {params.fold_constant} = {m} * {params.squares_per_translate}")
    report = None
    if check_input:
        report = coverage_depth(S, instance.centers, R, CLOSED)
        if report.min_depth < instance.fold_target:
            raise InsufficientFold(
                f"covering depth {report.min_depth} at {report.witness} is below the fold target {instance.fold_target}",
                witness=report.witness, depth=report.min_depth)

    buckets = list(dualize(instance, params.cell_side).items())
    work = [(pts, S) for _, pts in buckets]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_color_cell, work))
    else:
        results = [_color_cell(w) for w in work]
    color: dict[Point, object] = {}
    cells = {}
    for (key, _), result in zip(buckets, results):
        cells[key] = result
        color.update(result.rb)

    red, blue = [], []
    seen: set[Point] = set()
    extra = 0
    for p in instance.centers:
        if p in seen:
            # Repeated translates only add coverage; alternate them.
            (red if extra % 2 == 0 else blue).append(p)
            extra += 1
            continue
        seen.add(p)
        (red if color[p] is RED else blue).append(p)

    out = Decomposition(red, blue, params, report, cells=cells, duplicates=extra)
    if verify:
        for name, family in (("red", red), ("blue", blue)):
            rep = coverage_depth(S, family, R, CLOSED)
            setattr(out, f"{name}_depth", rep)
            if rep.min_depth < 1:
                raise DecompositionFailure(f"{name} translates miss the point {rep.witness}", witness=rep.witness)
    return out


def inradius_box(S: Polygon) -> Fraction:
    """Half-side of the largest axis-parallel square centered at the center inside S."""
    best = None
    c = S.center
    for a, b in S.edges():
        # Outward normal of a clockwise side.
        nx, ny = -(b.y - a.y), b.x - a.x
        off = nx * (a.x - c.x) + ny * (a.y - c.y)
        h = off / (abs(nx) + abs(ny))
        best = h if best is None else min(best, h)
    return best


def generate_covering(S: Polygon, R: Rect, k: int, seed: int = 0,
                      extras: int | None = None) -> CoverInstance:
    """A seeded instance whose translates cover ``R`` at least ``k`` times.

    A square lattice of centers with ``q = ceil(sqrt(k))`` points per side of
    the inscribed axis-parallel square guarantees the depth; extra centers on a
    four times finer lattice are sprinkled on top. The depth is then certified
    by the exact oracle.
    """
    if k < 1:
        raise InvalidInput("fold target must be at least 1")
    rng = random.Random(seed)
    h = inradius_box(S)
    q = math.isqrt(k - 1) + 1
    s = 2 * h / q
    nx = math.ceil((R.x1 - R.x0 + 2 * h) / s) + 1
    ny = math.ceil((R.y1 - R.y0 + 2 * h) / s) + 1
    centers = [Point(R.x0 - h + u * s, R.y0 - h + v * s) for u in range(nx) for v in range(ny)]
    taken = set(centers)
    count = rng.randint(0, max(1, len(centers) // 4)) if extras is None else extras
    fine = s / 4
    span_x, span_y = 4 * (nx - 1), 4 * (ny - 1)
    tries = 0
    while count > 0 and tries < 20 * (count + 1):
        tries += 1
        p = Point(R.x0 - h + rng.randint(0, span_x) * fine, R.y0 - h + rng.randint(0, span_y) * fine)
        if p in taken:
            continue
        taken.add(p)
        centers.append(p)
        count -= 1
    inst = CoverInstance(S, tuple(centers), R, k)
    rep = coverage_depth(S, inst.centers, R, CLOSED)
    if rep.min_depth < k:
        raise StructuralViolation(f"generated covering has depth {rep.min_depth} < {k}", (rep.witness,))
    return inst
