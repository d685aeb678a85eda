"""Boundary structure of a finite point set with respect to the wedges of a polygon.

For the wedge ``E_i`` spanned by ``a = dir_prev`` and ``b = dir_next`` a point
``q`` lies in ``E_i(p)`` exactly when ``cross(a, q) >= cross(a, p)`` and
``cross(q, b) >= cross(p, b)`` (strictly, for the open wedge). Every
membership question below is therefore a dominance question on two exact
keys per point, which is what makes the quadratic definition test cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import Incomparable, InvalidInput, StructuralViolation
from .geometry import Closedness, Point, Polygon, WedgePlacement, cross, wedge_contains

CLOSED = Closedness.CLOSED
OPEN = Closedness.OPEN


def as_point_set(points: Iterable[Sequence]) -> tuple[Point, ...]:
    """Validate a finite point set: coerce coordinates and refuse duplicates."""
    pts = tuple(p if isinstance(p, Point) else Point.of(p[0], p[1]) for p in points)
    if len(set(pts)) != len(pts):
        raise InvalidInput("point set contains duplicate points")
    return pts


def _dense_rank(values: list[Fraction]) -> np.ndarray:
    order = {v: k for k, v in enumerate(sorted(set(values)))}
    return np.fromiter((order[v] for v in values), dtype=np.int64, count=len(values))


class WedgeKeys:
    """Dense ranks of the two wedge keys of every point, for each wedge index.

    Ranks taken over a set stay valid for all of its subsets, so level peeling
    computes them once.
    """

    def __init__(self, points: Sequence[Point], S: Polygon):
        self.points = tuple(points)
        self.S = S
        m = S.size
        N = len(self.points)
        self.r1 = np.zeros((m, N), dtype=np.int64)
        self.r2 = np.zeros((m, N), dtype=np.int64)
        for i in range(1, m + 1):
            w = S.wedge(i)
            a, b = w.dir_prev, w.dir_next
            self.r1[i - 1] = _dense_rank([a[0] * p[1] - a[1] * p[0] for p in self.points])
            self.r2[i - 1] = _dense_rank([p[0] * b[1] - p[1] * b[0] for p in self.points])

    def boundary_mask(self, i: int, c: Closedness, subset: np.ndarray | None = None) -> np.ndarray:
        """Boolean mask over ``subset`` (indices) of its E_i-boundary points."""
        r1, r2 = self.r1[i - 1], self.r2[i - 1]
        if subset is not None:
            r1, r2 = r1[subset], r2[subset]
        if c is CLOSED:
            inside = (r1[None, :] >= r1[:, None]) & (r2[None, :] >= r2[:, None])
            # A point always lies in its own closed wedge.
            return inside.sum(axis=1) == 1
        inside = (r1[None, :] > r1[:, None]) & (r2[None, :] > r2[:, None])
        return ~inside.any(axis=1)


def suffix_grid(r1: np.ndarray, r2: np.ndarray, weights: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    """``G[U, V] = sum of weights of points with r1 >= U and r2 >= V``.

    The cells ``(U, V)`` are exactly the realizable wedge traces: ``U`` and
    ``V`` range over the key ranks plus one past the end (the empty side).
    """
    grid = np.zeros((shape[0] + 1, shape[1] + 1), dtype=np.int64)
    np.add.at(grid, (r1, r2), weights)
    return grid[::-1, ::-1].cumsum(axis=0).cumsum(axis=1)[::-1, ::-1]


def order_prec(S: Polygon, i: int, p: Sequence, q: Sequence) -> int:
    """Order of two E_i-boundary points along the projection line of wedge i.

    Returns -1 when ``p`` precedes ``q``: ``q - p`` lies in the closed cone
    spanned by ``dir_prev`` and ``-dir_next``. Raises :class:`Incomparable`
    when neither difference lies in that cone, which cannot happen for two
    boundary points of one set.
    """
    if p == q:
        raise ValueError("order_prec needs two distinct points")
    w = S.wedge(i)
    a, b = w.dir_prev, w.dir_next
    d = (q[0] - p[0], q[1] - p[1])
    s, t = cross(a, d), cross(d, b)
    if s <= 0 and t >= 0:
        return -1
    if s >= 0 and t <= 0:
        return 1
    raise Incomparable(f"points {p} and {q} are not ordered by wedge {i}", (p, q))


def compute_boundary_i(H: Sequence[Point], S: Polygon, i: int, c: Closedness = CLOSED,
                       keys: WedgeKeys | None = None) -> list[Point]:
    """E_i-boundary points of ``H``, sorted by the boundary order of wedge i."""
    H = tuple(H)
    if not H:
        return []
    keys = keys or WedgeKeys(H, S)
    mask = keys.boundary_mask(S.norm_index(i), c)
    pts = [H[k] for k in np.flatnonzero(mask)]
    return sorted(pts, key=cmp_to_key(lambda p, q: order_prec(S, i, p, q)))


def _is_cyclic_arc(indices: frozenset[int], size: int) -> bool:
    starts = sum(1 for j in indices if ((j - 2) % size) + 1 not in indices)
    return starts <= 1


def cyclic_arcs(indices: Iterable[int], size: int) -> list[list[int]]:
    """Split a set of indices on the cycle ``1..size`` into maximal cyclic runs."""
    idx = set(indices)
    if len(idx) == size:
        return [list(range(1, size + 1))]
    arcs = []
    for j in sorted(idx):
        if ((j - 2) % size) + 1 in idx:
            continue
        run = [j]
        while (run[-1] % size) + 1 in idx:
            run.append((run[-1] % size) + 1)
        arcs.append(run)
    return arcs


def detect_singular(index_sets: dict[Point, frozenset[int]], n: int,
                    strict: bool = True) -> frozenset[Point]:
    """Points whose set of boundary wedges is not a contiguous cyclic arc.

    With ``strict`` also enforces the two structural facts about such points:
    each one is a boundary point for exactly one opposite pair ``{i, i+n}``,
    and all of them share the same pair.
    """
    size = 2 * n
    singular = {p for p, idx in index_sets.items() if not _is_cyclic_arc(idx, size)}
    if not strict:
        return frozenset(singular)
    pairs = {}
    for p in sorted(singular):
        idx = index_sets[p]
        lo = min(idx)
        if len(idx) != 2 or lo > n or lo + n not in idx:
            raise StructuralViolation(
                f"singular point {p} has boundary wedges {sorted(idx)}, not an opposite pair", (p,))
        pairs[p] = (lo, lo + n)
    if len(set(pairs.values())) > 1:
        raise StructuralViolation(
            f"singular points use different wedge pairs: {sorted(set(pairs.values()))}", tuple(pairs))
    return frozenset(singular)


def _standard_pair(index_sets, singular, n) -> tuple[int, int] | None:
    pairs = set()
    for p in singular:
        idx = index_sets[p]
        lo = min(idx)
        if len(idx) != 2 or lo > n or lo + n not in idx:
            return None
        pairs.add((lo, lo + n))
    return pairs.pop() if len(pairs) == 1 else None


@dataclass(frozen=True)
class BoundaryEntry:
    point: Point
    wedge_indices: frozenset[int]
    type: int
    singular: bool
    rich: bool


class CyclicEntry(NamedTuple):
    """One slot of the cyclic boundary sequence.

    ``wedge`` is the (original) index of the block the slot sits in; ``copy``
    is 1 only for the second occurrence of a singular point.
    """

    point: Point
    wedge: int
    copy: int = 0


@dataclass(frozen=True)
class BoundaryStructure:
    polygon: Polygon
    closedness: Closedness
    points: tuple[Point, ...]
    per_wedge: tuple[tuple[Point, ...], ...]
    cyclic: tuple[CyclicEntry, ...]
    entries: dict[Point, BoundaryEntry] = field(repr=False)
    rotation: int = 0
    singular_pair: tuple[int, int] | None = None
    anomalies: tuple[tuple[str, tuple[Point, ...]], ...] = ()

    def boundary_list(self, i: int) -> tuple[Point, ...]:
        return self.per_wedge[self.polygon.norm_index(i) - 1]

    @property
    def boundary(self) -> frozenset[Point]:
        return frozenset(self.entries)

    @property
    def interior(self) -> tuple[Point, ...]:
        return tuple(p for p in self.points if p not in self.entries)

    @property
    def singular(self) -> frozenset[Point]:
        return frozenset(p for p, e in self.entries.items() if e.singular)

    @property
    def rich(self) -> frozenset[Point]:
        return frozenset(p for p, e in self.entries.items() if e.rich)

    def rotated(self, i: int) -> int:
        """Wedge index after normalizing the singular pair to ``{1, n+1}``."""
        return (i - 1 - self.rotation) % self.polygon.size + 1

    def unrotated(self, j: int) -> int:
        return (j - 1 + self.rotation) % self.polygon.size + 1


def _check_shared(S: Polygon, c: Closedness, per_wedge: list[list[Point]]) -> None:
    size = S.size
    for i in range(1, size + 1):
        nxt = i % size + 1
        nxt_set = set(per_wedge[nxt - 1])
        shared = [p for p in per_wedge[i - 1] if p in nxt_set]
        if c is CLOSED and len(shared) > 1:
            raise StructuralViolation(
                f"{len(shared)} closed boundary points shared by wedges {i} and {nxt}", shared)
        order_next = [p for p in per_wedge[nxt - 1] if p in set(shared)]
        if shared != order_next:
            raise StructuralViolation(
                f"orders of wedges {i} and {nxt} disagree on their shared points", shared)


def assemble_cyclic(H: Sequence[Point], S: Polygon, c: Closedness = CLOSED,
                    with_rich: bool = True) -> BoundaryStructure:
    """Full boundary structure of ``H``: per-wedge lists, cyclic sequence, flags."""
    H = tuple(H)
    size, n = S.size, S.n
    if not H:
        return BoundaryStructure(S, c, H, tuple(() for _ in range(size)), (), {})
    keys = WedgeKeys(H, S)
    per_wedge = [compute_boundary_i(H, S, i, c, keys) for i in range(1, size + 1)]
    index_sets: dict[Point, set[int]] = {}
    for i, lst in enumerate(per_wedge, start=1):
        for p in lst:
            index_sets.setdefault(p, set()).add(i)
    frozen = {p: frozenset(s) for p, s in index_sets.items()}
    anomalies = []
    if c is CLOSED:
        singular = detect_singular(frozen, n)
        _check_shared(S, c, per_wedge)
    else:
        # Open wedges miss the rays along their sides, and points collinear
        # with a side can break the structure facts; record instead of raise.
        singular = detect_singular(frozen, n, strict=False)
        for check in (lambda: detect_singular(frozen, n), lambda: _check_shared(S, c, per_wedge)):
            try:
                check()
            except StructuralViolation as exc:
                anomalies.append((str(exc), exc.witnesses))

    rotation, pair = 0, _standard_pair(frozen, singular, n) if singular else None
    if pair is not None:
        rotation = pair[0] - 1

    def rot(i: int) -> int:
        return (i - 1 - rotation) % size + 1

    position = [{p: k for k, p in enumerate(lst)} for lst in per_wedge]
    slots = []
    for p, idx in frozen.items():
        # One slot per maximal cyclic run of boundary wedges, in the block of
        # the run's least normalized index.
        for copy, arc in enumerate(cyclic_arcs(idx, size)):
            t = min(rot(i) for i in arc)
            wedge = (t - 1 + rotation) % size + 1
            slots.append((t, position[wedge - 1][p], CyclicEntry(p, wedge, copy)))
    slots.sort(key=lambda s: (s[0], s[1]))
    cyclic = tuple(s[2] for s in slots)

    rich = detect_rich(H, S, c, boundary=frozenset(frozen), keys=keys) if with_rich else frozenset()
    entries = {
        p: BoundaryEntry(p, idx, min(idx), p in singular, p in rich)
        for p, idx in frozen.items()
    }
    return BoundaryStructure(S, c, H, tuple(tuple(lst) for lst in per_wedge), cyclic,
                             entries, rotation, pair, tuple(anomalies))


def cyclic_intervals(flags: Sequence[bool]) -> list[tuple[int, int]]:
    """Maximal runs of True in a cyclic sequence, as inclusive (start, end) pairs."""
    L = len(flags)
    if L == 0 or not any(flags):
        return []
    if all(flags):
        return [(0, L - 1)]
    out = []
    for k in range(L):
        if flags[k] and not flags[k - 1]:
            end = k
            while flags[(end + 1) % L]:
                end = (end + 1) % L
            out.append((k, end))
    return out


def wedge_trace_intervals(B: BoundaryStructure, w: WedgePlacement) -> list[tuple[int, int]]:
    """Maximal cyclic intervals of the boundary sequence lying in the placement."""
    return cyclic_intervals([wedge_contains(w, e.point) for e in B.cyclic])


def detect_rich(H: Sequence[Point], S: Polygon, c: Closedness = CLOSED,
                B: BoundaryStructure | None = None, *, boundary: frozenset | None = None,
                keys: WedgeKeys | None = None) -> frozenset[Point]:
    """Boundary points isolable by a wedge placement that also holds an interior point.

    Placements are enumerated exhaustively through their traces (one per cell
    of the two-key rank grid). Open and closed wedges realize the same family
    of traces on a finite set, so ``c`` only matters through ``B``.
    """
    H = tuple(H)
    if boundary is None:
        boundary = B.boundary if B is not None else assemble_cyclic(H, S, c, with_rich=False).boundary
    if not H or len(boundary) == len(H):
        return frozenset()
    keys = keys or WedgeKeys(H, S)
    is_bnd = np.array([p in boundary for p in H], dtype=np.int64)
    ids = np.arange(1, len(H) + 1, dtype=np.int64) * is_bnd
    rich: set[int] = set()
    for i in range(S.size):
        r1, r2 = keys.r1[i], keys.r2[i]
        shape = (int(r1.max()) + 1, int(r2.max()) + 1)
        nb = suffix_grid(r1, r2, is_bnd, shape)
        ni = suffix_grid(r1, r2, 1 - is_bnd, shape)
        who = suffix_grid(r1, r2, ids, shape)
        hits = who[(nb == 1) & (ni >= 1)]
        rich.update(int(h) - 1 for h in np.unique(hits))
    return frozenset(H[k] for k in rich)


@dataclass(frozen=True)
class LevelDecomposition:
    levels: tuple[tuple[Point, ...], ...]
    level_of: dict[Point, int] = field(repr=False)

    def residual(self, n: int) -> tuple[Point, ...]:
        """The set whose open boundary is level ``n``: all points of level >= n."""
        return tuple(p for lvl in self.levels[n:] for p in lvl)


def level_peel(H: Sequence[Point], S: Polygon) -> LevelDecomposition:
    """Iterated boundary levels with respect to the open wedges of ``S``."""
    H = tuple(H)
    if not H:
        return LevelDecomposition((), {})
    keys = WedgeKeys(H, S)
    alive = np.arange(len(H))
    levels = []
    while alive.size:
        on = np.zeros(alive.size, dtype=bool)
        for i in range(1, S.size + 1):
            on |= keys.boundary_mask(i, OPEN, alive)
        if not on.any():
            raise StructuralViolation("nonempty finite set with empty boundary",
                                      tuple(H[k] for k in alive))
        levels.append(tuple(H[k] for k in alive[on]))
        alive = alive[~on]
    level_of = {p: n for n, lvl in enumerate(levels) for p in lvl}
    return LevelDecomposition(tuple(levels), level_of)
