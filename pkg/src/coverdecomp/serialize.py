"""Versioned JSON artifacts. Every coordinate is a rational string, never a float."""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from typing import Any, Sequence

from .errors import InvalidInput
from .geometry import BUILTIN_POLYGONS, Point, Polygon, Rect, rat_str, to_rat

FORMAT = "coverdecomp/1"


def point_to_json(p: Sequence) -> list[str]:
    return [rat_str(to_rat(p[0])), rat_str(to_rat(p[1]))]


def point_from_json(obj) -> Point:
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise InvalidInput(f"a point is a pair of rationals, got {obj!r}")
    try:
        return Point.of(obj[0], obj[1])
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"bad point {obj!r}: {exc}") from None


def points_to_json(points) -> list[list[str]]:
    return [point_to_json(p) for p in points]


def points_from_json(objs) -> list[Point]:
    if not isinstance(objs, list):
        raise InvalidInput("expected a list of points")
    return [point_from_json(o) for o in objs]


def polygon_to_json(S: Polygon) -> list[list[str]]:
    return points_to_json(S.vertices)


def polygon_from_json(obj) -> Polygon:
    if isinstance(obj, str):
        if obj not in BUILTIN_POLYGONS:
            raise InvalidInput(f"unknown polygon {obj!r}")
        return Polygon(BUILTIN_POLYGONS[obj])
    return Polygon(points_from_json(obj))


def rect_to_json(R: Rect) -> list[str]:
    return [rat_str(v) for v in (R.x0, R.y0, R.x1, R.y1)]


def rect_from_json(obj) -> Rect:
    if not isinstance(obj, (list, tuple)) or len(obj) != 4:
        raise InvalidInput(f"a region is [x0, y0, x1, y1], got {obj!r}")
    try:
        return Rect(*(to_rat(v) for v in obj))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"bad region {obj!r}: {exc}") from None


@dataclass
class InstanceFile:
    """A point-set or covering instance as stored on disk."""

    polygon: Polygon
    points: list[Point] | None = None
    centers: list[Point] | None = None
    region: Rect | None = None
    fold_target: int | None = None
    seed: int | None = None

    @property
    def kind(self) -> str:
        return "covering" if self.centers is not None else "points"

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"format": FORMAT, "kind": self.kind, "polygon": polygon_to_json(self.polygon)}
        if self.points is not None:
            out["points"] = points_to_json(self.points)
        if self.centers is not None:
            out["centers"] = points_to_json(self.centers)
        if self.region is not None:
            out["region"] = rect_to_json(self.region)
        if self.fold_target is not None:
            out["fold_target"] = self.fold_target
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    @classmethod
    def from_json(cls, obj) -> "InstanceFile":
        if not isinstance(obj, dict):
            raise InvalidInput("an instance is a JSON object")
        if "instance" in obj and isinstance(obj["instance"], dict):
            obj = obj["instance"]
        if obj.get("format") != FORMAT:
            raise InvalidInput(f"unsupported format {obj.get('format')!r}, expected {FORMAT!r}")
        if "polygon" not in obj:
            raise InvalidInput("instance has no polygon")
        fold = obj.get("fold_target")
        if fold is not None and (not isinstance(fold, int) or isinstance(fold, bool)):
            raise InvalidInput(f"fold_target must be an integer, got {fold!r}")
        seed = obj.get("seed")
        return cls(
            polygon=polygon_from_json(obj["polygon"]),
            points=points_from_json(obj["points"]) if "points" in obj else None,
            centers=points_from_json(obj["centers"]) if "centers" in obj else None,
            region=rect_from_json(obj["region"]) if "region" in obj else None,
            fold_target=fold,
            seed=seed,
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, InstanceFile) and self.to_json() == other.to_json()


def dumps(obj) -> str:
    """One top-level key per line, values compact; stable for diffs and byte-identical reruns."""
    if not isinstance(obj, dict):
        return json.dumps(obj, separators=(",", ":")) + "\n"
    rows = [f" {json.dumps(k)}: {json.dumps(v, separators=(',', ':'))}" for k, v in obj.items()]
    return "{\n" + ",\n".join(rows) + "\n}\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"not valid JSON: {exc}") from None


def read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None


def write_atomic(path: str, text: str) -> None:
    """Write through a temporary file in the same directory, then rename."""
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def colors_to_json(rb: dict) -> list[list[str]]:
    return [point_to_json(p) + [c.value] for p, c in sorted(rb.items())]


def colors_from_json(rows) -> dict[Point, str]:
    out = {}
    if not isinstance(rows, list):
        raise InvalidInput("colors must be a list of [x, y, color] rows")
    for row in rows:
        if not isinstance(row, list) or len(row) != 3 or row[2] not in ("red", "blue"):
            raise InvalidInput(f"bad color row {row!r}")
        out[point_from_json(row[:2])] = row[2]
    return out
