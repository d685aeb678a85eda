"""Command-line interface: ``coverdecomp VERB [options]``.

Verbs: gen, color, decompose, verify, check-claims, render. Every artifact is
JSON in the ``coverdecomp/1`` format with rational strings for coordinates.
Exit codes: 0 pass, 2 verification violations, 3 input errors, 4 internal
structural violation.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Sequence

from . import __version__
from .boundary import assemble_cyclic
from .coloring import INFINITE_FOLD_NOTE, ColoringResult, multiple_red_blue, red_blue_coloring
from .decomposer import CoverInstance, decompose, generate_covering
from .errors import (CoverDecompError, DecompositionFailure, InsufficientFold, InvalidInput,
                     SizeBound, StructuralViolation)
from .geometry import Closedness, Point, Polygon, Rect, builtin_polygon, grid_params, random_points, rat_str
from .oracle import check_claims, coverage_depth, verify_coloring
from .render import render_svg
from .serialize import (FORMAT, InstanceFile, colors_from_json, colors_to_json, dumps, point_to_json,
                        points_from_json, points_to_json, polygon_from_json, read_json, write_atomic)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_STRUCTURAL = 0, 2, 3, 4
MAX_WITNESSES = 20


class CommandOutcome(Exception):
    """Carries a finished report together with a nonzero exit code."""

    def __init__(self, text: str, code: int):
        super().__init__(code)
        self.text, self.code = text, code


def _load_polygon(source: str) -> Polygon:
    try:
        return builtin_polygon(source)
    except InvalidInput:
        pass
    obj = read_json(source)
    if isinstance(obj, dict):
        obj = obj.get("polygon", obj.get("vertices"))
    return polygon_from_json(obj)


def _parse_region(text: str) -> Rect:
    parts = text.split(",")
    if len(parts) != 4:
        raise InvalidInput(f"region must be x0,y0,x1,y1, got {text!r}")
    from .serialize import rect_from_json
    return rect_from_json(parts)


def _parse_wedge(text: str) -> tuple[int, Point]:
    try:
        idx, rest = text.split(":")
        x, y = rest.split(",")
        return int(idx), Point.of(x, y)
    except ValueError:
        raise InvalidInput(f"wedge must be I:X,Y, got {text!r}") from None


def _closedness(args) -> list[Closedness]:
    if args.closedness is None:
        return [Closedness.CLOSED, Closedness.OPEN]
    return [Closedness(args.closedness)]


def _params(S: Polygon, m: int) -> dict:
    g = grid_params(S, m)
    return {"m": m, "x": rat_str(g.cell_side), "k_prime": g.squares_per_translate, "k": g.fold_constant}


def _instance(path: str) -> InstanceFile:
    return InstanceFile.from_json(read_json(path))


def _distinct(points: Sequence[Point]) -> list[Point]:
    if len(set(points)) != len(points):
        raise InvalidInput("point set contains duplicate points")
    return list(points)


def _violations_json(viol) -> list[dict]:
    return [{"wedge": v.wedge_index, "apex": point_to_json(v.apex), "size": len(v.trace)}
            for v in viol[:MAX_WITNESSES]]


def _coloring_audit(res: ColoringResult) -> dict:
    return {
        "levels": [point_to_json(p) + [lvl] for p, lvl in sorted(res.level_audit.items())],
        "bw": [{"label": label, "cycle": [point_to_json(p) + [c.value] for p, c in cyc]}
               for label, cyc in res.bw_cycles],
        "rich": points_to_json(sorted(res.rich_audit)),
        "step1": [point_to_json(p) + [lvl, c.value] for p, lvl, c in res.step1_audit],
        "notes": list(res.notes),
    }


def cmd_gen(args) -> str:
    S = _load_polygon(args.polygon)
    region = _parse_region(args.region)
    if args.kind == "points":
        pts = random_points(args.size, random.Random(args.seed), args.max_den, region)
        inst = InstanceFile(S, points=sorted(pts), seed=args.seed)
    else:
        k = args.k if args.k is not None else grid_params(S, args.m).fold_constant
        cover = generate_covering(S, region, k, seed=args.seed, extras=args.extras)
        inst = InstanceFile(S, centers=list(cover.centers), region=region, fold_target=k, seed=args.seed)
    return dumps(inst.to_json())


def cmd_color(args) -> str:
    inst = _instance(args.instance)
    pts = _distinct(inst.points if inst.points is not None else inst.centers or [])
    S = inst.polygon
    report = {"format": FORMAT, "kind": "coloring-report",
              "command": {"verb": "color", "mode": args.mode},
              "parameters": _params(S, args.m), "instance": inst.to_json()}
    if args.mode == "single":
        res = red_blue_coloring(pts, S)
        viol = verify_coloring(pts, S, res.rb, args.m)
        report["results"] = {"colors": colors_to_json(res.rb),
                             "verification": {"m": args.m, "violations": len(viol),
                                              "witnesses": _violations_json(viol)}}
        report["audit"] = _coloring_audit(res)
        code = EXIT_VIOLATION if viol else EXIT_OK
    else:
        res = multiple_red_blue(pts, S)
        gaps = [b[1] - a[1] for a, b in zip(res.step1_audit, res.step1_audit[1:])]
        alternating = all(c.value == ("red" if k % 2 == 0 else "blue")
                          for k, (_, _, c) in enumerate(res.step1_audit))
        report["results"] = {"colors": colors_to_json(res.rb)}
        audit = _coloring_audit(res)
        audit["structure"] = {"step1_min_gap": min(gaps) if gaps else None,
                              "step1_alternating": alternating,
                              "levels_reverified": True,
                              "substitution": INFINITE_FOLD_NOTE}
        report["audit"] = audit
        code = EXIT_OK if alternating and all(g >= 3 for g in gaps) else EXIT_STRUCTURAL
    text = dumps(report)
    if code:
        raise CommandOutcome(text, code)
    return text


def _decomposition_json(d) -> dict:
    def cert(rep):
        return None if rep is None else {"min_depth": rep.min_depth, "witness": point_to_json(rep.witness)}

    return {"red_centers": points_to_json(d.red_centers), "blue_centers": points_to_json(d.blue_centers),
            "duplicates": d.duplicates, "input_depth": cert(d.input_depth),
            "red_depth": cert(d.red_depth), "blue_depth": cert(d.blue_depth)}


def _cover_instance(inst: InstanceFile) -> CoverInstance:
    if inst.centers is None or inst.region is None or inst.fold_target is None:
        raise InvalidInput("decomposition needs centers, region and fold_target")
    return CoverInstance(inst.polygon, tuple(inst.centers), inst.region, inst.fold_target)


def cmd_decompose(args) -> str:
    inst = _instance(args.instance)
    cover = _cover_instance(inst)
    d = decompose(cover, m=args.m, jobs=args.jobs)
    report = {"format": FORMAT, "kind": "decomposition-report", "command": {"verb": "decompose"},
              "parameters": _params(inst.polygon, args.m), "instance": inst.to_json(),
              "results": _decomposition_json(d)}
    return dumps(report)


def cmd_verify(args) -> str:
    obj = read_json(args.report)
    if not isinstance(obj, dict) or obj.get("format") != FORMAT:
        raise InvalidInput("not a coverdecomp/1 report")
    inst = InstanceFile.from_json(obj)
    S = inst.polygon
    results = obj.get("results") or {}
    out = {"format": FORMAT, "kind": "verification-report", "command": {"verb": "verify"},
           "parameters": _params(S, args.m), "instance": inst.to_json()}
    if obj.get("kind") == "coloring-report":
        pts = _distinct(inst.points if inst.points is not None else inst.centers or [])
        colors = colors_from_json(results.get("colors"))
        if set(colors) != set(pts):
            raise InvalidInput("coloring is not total on the instance points")
        viol = verify_coloring(pts, S, colors, args.m)
        out["results"] = {"m": args.m, "violations": len(viol), "witnesses": _violations_json(viol)}
        failed = bool(viol)
    elif obj.get("kind") == "decomposition-report":
        cover = _cover_instance(inst)
        red = points_from_json(results.get("red_centers", []))
        blue = points_from_json(results.get("blue_centers", []))
        c = _closedness(args)[0] if args.closedness else Closedness.CLOSED
        partition = sorted(red + blue) == sorted(cover.centers)
        certs = {}
        for name, fam in (("red", red), ("blue", blue)):
            rep = coverage_depth(S, fam, cover.region, c)
            certs[name] = {"min_depth": rep.min_depth, "witness": point_to_json(rep.witness)}
        out["results"] = {"partition": partition, **certs}
        failed = not partition or any(v["min_depth"] < 1 for v in certs.values())
    else:
        raise InvalidInput(f"cannot verify a {obj.get('kind')!r} artifact")
    text = dumps(out)
    if failed:
        raise CommandOutcome(text, EXIT_VIOLATION)
    return text


def cmd_check_claims(args) -> str:
    inst = _instance(args.instance)
    pts = _distinct(inst.points if inst.points is not None else inst.centers or [])
    table = {}
    failed = False
    for c in _closedness(args):
        res = check_claims(pts, inst.polygon, (c,))
        table[c.value] = {name: {"anchor": r.anchor, "passed": r.passed, "checked": r.checked,
                                 "witnesses": [repr(w) for w in r.witnesses]} for name, r in res.items()}
        failed |= not all(r.passed for r in res.values())
    out = {"format": FORMAT, "kind": "claims-report", "command": {"verb": "check-claims"},
           "instance": inst.to_json(), "results": table}
    text = dumps(out)
    if failed:
        raise CommandOutcome(text, EXIT_VIOLATION)
    return text


def cmd_render(args) -> str:
    obj = read_json(args.input)
    inst = InstanceFile.from_json(obj)
    results = obj.get("results") or {} if isinstance(obj, dict) else {}
    S = inst.polygon
    colors = colors_from_json(results["colors"]) if "colors" in results else None
    center_colors = None
    if "red_centers" in results:
        center_colors = {p: "red" for p in points_from_json(results["red_centers"])}
        center_colors.update({p: "blue" for p in points_from_json(results["blue_centers"])})
    pts = inst.points or []
    cycle = []
    if pts:
        c = Closedness(args.closedness) if args.closedness else Closedness.CLOSED
        cycle = [e.point for e in assemble_cyclic(_distinct(pts), S, c, with_rich=False).cyclic]
    wedges = [_parse_wedge(w) for w in args.wedge or []]
    title = f"{obj.get('kind', inst.kind)}: {len(pts) or len(inst.centers or [])} items"
    return render_svg(S, pts, colors, cycle, inst.centers or [], center_colors, inst.region, wedges, title)


def _add_globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    def d(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--seed", type=int, default=d(0), help="random seed (default 0)")
    parser.add_argument("--m", type=int, default=d(9), help="trace size threshold (default 9)")
    parser.add_argument("--closedness", choices=["closed", "open"], default=d(None),
                        help="wedge/translate closedness where a command needs one")
    parser.add_argument("--out", default=d(None), help="output file (default stdout)")
    parser.add_argument("--jobs", type=int, default=d(1), help="worker processes (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coverdecomp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("gen", help="generate a point set or a covering instance")
    p.add_argument("kind", choices=["points", "covering"])
    p.add_argument("--polygon", default="square", help="built-in name or polygon JSON file")
    p.add_argument("--size", type=int, default=25, help="number of points")
    p.add_argument("--max-den", type=int, default=64, help="largest coordinate denominator")
    p.add_argument("--region", default="0,0,1,1", help="x0,y0,x1,y1")
    p.add_argument("--k", type=int, default=None, help="fold target (default 9 * k')")
    p.add_argument("--extras", type=int, default=None, help="number of extra translates")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("color", help="two-color a point set")
    p.add_argument("instance")
    p.add_argument("--mode", choices=["single", "multi"], default="single")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("decompose", help="split a covering into two coverings")
    p.add_argument("instance")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="re-check a coloring or decomposition report")
    p.add_argument("report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check-claims", help="check the boundary structure facts")
    p.add_argument("instance")
    p.set_defaults(func=cmd_check_claims)

    p = sub.add_parser("render", help="draw an instance or report as SVG")
    p.add_argument("input")
    p.add_argument("--wedge", action="append", help="I:X,Y wedge placement to draw (repeatable)")
    p.set_defaults(func=cmd_render)

    for action in sub.choices.values():
        _add_globals(action, suppress=True)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.func(args)
        code = EXIT_OK
    except CommandOutcome as outcome:
        text, code = outcome.text, outcome.code
    except InsufficientFold as exc:
        where = f" (witness {exc.witness}, depth {exc.depth})" if exc.witness is not None else ""
        print(f"error: {exc}{where}", file=sys.stderr)
        return EXIT_INPUT
    except (InvalidInput, SizeBound, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (StructuralViolation, DecompositionFailure) as exc:
        print(f"internal structural violation: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL
    except CoverDecompError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        _emit(text, args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    return code


if __name__ == "__main__":
    sys.exit(main())
