import json
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coverdecomp import cli
from coverdecomp.errors import StructuralViolation
from coverdecomp.geometry import builtin_polygon
from coverdecomp.serialize import FORMAT, InstanceFile, dumps, loads

from conftest import P, point_sets


def run(argv, capsys):
    code = cli.main([str(a) for a in argv])
    return code, capsys.readouterr()


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(dumps(obj) if isinstance(obj, dict) else obj)
    return path


@given(point_sets(max_size=20))
def test_instance_round_trip(pts):
    inst = InstanceFile(builtin_polygon("hexagon"), points=list(pts), seed=3)
    assert InstanceFile.from_json(loads(dumps(inst.to_json()))) == inst


def test_gen_is_deterministic(tmp_path, capsys):
    a = run(["gen", "points", "--size", 40, "--seed", 5, "--polygon", "octagon"], capsys)
    b = run(["gen", "points", "--size", 40, "--seed", 5, "--polygon", "octagon"], capsys)
    assert a[0] == b[0] == 0 and a[1].out == b[1].out
    assert len(json.loads(a[1].out)["points"]) == 40
    c = run(["gen", "covering", "--seed", 2, "--extras", 3], capsys)
    d = run(["gen", "covering", "--seed", 2, "--extras", 3], capsys)
    assert c[1].out == d[1].out and json.loads(c[1].out)["fold_target"] == 81


def test_color_singleton(tmp_path, capsys):
    path = write(tmp_path, "one.json", InstanceFile(builtin_polygon("square"), points=[P(0, 0)]).to_json())
    code, out = run(["color", path], capsys)
    report = json.loads(out.out)
    assert code == 0
    assert report["results"]["verification"]["violations"] == 0
    assert report["audit"]["levels"] == [["0", "0", "first"]]


def test_color_empty_and_multi(tmp_path, capsys):
    path = write(tmp_path, "none.json", InstanceFile(builtin_polygon("square"), points=[]).to_json())
    code, out = run(["color", path], capsys)
    assert code == 0 and json.loads(out.out)["results"]["colors"] == []
    run(["gen", "points", "--size", 60, "--out", tmp_path / "p.json"], capsys)
    code, out = run(["color", tmp_path / "p.json", "--mode", "multi"], capsys)
    audit = json.loads(out.out)["audit"]["structure"]
    assert code == 0 and audit["step1_alternating"] and audit["substitution"]


def test_verify_catches_tampering(tmp_path, capsys):
    run(["gen", "points", "--size", 80, "--max-den", 8, "--out", tmp_path / "p.json"], capsys)
    assert run(["color", tmp_path / "p.json", "--out", tmp_path / "c.json"], capsys)[0] == 0
    assert run(["verify", tmp_path / "c.json"], capsys)[0] == 0
    report = json.loads((tmp_path / "c.json").read_text())
    for row in report["results"]["colors"]:
        row[2] = "red"
    write(tmp_path, "bad.json", report)
    code, out = run(["verify", tmp_path / "bad.json"], capsys)
    assert code == 2 and json.loads(out.out)["results"]["violations"] > 0


def test_decompose_and_verify(tmp_path, capsys):
    run(["gen", "covering", "--seed", 1, "--out", tmp_path / "cov.json"], capsys)
    code, _ = run(["decompose", tmp_path / "cov.json", "--out", tmp_path / "d.json"], capsys)
    assert code == 0
    res = json.loads((tmp_path / "d.json").read_text())["results"]
    assert res["red_depth"]["min_depth"] >= 1 and res["blue_depth"]["min_depth"] >= 1
    code, out = run(["verify", tmp_path / "d.json"], capsys)
    assert code == 0 and json.loads(out.out)["results"]["partition"]
    report = json.loads((tmp_path / "d.json").read_text())
    report["results"]["blue_centers"] = []
    write(tmp_path, "bad.json", report)
    assert run(["verify", tmp_path / "bad.json"], capsys)[0] == 2


def test_input_errors_exit_3(tmp_path, capsys):
    assert run(["color", tmp_path / "missing.json"], capsys)[0] == 3
    assert run(["color", write(tmp_path, "junk.json", "{not json")], capsys)[0] == 3
    bad = {"format": "other/9", "polygon": "square", "points": []}
    assert run(["color", write(tmp_path, "fmt.json", bad)], capsys)[0] == 3
    tri = {"format": FORMAT, "polygon": [["0", "0"], ["0", "1"], ["1", "0"]], "points": []}
    assert run(["color", write(tmp_path, "tri.json", tri)], capsys)[0] == 3
    run(["gen", "covering", "--k", 40, "--out", tmp_path / "shallow.json"], capsys)
    obj = json.loads((tmp_path / "shallow.json").read_text())
    obj["fold_target"] = 81
    code, out = run(["decompose", write(tmp_path, "lie.json", obj)], capsys)
    assert code == 3 and "witness" in out.err


def test_structural_violation_exit_4(tmp_path, capsys, monkeypatch):
    def boom(*a, **k):
        raise StructuralViolation("forced", ())
    monkeypatch.setattr(cli, "decompose", boom)
    run(["gen", "covering", "--out", tmp_path / "cov.json"], capsys)
    assert run(["decompose", tmp_path / "cov.json"], capsys)[0] == 4


def test_check_claims_cli(tmp_path, capsys):
    run(["gen", "points", "--size", 50, "--polygon", "hexagon", "--out", tmp_path / "p.json"], capsys)
    code, out = run(["check-claims", tmp_path / "p.json", "--closedness", "closed"], capsys)
    table = json.loads(out.out)["results"]["closed"]
    assert code == 0 and all(v["passed"] for v in table.values())


def test_render_parses(tmp_path, capsys):
    run(["gen", "points", "--size", 30, "--out", tmp_path / "p.json"], capsys)
    run(["color", tmp_path / "p.json", "--out", tmp_path / "c.json"], capsys)
    code, out = run(["render", tmp_path / "c.json", "--wedge", "1:0,0"], capsys)
    assert code == 0
    root = ET.fromstring(out.out)
    assert root.tag.endswith("svg")
    assert len([e for e in root.iter() if e.tag.endswith("circle")]) == 30
    run(["gen", "covering", "--out", tmp_path / "cov.json"], capsys)
    run(["decompose", tmp_path / "cov.json", "--out", tmp_path / "d.json"], capsys)
    assert ET.fromstring(run(["render", tmp_path / "d.json"], capsys)[1].out) is not None
