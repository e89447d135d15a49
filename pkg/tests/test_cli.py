import json
import subprocess
import sys
from fractions import Fraction as F
from importlib.resources import files

import pytest

from projpoly import io
from projpoly.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_NO, EXIT_YES, jsonable, main, parse_point
from projpoly.fixtures import square
from projpoly.poset import polygon_lattice
from projpoly.projective import OrientedPoint, visibility_map

DATA = files("projpoly") / "data"


def data(name: str) -> str:
    return str(DATA / name)


def run(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_parse_point_forms():
    assert parse_point("2,1/2") == OrientedPoint.finite((2, F(1, 2)))
    assert parse_point("inf:1,0") == OrientedPoint.at_infinity((1, 0))
    assert parse_point("neg:2,1") == OrientedPoint.finite((2, 1)).neg()


@pytest.mark.parametrize("text", ["", "x,1", "1/0,1", "weird:1,2"])
def test_parse_point_errors(text):
    with pytest.raises(ValueError):
        parse_point(text)


def test_vis_matches_library(capsys):
    code, out = run(capsys, "vis", "--point", "2,1/2", "--polytope", data("square.poly"))
    assert code == EXIT_YES
    P = io.read_poly(data("square.poly"))
    vis = visibility_map(OrientedPoint.finite((2, F(1, 2))), P)
    got = {tuple(r["face"]): r["class"] for r in out["summary"]["faces"]}
    assert got == {tuple(P.lattice.labels[f]): s for f, s in vis.items()}


def test_vis_dimension_mismatch(capsys):
    code, out = run(capsys, "vis", "--point", "1,2,3", "--polytope", data("square.poly"))
    assert code == EXIT_INPUT and out["error"] == "input"


def test_missing_file_is_input_error(capsys, tmp_path):
    code, _ = run(capsys, "hull", str(tmp_path / "nope.poly"))
    assert code == EXIT_INPUT


def test_bad_file_is_input_error(capsys, tmp_path):
    p = tmp_path / "bad.poly"
    p.write_text("1 2\n3\n")
    code, out = run(capsys, "hull", str(p))
    assert code == EXIT_INPUT and "FormatError" in out["detail"]


def test_hull_writes_outputs(capsys, tmp_path):
    o, l, off = tmp_path / "c.poly", tmp_path / "c.json", tmp_path / "c.off"
    code, out = run(capsys, "hull", data("cube.poly"), "-o", str(o), "--lattice", str(l), "--off", str(off))
    assert code == EXIT_YES and out["summary"]["f_vector"] == [8, 12, 6]
    assert io.read_poly(o).nverts == 8
    assert len(io.read_lattice(l)) == 28
    assert "LOSSY" in off.read_text()


def test_bal_quadrilaterals(capsys):
    code, out = run(capsys, "bal", data("quad_p1.poly"), data("quad_p2.poly"), "--identify", "auto")
    assert code == EXIT_YES and out["summary"]["balanced"]


def test_bal_g_fails(capsys):
    code, out = run(capsys, "bal", data("G.poly"), data("G.poly"))
    assert code == EXIT_NO and out["witness"]


def test_perfect(capsys):
    assert run(capsys, "perfect", data("square.poly"))[0] == EXIT_YES
    assert run(capsys, "perfect", data("G.poly"))[0] == EXIT_NO


def test_certify(capsys, tmp_path):
    code, out = run(capsys, "certify", data("G_unbalance.mat"), data("G_certificate.vec"))
    assert code == EXIT_YES and out["summary"]["valid"]
    bad = tmp_path / "bad.vec"
    bad.write_text(" ".join(["0"] * out["summary"]["rows"]) + "\n")
    code, out = run(capsys, "certify", data("G_unbalance.mat"), str(bad))
    assert code == EXIT_NO


def test_unbalance_reproduces_shipped_matrix(capsys, tmp_path):
    o = tmp_path / "m.mat"
    code, out = run(capsys, "unbalance", data("G.poly"), "-o", str(o))
    assert code == EXIT_YES and out["summary"]["certificate_valid"]
    assert sorted(map(tuple, io.read_matrix(o))) == sorted(map(tuple, io.read_matrix(data("G_unbalance.mat"))))


def test_whittle_lattice_json(capsys, tmp_path):
    a = tmp_path / "sq.json"
    b = tmp_path / "tri.json"
    io.write_lattice(polygon_lattice(4), a)
    io.write_lattice(polygon_lattice(3), b)
    sq, tri = polygon_lattice(4), polygon_lattice(3)
    code, out = run(capsys, "whittle", str(a), str(sq.atoms()[0]), str(b), str(tri.atoms()[0]))
    assert code == EXIT_YES
    assert out["summary"]["f_vector"] == [5, 5] and out["summary"]["check_lattice"]


def test_pent_find(capsys):
    code, out = run(capsys, "pent-find", "1,1,1<=3/2")
    assert code == EXIT_YES and len(out["summary"]["pairs"]) == 3
    code, out = run(capsys, "pent-find", "1,1<=3")
    assert code == EXIT_NO and out["summary"]["violations"] == ["contains_cube"]


def test_pent_find_bad_halfspace(capsys):
    assert run(capsys, "pent-find", "1,1")[0] == EXIT_INPUT


def test_anchor_budget(capsys):
    code, out = run(capsys, "--budget", "10", "anchor", "--alpha", "1/2")
    assert code == EXIT_BUDGET and out["error"] == "budget"


def test_anchor_from_spec(capsys):
    code, out = run(capsys, "anchor", data("half.anchor"))
    assert code == EXIT_YES
    assert out["summary"]["f_pentagon"] == [5, 5]


def test_glue_template_round_trip(capsys, tmp_path):
    d = tmp_path / "cs.json"
    code, out = run(capsys, "glue", "--template", "cube-stamp", "--d", "2", "--emit", str(d))
    assert code == EXIT_YES
    code, a = run(capsys, "glue", str(d))
    code2, b = run(capsys, "cube-stamp", "--d", "2")
    assert code == code2 == EXIT_YES
    assert a["summary"]["elements"] == b["summary"]["elements"]


def test_frame(capsys):
    code, out = run(capsys, "frame", data("square.poly"))
    assert code == EXIT_YES and out["summary"]["frame"]


def test_stamp_manifest_exit(capsys):
    code, out = run(capsys, "--budget", "1000", "stamp", data("triangle.poly"))
    assert code == EXIT_BUDGET and out["summary"]["manifest"]
    assert out["summary"]["summary"]["anchors_deferred"] == out["summary"]["summary"]["anchors"]


def test_verify_paper_subset(capsys):
    code, out = run(capsys, "verify-paper", "--only", "1,3")
    assert code == EXIT_YES
    assert [r["criterion"] for r in out["summary"]["results"]] == [1, 3]


def test_verify_paper_mutation_control(capsys):
    code, out = run(capsys, "verify-paper", "--only", "2,4", "--mutate")
    assert code == EXIT_NO
    res = {r["criterion"]: r["pass"] for r in out["summary"]["results"]}
    assert res == {2: False, 4: True}


def test_output_is_reproducible():
    cmd = [sys.executable, "-m", "projpoly.cli", "bal", data("G.poly"), data("G.poly")]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == b.returncode == EXIT_NO
    assert a.stdout == b.stdout and a.stdout


def test_console_script_exit_code():
    r = subprocess.run(["projpoly", "perfect", data("square.poly")], capture_output=True, text=True)
    assert r.returncode == EXIT_YES
    assert json.loads(r.stdout)["verdict"] is True


def test_jsonable():
    assert jsonable([F(1, 2), F(3), (1, "a")]) == ["1/2", 3, [1, "a"]]


@pytest.mark.parametrize("f0,f1,want", [
    (2, 7, EXIT_YES),  # vertex (-1,1) and the edge x = 1, on a line through p = (3,0)
    (1, 5, EXIT_INPUT),  # vertex (1,1) lies on the edge y = 1
    (2, 3, EXIT_NO),  # two far-side vertices: the result is not a lattice
])
def test_lamppost_verdicts(capsys, f0, f1, want):
    code, out = run(capsys, "lamppost", "--polytope", data("square.poly"), "--point", "3,0",
                    "--f0", str(f0), "--f1", str(f1))
    assert code == want
    if want != EXIT_INPUT:
        assert out["summary"]["check_lattice"] == (want == EXIT_YES)
