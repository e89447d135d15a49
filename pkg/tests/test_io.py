import json
from fractions import Fraction as F
from importlib.resources import files

import pytest

from projpoly import io
from projpoly.constructions.cube import cube_stamp_assembly
from projpoly.fixtures import G_CERTIFICATE, G_UNBALANCE_MATRIX, dodecagon, square
from projpoly.geometry import hull, normal_fan, unit_cube
from projpoly.glue import run_diagram
from projpoly.lp import check_certificate
from projpoly.poset import find_isomorphism, polygon_lattice

DATA = files("projpoly") / "data"


def test_poly_round_trip(tmp_path):
    P = hull([(0, 0), (F(5, 2), 0), (1, F(-1, 3)), (0, 7)])
    path = tmp_path / "p.poly"
    io.write_poly(P, path)
    Q = io.read_poly(path)
    assert Q.vertices == P.vertices
    assert io.dump_poly(Q) == io.dump_poly(P)


def test_poly_accepts_comments_and_separators():
    P = io.parse_poly("# square\n1,1\n-1 1 # corner\n-1;-1\n\n1 -1\n")
    assert sorted(P.vertices) == sorted(square().vertices)


@pytest.mark.parametrize("text", ["", "# nothing\n", "1 2\n3\n", "1 x\n", "1/0 1\n"])
def test_poly_format_errors(text):
    with pytest.raises(io.FormatError):
        io.parse_poly(text)


def test_off_is_marked_lossy():
    out = io.dump_off(unit_cube(3))
    lines = out.splitlines()
    assert lines[0] == "OFF" and "LOSSY" in lines[1]
    assert lines[2].split() == ["8", "6", "0"]
    assert all(l.split()[0] == "4" for l in lines[-6:])


def test_off_needs_full_dimension():
    with pytest.raises(io.FormatError):
        io.dump_off(hull([(0, 0, 0), (1, 0, 0), (0, 1, 0)]))


def test_lattice_round_trip(tmp_path):
    L = polygon_lattice(["a", "b", "c", "d"])
    path = tmp_path / "l.json"
    io.write_lattice(L, path)
    M = io.read_lattice(path)
    assert M.labels == L.labels and sorted(M.covers) == sorted(L.covers)


def test_lattice_of_hull_round_trip():
    L = unit_cube(3).lattice
    M = io.parse_lattice(io.dump_lattice(L))
    assert find_isomorphism(L, M) is not None and M.labels == L.labels


@pytest.mark.parametrize("text", ["not json", "{}", "[1, 2]"])
def test_lattice_format_errors(text):
    with pytest.raises(io.FormatError):
        io.parse_lattice(text)


def test_matrix_vector_round_trip():
    M = [[F(1, 2), -3], [0, F(7, 5)]]
    assert io.parse_matrix(io.dump_matrix(M)) == M
    v = [F(-1, 3), 2, 0]
    assert io.parse_vector(io.dump_vector(v)) == v


def test_matrix_format_errors():
    with pytest.raises(io.FormatError):
        io.parse_matrix("1 2\n3\n")
    with pytest.raises(io.FormatError):
        io.parse_vector("# empty\n")


def test_shipped_certificate_files():
    M = io.parse_matrix((DATA / "G_unbalance.mat").read_text())
    y = io.parse_vector((DATA / "G_certificate.vec").read_text())
    assert M == [[F(x) for x in r] for r in G_UNBALANCE_MATRIX]
    assert y == [F(x) for x in G_CERTIFICATE]
    assert check_certificate(M, y)


def test_shipped_g_file():
    G = io.parse_poly((DATA / "G.poly").read_text())
    assert sorted(G.vertices) == sorted(dodecagon().vertices)


def test_fan_dump():
    d = json.loads(io.dump_fan(normal_fan(square())))
    assert d == io.fan_to_dict(normal_fan(square()))
    assert d["ambient"] == 2
    dims = sorted(c["dim"] for c in d["cones"])
    assert dims == [0, 1, 1, 1, 1, 2, 2, 2, 2]
    for c in d["cones"]:
        for r in c["rays"]:
            assert all(isinstance(x, int) for x in r)


def test_diagram_round_trip():
    D = cube_stamp_assembly(2).diagram()
    E = io.parse_diagram(io.dump_diagram(D))
    assert [n for n, _ in E.nodes] == [n for n, _ in D.nodes]
    assert find_isomorphism(run_diagram(D), run_diagram(E)) is not None


@pytest.mark.parametrize("text", ["[", '{"nodes": []}', '{"nodes": [{"name": "x"}], "edges": []}'])
def test_diagram_format_errors(text):
    with pytest.raises(io.FormatError):
        io.parse_diagram(text)
