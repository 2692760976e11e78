"""Command line driver: exit codes, canonical output, fixture round trips."""

import json
from pathlib import Path

import pytest

from sslift.cat import cyclic_group_category
from sslift.cli import main
from sslift.corpus import write_fixtures
from sslift.formats import save_path
from sslift.sset import SimplexRef, constant_map, standard_simplex

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def fx(name):
    return FIXTURES / name


def test_certify_exit_codes(capsys, tmp_path):
    code, out = run(capsys, "certify", fx("double_cover.ssx"))
    assert code == 0
    assert out.count("certified") == 3

    code, out = run(capsys, "certify", fx("collapse_tower.ssx"))
    assert code == 1
    assert "cartesian    refuted" in out
    assert "no good lift of edge" in out

    # truncated source clips the requested range: inconclusive
    z2 = cyclic_group_category(2)
    from sslift.cat import nerve

    x = nerve(z2).sset
    save_path(
        tmp_path / "t.ssx",
        constant_map(x, standard_simplex(0), SimplexRef(0, (), "0")),
    )
    code, out = run(capsys, "certify", tmp_path / "t.ssx", "--cap", "9")
    assert code == 2
    assert "inconclusive" in out and "truncated" in out


def test_fibers_over_a_simplex(capsys):
    code, out = run(capsys, "--json", "fibers", fx("double_cover.ssx"), "--simplex", "a<x")
    assert code == 0
    doc = json.loads(out)
    assert doc["cells"] == [4, 2]
    assert doc["homology"][0] == {"betti": 2, "degree": 0, "torsion": []}


def test_fibers_whole_map(capsys):
    code, out = run(capsys, "fibers", fx("cylinder_proj.ssx"))
    assert code == 0
    assert "certified" in out
    code, out = run(capsys, "fibers", fx("boundary_collapse.ssx"))
    assert code == 1
    assert "refuted at" in out and "last vertex leg" in out


def test_transport_cli(capsys):
    code, out = run(capsys, "--json", "transport", fx("double_cover.ssx"), "--edge", "a<x")
    assert code == 0
    doc = json.loads(out)
    assert doc["matrices"][0] == [[1, 0], [0, 1]]
    assert doc["iso"] is True
    code, out = run(capsys, "transport", fx("boundary_collapse.ssx"), "--edge", "0.1")
    assert code == 1
    assert "leg invertible: False" in out


def test_theorem_b_cli(capsys):
    code, out = run(capsys, "theorem-b", fx("cover_functor.cat"))
    assert code == 0
    assert "status: verified" in out
    code, out = run(capsys, "theorem-b", fx("point_a.cat"))
    assert code == 1
    assert "hypothesis-failed" in out and "failing edge" in out


def test_ltg_check_cli(capsys):
    code, out = run(
        capsys, "ltg-check", "--cospan", fx("interval_vertex.ssx"), fx("cylinder_proj.ssx")
    )
    assert code == 0
    assert "status: certified" in out
    # cospan whose legs do not share a target
    code, _ = run(
        capsys, "ltg-check", "--cospan", fx("edge_into_circle.ssx"), fx("cylinder_proj.ssx")
    )
    assert code == 3


def test_nerve_feeds_homology(capsys, tmp_path):
    save_path(tmp_path / "z2.cat", cyclic_group_category(2))
    code, out = run(capsys, "--json", "nerve", tmp_path / "z2.cat")
    assert code == 0
    doc = json.loads(out)
    assert doc["truncated_at"] == 4
    (tmp_path / "z2_nerve.ssx").write_text(out)

    code, out = run(capsys, "homology", tmp_path / "z2_nerve.ssx")
    assert code == 2
    assert "H_1 = Z/2" in out and "truncated at degree 4" in out
    code, out = run(capsys, "--json", "homology", tmp_path / "z2_nerve.ssx")
    assert code == 2
    assert "euler_characteristic" not in json.loads(out)

    code, out = run(capsys, "--json", "homology", fx("circle.ssx"))
    assert code == 0
    assert json.loads(out)["euler_characteristic"] == 0


def test_json_output_is_byte_stable(capsys):
    jobs = (
        ("--json", "certify", fx("double_cover.ssx")),
        ("--json", "theorem-b", fx("cover_functor.cat")),
        ("--json", "ltg-check", "--cospan", fx("interval_vertex.ssx"), fx("cylinder_proj.ssx")),
    )
    for argv in jobs:
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first == second and first[0] == 0


def test_committed_fixtures_regenerate_byte_identically(tmp_path):
    names = write_fixtures(str(tmp_path))
    committed = sorted(p.name for p in FIXTURES.iterdir())
    assert sorted(names) == committed
    for name in names:
        assert (tmp_path / name).read_bytes() == fx(name).read_bytes(), name


def test_input_problems_exit_3(capsys, tmp_path):
    assert run(capsys, "certify", tmp_path / "missing.ssx")[0] == 3
    assert run(capsys, "certify", fx("pseudo_circle.cat"))[0] == 3
    assert run(capsys, "transport", fx("double_cover.ssx"), "--edge", "zzz")[0] == 3
    bad = tmp_path / "bad.ssx"
    bad.write_text("{not json")
    assert run(capsys, "homology", bad)[0] == 3


def test_misplaced_global_flag_is_a_usage_error():
    with pytest.raises(SystemExit):
        main(["nerve", "whatever.cat", "--json"])
