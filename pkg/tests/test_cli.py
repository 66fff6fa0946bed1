import json
import subprocess
import sys
from importlib import resources

import pytest

from varsphere import cli
from varsphere.errors import InvariantViolation
from varsphere.graphs import parse_graph
from varsphere.symmetry import parse_gain_graph

FIX = "fixtures/"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def test_analyze(capsys):
    r = run_json(capsys, "analyze", "--dim", "2", FIX + "fig1a.json")
    assert r["verdict"]["isostatic"]
    assert r["verdict"]["rank"] == 18
    r = run_json(capsys, "analyze", "--dim", "2", FIX + "fig1b.json")
    v = r["verdict"]
    assert not v["isostatic"] and v["nontrivial_motions"] == 1
    assert all("/" in x for x in v["witness"])


def test_analyze_human(capsys):
    code, out, _ = run(capsys, "analyze", "--dim", "1", FIX + "fig2.json")
    assert code == 0
    assert "infinitesimally rigid: yes" in out
    assert "independent: no" in out


def test_dump_matrix(capsys):
    r = run_json(capsys, "analyze", "--dim", "1", FIX + "k4.json", "--dump-matrix")
    M = r["matrix"]
    assert len(M) == 6 + 4 and len(M[0]) == 8
    assert all(isinstance(x, str) and "/" in x for row in M for x in row)


def test_sparsity(capsys):
    r = run_json(capsys, "sparsity", "--dim", "2", FIX + "fig1b.json")
    assert r["result"]["family"] == "f2" and r["result"]["status"] == "tight"
    r = run_json(capsys, "sparsity", "--dim", "1", FIX + "fig2.json")
    assert r["result"]["status"] == "dependent"
    assert r["result"]["edge_count"] - r["result"]["global_count"] == 2


def test_rank(capsys):
    r = run_json(capsys, "rank", "--dim", "2", FIX + "fig1a.json")
    assert r["matroid_rank"] == r["cover_rank"]["value"] == 11
    assert r["geometric_rank"] - 7 == 11


def test_reduce(capsys):
    code, _, err = run(capsys, "reduce", "--dim", "1", "--kind", "zero", "--vertex", "1", FIX + "k4.json")
    assert code == 1 and "degree" in err
    r = run_json(capsys, "reduce", "--dim", "2", "--kind", "zero", "--vertex", "7", FIX + "fig1a.json")
    assert r["graph"]["vertices"] and len(r["graph"]["edges"]) == 9


def test_extend_verify(capsys):
    r = run_json(capsys, "extend", "--dim", "2", "--kind", "zero", "--attach", "1", "2", "3",
                 "--colour", "fresh", "--verify", FIX + "fig1a.json")
    assert r["isostatic_before"] and r["isostatic_after"]
    assert len(r["graph"]["vertices"]) == 8


def test_crosscheck_circle(capsys):
    r = run_json(capsys, "crosscheck", "--dim", "1", FIX + "fig2.json")
    assert r["agreement"] and r["theorem_applies"]
    assert r["over_braced_by"] == 2
    assert r["geometric"]["infinitesimally_rigid"]


def test_crosscheck_three_colour_counterexample(capsys):
    code, out, _ = run(capsys, "crosscheck", "--dim", "2", FIX + "fig1b.json", "--format", "json")
    r = json.loads(out)
    assert code == 0
    assert not r["theorem_applies"] and not r["agreement"]
    assert r["combinatorial_rigid"] and not r["geometric"]["isostatic"]


def test_crosscheck_planar_agreement(capsys):
    for name in ("fig1a.json", "k4_one_colour.json"):
        r = run_json(capsys, "crosscheck", "--dim", "2", FIX + name)
        assert r["theorem_applies"] and r["agreement"]
        assert r["rank_formula_agrees"]


def test_quotient_and_lift(capsys):
    r = run_json(capsys, "quotient", FIX + "fig2.json", FIX + "fig2_z2_action.json")
    gg = r["gain_graph"]
    assert (len(gg["vertices"]), len(gg["edges"])) == (6, 8)
    r = run_json(capsys, "lift", FIX + "fig2_z4_quotient.json")
    assert (len(r["graph"]["vertices"]), len(r["graph"]["edges"])) == (12, 16)


def test_sym_analyze(capsys):
    r = run_json(capsys, "sym-analyze", FIX + "fig2_z2_quotient.json")
    assert r["verdict"]["isostatic"]
    r = run_json(capsys, "sym-analyze", FIX + "fig2_z4_quotient.json")
    assert r["verdict"]["nontrivial_motions"] >= 1


def test_sym_counts(capsys):
    r = run_json(capsys, "sym-counts", FIX + "two_triangles_gain.json")
    assert r["result"]["weak_ok"] and not r["result"]["ok"]
    r = run_json(capsys, "sym-counts", FIX + "fig2_z2_quotient.json")
    assert r["result"]["ok"]


def test_unknown_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["analyze", "--dim", "2", "--bogus", FIX + "k4.json"])
    assert e.value.code == 1
    assert "usage" in capsys.readouterr().err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", "--dim", "2", str(tmp_path / "none.json"))
    assert code == 1 and "no such file" in err


def test_malformed_graph(capsys, tmp_path):
    p = tmp_path / "loop.json"
    p.write_text(json.dumps({"vertices": [{"id": 1}, {"id": 2}], "edges": [[1, 1]]}))
    code, _, err = run(capsys, "analyze", "--dim", "1", str(p))
    assert code == 1 and "loop" in err


def test_capacity_exit(capsys):
    # the cover value is auxiliary in `rank`: over the cap it is reported, not fatal
    r = run_json(capsys, "rank", "--dim", "2", FIX + "fig1a.json", "--cover-cap", "4")
    assert r["cover_rank"] is None and "cap" in r["cover_note"]
    code, _, err = run(capsys, "rank", "--dim", "2", FIX + "fig1a.json", "--edge-cap", "8")
    assert code == 2 and "cap" in err
    code, _, _ = run(capsys, "sparsity", "--dim", "2", FIX + "fig2.json", "--edge-cap", "10")
    assert code == 2


def test_invariant_exit(capsys, monkeypatch):
    def boom(*a, **k):
        raise InvariantViolation("forced")
    monkeypatch.setattr(cli.rigidity, "analyze_frameworks", boom)
    code, _, err = run(capsys, "analyze", "--dim", "2", FIX + "k4.json")
    assert code == 3 and "forced" in err


def test_group_dimension_selects_case(capsys, tmp_path):
    p = tmp_path / "z2_in_space.json"
    data = json.loads((resources.files("varsphere") / "fixtures" / "fig2_z2_quotient.json").read_text())
    data["group"]["dim"] = 3
    p.write_text(json.dumps(data))
    r = run_json(capsys, "sym-counts", str(p))
    assert r["dim"] == 2 and r["result"]["case"] == "axial"


def test_json_determinism(capsys):
    argv = ["analyze", "--dim", "2", FIX + "fig1b.json", "--seed", "11", "--format", "json"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    _, c, _ = run(capsys, *argv[:-4], "--seed", "12", "--format", "json")
    assert json.loads(c)["verdict"]["rank"] == json.loads(a)["verdict"]["rank"]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "varsphere", "sparsity", "--dim", "1",
                          FIX + "fig2.json", "--format", "json"], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["result"]["status"] == "dependent"


def test_every_fixture_parses():
    folder = resources.files("varsphere") / "fixtures"
    names = sorted(p.name for p in folder.iterdir() if p.name.endswith(".json"))
    assert len(names) == 12
    for name in names:
        data = json.loads((folder / name).read_text())
        assert data.get("comment")
        if "generators" in data:
            continue
        if "group" in data:
            parse_gain_graph((folder / name).read_text())
        else:
            parse_graph((folder / name).read_text())
