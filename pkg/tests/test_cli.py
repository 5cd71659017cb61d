"""Command-line surface: exit codes and output contracts."""

import json

from blobalg import cli


def run(capsys, *argv):
    rc = cli.main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


class TestDims:
    def test_table(self, capsys):
        rc, out, _ = run(capsys, "dims", "--k", "5")
        assert rc == 0
        assert "k=5: 1428" in out
        assert "k=1: 5" in out

    def test_usage_error(self, capsys):
        rc, _, err = run(capsys, "dims", "--k", "0")
        assert rc == 2 and "error" in err


class TestBasisAndMul:
    def test_basis_json(self, capsys):
        rc, out, _ = run(capsys, "--json", "basis", "--k", "1", "--grades", "0,1")
        assert rc == 0
        assert len(json.loads(out)) == 5

    def test_mul(self, capsys):
        rc, out, _ = run(capsys, "mul", "--k", "2", "T0", "T0^-1")
        assert rc == 0
        blob = json.loads(out)
        assert blob["terms"][0]["diagram"]["pairs"] == [["T1", "B1"], ["T2", "B2"]]


class TestVerify:
    def test_theorem3(self, capsys):
        rc, out, _ = run(capsys, "verify", "theorem3", "--k", "4")
        assert rc == 0 and "result: pass" in out

    def test_relations_refusal(self, capsys):
        rc, _, err = run(capsys, "verify", "relations", "--k", "7")
        assert rc == 2

    def test_presentation_seeded(self, capsys):
        rc, out, _ = run(capsys, "--json", "verify", "presentation", "--k", "1",
                         "--trials", "2")
        assert rc == 0
        blob = json.loads(out)
        assert blob["passed"] and blob["seed"] == 0


class TestRegionAndModule:
    def test_region_report(self, capsys):
        rc, out, _ = run(capsys, "--json", "region", "--c", "7/2,9/2,11/2",
                         "--J", "", "--r1", "3/2", "--r2", "11/2")
        assert rc == 0
        blob = json.loads(out)
        assert blob["skew"] and blob["tl_shape"]
        assert len(blob["fillings"]) == 7

    def test_module_report(self, capsys):
        rc, out, _ = run(capsys, "module", "--c", "7/2,9/2", "--J", "",
                         "--r1", "3/2", "--r2", "11/2", "--trials", "2")
        assert rc == 0
        blob = json.loads(out)
        assert blob["presentation"]["passed"]
        assert blob["nullity"]["is_tl_module"]

    def test_decimal_r_values(self, capsys):
        rc, out, _ = run(capsys, "--json", "region", "--c", "1,2",
                         "--J", "", "--r1", "1.5", "--r2", "5.5")
        assert rc == 0


class TestSchurWeyl:
    def test_dims_table(self, capsys):
        rc, out, _ = run(capsys, "schurweyl", "--a", "6", "--b", "3", "--k", "3",
                         "--dims")
        assert rc == 0
        blob = json.loads(out)
        row = [r for r in blob["dims"] if r["l"] == 2][0]
        assert row["dim_formula"] == 7 == row["dim_paths"] == row["dim_fillings"]
        assert blob["dim_sum_ok"]

    def test_dot(self, capsys, tmp_path):
        out_path = tmp_path / "graph.dot"
        rc, _, _ = run(capsys, "schurweyl", "--a", "6", "--b", "3", "--k", "9",
                       "--dot", "--out", str(out_path))
        assert rc == 0
        text = out_path.read_text()
        assert text.startswith("digraph") and '"9:' in text

    def test_hypothesis_violation(self, capsys):
        rc, _, err = run(capsys, "schurweyl", "--a", "4", "--b", "3")
        assert rc == 2 and "a > b + 2" in err
