import subprocess
import sys

import pytest

from assocalg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_dim2_clean(capsys):
    code, out, _ = run(capsys, "verify-catalog", "--dim", "2")
    assert code == 0
    assert out.count("overall PASS") == 4
    assert out.startswith("# assocalg verify-catalog dims=2 seed=0 samples=3")


def test_verify_dim3_has_discrepancy(capsys):
    code, out, _ = run(capsys, "verify-catalog", "--dim", "3")
    assert code == 2
    assert "As_3_4 dim_L DISCREPANCY computed=1 table=0" in out


@pytest.mark.parametrize("argv", [
    ["verify-catalog", "--dim", "9"],
    ["verify-catalog", "As_9_9"],
    ["verify-catalog", "--param", "alpha=1/x", "As_3_2"],
    ["invariants", "As_3_2"],
    ["invariants", "As_3_2:alpha=1"],
    ["table", "--dim", "5"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == "" and "error" in err


def test_param_selects_sample(capsys):
    code, out, _ = run(capsys, "verify-catalog", "As_3_2", "--param", "alpha=-1")
    assert "As_3_2(alpha=-1)" in out and "alpha=0" not in out


def test_records_format(capsys):
    import json
    code, out, _ = run(capsys, "verify-catalog", "As_2_1", "--format", "records")
    recs = [json.loads(line) for line in out.splitlines()]
    assert recs[-1] == {"entry": "As_2_1", "overall": "PASS"}
    assert all(r["status"] == "PASS" for r in recs[:-1])


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "As_3_4")
    assert code == 0
    assert "dim_left_ann 1" in out
    assert "left_annihilator [(1,-1,0)]" in out


def test_compare(capsys):
    assert run(capsys, "compare", "As_2_2", "As_2_3")[1] == "DISTINGUISHED dim_left_ann: 1 vs 0\n"
    assert run(capsys, "compare", "As_2_2", "As_2_2")[1] == "ISOMORPHIC\n1 0\n0 1\n"


def test_dump_and_file_input(capsys, tmp_path):
    code, out, _ = run(capsys, "dump", "As_3_3")
    assert code == 0 and out.startswith("dim 3\nlabel As_3_3\n")
    f = tmp_path / "a.alg"
    f.write_text(out)
    assert run(capsys, "compare", str(f), "As_3_3")[1].startswith("ISOMORPHIC")


def test_check_hom(capsys, tmp_path):
    m = tmp_path / "m.txt"
    m.write_text("2 0\n3 4\n")
    assert run(capsys, "check-hom", "As_2_1", "As_2_1", str(m))[:2] == (0, "ISOMORPHISM\n")
    m.write_text("0 0\n0 0\n")
    assert run(capsys, "check-hom", "As_2_1", "As_2_1", str(m))[:2] == (0, "HOMOMORPHISM\n")
    m.write_text("1 0\n0 2\n")
    code, out, _ = run(capsys, "check-hom", "As_2_1", "As_2_1", str(m))
    assert code == 2 and out.startswith("NOT_HOMOMORPHISM at (e1,e1)")
    m.write_text("1 0 0\n")
    assert run(capsys, "check-hom", "As_2_1", "As_2_1", str(m))[0] == 1


def test_table_and_out(capsys, tmp_path):
    code, out, _ = run(capsys, "table", "--dim", "2", "--format", "csv")
    target = tmp_path / "t.csv"
    assert run(capsys, "table", "--dim", "2", "--format", "csv", "--out", str(target))[1] == ""
    assert target.read_text() == out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "assocalg", "table", "--dim", "2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.startswith("| id |")
