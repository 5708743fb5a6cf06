import csv
import io
import json
import subprocess
import sys

import mpmath
import pytest
from mpmath import mp

from fusioncat.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    return json.loads(out)


def test_globaldim_a1_level10(capsys):
    d = run_json(capsys, "globaldim", "A1", "--level", "10")
    with mp.workdps(60):
        want = 24 * (2 + mp.sqrt(3))
        assert abs(mpmath.mpf(d["value"]) - want) < mpmath.mpf(10) ** -45
        assert abs(mpmath.mpf(d["sum"]) - want) < mpmath.mpf(10) ** -45
    assert d["value"].startswith("89.56921938")
    for key in ("group", "level", "altitude", "precision"):
        assert key in d
    assert (d["group"], d["level"], d["altitude"], d["precision"]) == ("A1", 10, 12, 50)


def test_globaldim_trivial(capsys):
    d = run_json(capsys, "globaldim", "G2", "-k", "0")
    assert d["value"] == "1" and d["objects"] == 1


def test_subgroup_capstone(capsys):
    d = run_json(capsys, "subgroup", "e8-k30-adjoint")
    assert d["value"].startswith("5.57902") and d["value"].endswith("e+22")
    assert d["level"] == 30 and d["altitude"] == 60


def test_group_aliases(capsys):
    a = run_json(capsys, "globaldim", "SU(3)", "-k", "2")
    b = run_json(capsys, "globaldim", "A2", "-k", "2")
    assert a["value"] == b["value"] and a["group"] == "A2"
    assert run_json(capsys, "cs3", "Spin(7)", "-k", "1")["group"] == "B3"
    assert run_json(capsys, "cs3", "Sp(6)", "-k", "1")["group"] == "C3"


def test_precision_flag_and_env(capsys, monkeypatch):
    d = run_json(capsys, "globaldim", "A1", "-k", "3", "-p", "35")
    assert d["precision"] == 35
    assert len(d["value"].replace(".", "")) <= 35
    monkeypatch.setenv("FUSIONCAT_PRECISION", "40")
    assert run_json(capsys, "globaldim", "A1", "-k", "3")["precision"] == 40


def test_smatrix_round_trip_unitary(capsys):
    d = run_json(capsys, "smatrix", "A2", "-k", "2", "-p", "40")
    with mp.workdps(40):
        s = mpmath.matrix([[mpmath.mpc(z["re"], z["im"]) for z in row] for row in d["values"]])
        resid = max(abs(x) for x in (s * s.H - mpmath.eye(s.rows)))
        assert resid < mpmath.mpf(10) ** -37
    assert len(d["labels"]) == 6


def test_tmatrix(capsys):
    d = run_json(capsys, "tmatrix", "A1", "-k", "1")
    assert d["central_charge"] == "1"
    assert [r["h"] for r in d["values"]] == ["0", "1/4"]


def test_fusion_matrix(capsys):
    d = run_json(capsys, "fusion", "A1", "1", "-k", "3")
    assert d["values"] == [[0, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0]]


def test_weights_csv(capsys):
    code, out, _ = run(capsys, "weights", "A2", "-k", "1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["index", "weight", "level", "qdim"]
    assert [r[1] for r in rows[1:]] == ["0,0", "0,1", "1,0"]


def test_other_commands(capsys):
    assert run_json(capsys, "superfactorial", "G2", "-k", "1")["classical"] == "40/9"
    lr = run_json(capsys, "levelrank", "3", "4")
    assert lr["lhs"] == lr["rhs"]
    cs = run_json(capsys, "cs3", "A2", "-k", "3")
    assert cs["value"] == cs["kac_wakimoto"]
    rib = run_json(capsys, "ribbon", "A2", "1,0")
    assert [r["value"] for r in rib["values"]] == ["0", "1", "1"]
    cat = run_json(capsys, "catalog")
    assert cat["count"] == len(cat["values"]) > 50
    code, out, _ = run(capsys, "globaldim", "E8", "-k", "2")
    assert code == 0 and "value: 4" in out


def test_usage_errors_exit_2(capsys):
    for argv in (["globaldim", "X9", "-k", "1"], ["globaldim", "A1"], ["fusion", "A2", "a,b", "-k", "1"],
                 ["globaldim", "A1", "-k", "-1"], ["nonsense"], ["globaldim", "A1", "-k", "1", "-p", "10"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    capsys.readouterr()


def test_math_rejections_exit_1(capsys):
    code, _, err = run(capsys, "smatrix", "E8", "-k", "1")
    assert code == 1 and "696729600" in err and "10000000" in err
    code, _, err = run(capsys, "smatrix", "A3", "-k", "1", "--weyl-cap", "10")
    assert code == 1 and "cap" in err
    code, _, err = run(capsys, "fusion", "A2", "3,0", "-k", "2")
    assert code == 1 and "not integrable" in err
    code, _, err = run(capsys, "subgroup", "missing-id")
    assert code == 1


def test_catalog_flag(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"embeddings": [{"id": "x", "inner_family": "A", "inner_rank": 1, "level": 3,
                                               "outer_family": "A", "outer_rank": 2, "tag": "t"}]}))
    code, _, err = run(capsys, "catalog", "--catalog", str(bad))
    assert code == 1 and "central charges differ" in err


def test_check_subset(capsys):
    code, out, _ = run(capsys, "check", "--criteria", "5", "6", "9")
    assert code == 0
    assert out.count("[PASS]") == 3
    d = run_json(capsys, "check", "--criteria", "6")
    assert d["passed"] is True and d["values"][0]["criterion"] == 6


def test_check_is_deterministic(capsys):
    a = run_json(capsys, "check", "--criteria", "7")
    b = run_json(capsys, "check", "--criteria", "7")
    for r in (a, b):
        for v in r["values"]:
            v.pop("seconds")
    assert a == b


def test_check_exit_code_reflects_failure(capsys):
    # the finite-level asymptotic bound is not met by G2 at k = 10^4
    code, out, _ = run(capsys, "check", "--criteria", "11")
    assert code == 1 and "[FAIL]" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "fusioncat", "globaldim", "A1", "-k", "2"], capture_output=True,
                       text=True, check=False)
    assert r.returncode == 0 and "value: 4" in r.stdout
