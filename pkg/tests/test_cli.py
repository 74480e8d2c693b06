import json

import pytest

from relcell.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cartan_csv_usl2(capsys):
    code, out, _ = run(capsys, "cartan", "usl2:p=3", "--format", "csv")
    assert code == 0
    assert out == "2,2,0\n2,2,0\n0,0,1\n"


def test_verify_cycs3(capsys):
    code, out, _ = run(capsys, "verify", "zigzag:cycS:3")
    assert code == 0
    assert "FAIL" not in out and "PASS" in out


def test_verify_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "annular:n=1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"axioms", "X0", "simple_dims", "D", "C", "reciprocity_ok", "semisimple"}
    assert doc["C"] == [[2, 2], [2, 2]]
    assert doc["semisimple"] is False


def test_mult_annular(capsys):
    code, out, _ = run(capsys, "mult", "annular:n=1", "1-2|v^|1-2", "1-2|v^|1-2")
    assert code == 0
    assert out.strip() == "1-2|v^|1-2"


def test_mult_zero(capsys):
    code, out, _ = run(capsys, "mult", "annular:n=1", "1-2|^v|1-2", "1-2|^v|1-2")
    assert code == 0
    assert out.strip() == "0"


def test_mult_json_circles(capsys):
    code, out, _ = run(
        capsys, "mult", "annular:n=1", "1~2|^v|1~2", "1~2|^v|1~2", "--format", "json", "--circles"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc[0]["term"] == "1~2|^v|1~2"
    assert doc[0]["circles"]["circles"][0]["orientation"] == "anticlockwise"


def test_usage_error_exit_2(capsys):
    code, _, err = run(capsys, "cartan", "nosuch:thing")
    assert code == 2


def test_mult_rejects_bad_notation(capsys):
    code, _, err = run(capsys, "mult", "annular:n=1", "1-2|vv|1-2", "1-2|v^|1-2")
    assert code == 2


def test_max_dim_guard(capsys):
    code, _, err = run(capsys, "build", "annular:n=3", "--max-dim", "100")
    assert code == 1
    assert "1664" in err


def test_env_max_dim(capsys, monkeypatch):
    monkeypatch.setenv("RELCELL_MAX_DIM", "5")
    code, _, err = run(capsys, "build", "annular:n=1")
    assert code == 1


def test_decomp_and_simples(capsys):
    code, out, _ = run(capsys, "decomp", "zigzag:A:3", "--format", "csv")
    assert code == 0
    assert out == "1,0,0\n1,1,0\n0,1,1\n0,0,1\n"
    code, out, _ = run(capsys, "simples", "usl2:p=3", "--format", "json")
    assert json.loads(out)["dims"] == {"0": 1, "1": 2, "2": 3}


def test_gram_json(capsys):
    code, out, _ = run(capsys, "gram", "usl2:p=3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["2"] == [["1", "0", "0"], ["0", "2", "0"], ["0", "0", "1"]]


def test_core_subcommand(capsys):
    code, out, _ = run(capsys, "core", "usl2:p=3", "--eps", "0", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["cellular"] is True and doc["dimension"] == 3


def test_frobenius_subcommand(capsys):
    code, out, _ = run(capsys, "frobenius", "annular:n=1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["nondegenerate"] is True and doc["rank"] == 8


def test_build_pretty(capsys):
    code, out, _ = run(capsys, "build", "zigzag:A:3")
    assert code == 0
    assert "dimension: 10" in out


def test_deterministic_output(capsys):
    _, out1, _ = run(capsys, "verify", "usl2:p=3", "--format", "json")
    _, out2, _ = run(capsys, "verify", "usl2:p=3", "--format", "json")
    assert out1 == out2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "cartan.csv"
    code, out, _ = run(capsys, "cartan", "usl2:p=3", "--format", "csv", "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text() == "2,2,0\n2,2,0\n0,0,1\n"