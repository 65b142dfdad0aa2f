import json
import subprocess
import sys

import pytest

from floerkit.cli import main


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "floerkit", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_mumford_json(capsys):
    assert main(["mumford", "--g", "2", "--n", "3"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["polynomial"] == "α³ − 2αβ − γ"
    assert rec["leading_coeff"] == "1"
    assert rec["degree"] == 6
    assert "paper_ref" in rec


def test_mumford_text(capsys):
    assert main(["mumford", "--g", "1", "--n", "3", "--format", "text"]) == 0
    assert capsys.readouterr().out.strip() == "α²"


def test_precondition_exit(capsys):
    assert main(["spectrum", "--space", "V", "--g", "0", "--n", "1"]) == 1
    err = capsys.readouterr().err
    assert "(0,1)" in err and len(err.strip().splitlines()) == 1
    assert main(["mumford", "--g", "0", "--n", "1"]) == 1


def test_usage_exits(capsys):
    assert main(["bogus"]) == 64
    assert main([]) == 64
    assert main(["mumford", "--g", "x"]) == 64
    assert main(["mumford", "--g", "1"]) == 64


def test_nonconvergence_exit(capsys):
    assert main(["grr-check", "--g", "0", "--m", "1", "--T", "6", "--tolerance", "1e-12"]) == 2


def test_tsv_has_header(capsys):
    assert main(["spectrum", "--space", "U", "--g", "1", "--n", "3", "--format", "tsv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].split("\t")[:4] == ["space", "g", "n", "value"]
    assert len(lines) == 5


def test_quotient_from_file(tmp_path, capsys):
    f = tmp_path / "ideal.txt"
    f.write_text("alpha^2\nbeta\ngamma\ndelta1\n")
    assert main(["quotient", "--ideal", str(f)]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["dimension"] == 2
    assert rec["spectrum"] == [{"alg_mult": 2, "exact": True, "geo_mult": 1, "value": "0"}]
    assert main(["quotient", "--ideal", str(tmp_path / "missing.txt")]) == 1


def test_lefschetz_element(capsys):
    assert main(["lefschetz", "--g", "2", "--element", "e1^e3"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["weighted_total"] == 16 and rec["reconstructs"] is True


def test_other_subcommands(capsys):
    assert main(["ahi", "--n", "4"]) == 0
    assert json.loads(capsys.readouterr().out)["total"] == 16
    assert main(["thurston", "--surface", "0,5", "--surface", "1,1"]) == 0
    assert json.loads(capsys.readouterr().out)["bound"] == 3
    assert main(["xi", "--k", "3", "--n", "3", "--oracle"]) == 0
    assert json.loads(capsys.readouterr().out)["oracle"]["passed"] is True
    assert main(["repvariety", "--g", "0", "--n", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["quotient_dim"] == 0


@pytest.mark.parametrize("args", [
    ("mumford", "--g", "1", "--n", "5"),
    ("repvariety", "--g", "1", "--n", "3", "--seed", "4"),
    ("quotient", "--g", "1", "--n", "5", "--format", "tsv"),
])
def test_byte_identical(args):
    first = run(*args)
    assert first[0] == 0
    assert run(*args) == first
