from __future__ import annotations

import json
import subprocess
import sys

import pytest

from bpilab.cli import main, render_report, run_command
from bpilab.corpus import builtin, load_report, save_corpus
from bpilab.primes import PrimeSet
from bpilab.theorems import CorpusReport, Side, VerificationReport


def test_bpi_s3(capsys):
    assert main(["bpi", "--group", "builtin:S3", "--pi", "3"]) == 0
    out = capsys.readouterr().out
    assert "{1, 2}" in out


def test_bpi_json():
    out, status = run_command(["bpi", "--group", "S3", "--pi", "3", "--format", "json"])
    doc = json.loads(out)
    assert status == 0
    assert sorted(x["degree"] for x in doc["b_pi"]) == [1, 2]


def test_example_sl23_sets():
    out, status = run_command(["example", "--name", "paper-3.2"])
    assert status == 0
    assert "cd = {1, 2, 3, 8}" in out
    assert "Bcd_3 = {1, 8}" in out and "Bcd_2 = {1, 2, 3}" in out


def test_example_arith():
    doc = json.loads(run_command(["example", "--name", "paper-3.1-arith", "--format", "json"])[0])
    assert doc["targets"] == {t: {"bcd_2_product": False, "bcd_3_product": False} for t in ("24", "48")}
    assert doc["induced"]["degree"] == 48 and doc["48_in_cd"]


def test_verify_ito_michler():
    out, status = run_command(["verify", "--check", "ito-michler", "--group", "builtin:S4", "--pi", "2", "--p", "3"])
    assert status == 0
    line = out.splitlines()[1]
    assert line.startswith("✓") and "false" in line and "pass" in line


def test_verify_all_json_round_trips():
    out, status = run_command(["verify", "--check", "all", "--group", "F21", "--pi", "7", "--format", "json"])
    assert status == 0
    rep = load_report(out)
    assert rep.ok and len(rep.results) >= 18
    assert render_report(rep, "json") == out


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--check", "nope", "--group", "S3", "--pi", "2"],
        ["bpi", "--group", "builtin:A5", "--pi", "2"],
        ["bpi", "--group", "S3"],
        ["bpi", "--group", "S3", "--pi", "4"],
        ["bpi", "--group", "no/such/file.json", "--pi", "2"],
        ["frobnicate"],
        ["example", "--name", "paper-9.9"],
        [],
    ],
)
def test_input_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_corpus_file_and_determinism(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(save_corpus([builtin("S3"), builtin("C6"), builtin("A5")]))
    argv = ["corpus-run", "--corpus", str(path), "--quiet"]
    a, sa = run_command(argv)
    b, sb = run_command(argv)
    assert a == b and sa == sb == 0
    assert "rejected: A5" in a
    assert "0 failed" in a


def test_corpus_env(tmp_path, monkeypatch):
    (tmp_path / "one.json").write_text(save_corpus([builtin("D8")]))
    monkeypatch.setenv("BPILAB_CORPUS_DIR", str(tmp_path))
    out, status = run_command(["corpus-run", "--quiet", "--format", "json", "--check", "thompson-equiv"])
    doc = json.loads(out)
    assert status == 0 and {r["group"] for r in doc["results"]} == {"D8"}


def test_output_file(tmp_path):
    target = tmp_path / "t.txt"
    assert main(["table", "--group", "S3", "--output", str(target)]) == 0
    text = target.read_text()
    assert "X.2" in text and "cd = {1, 2}" in text


def test_render_empty():
    text = render_report(CorpusReport())
    assert len(text.strip().splitlines()) == 1
    assert text.split()[:2] == ["check", "group"]


def test_render_failure_shows_witness():
    bad = VerificationReport("thompson-a", "G", PrimeSet.of(2),
                             Side(False, "x", {"nonlinear": {"degree": 3, "index": 4}}), Side(True, "y"))
    rep = CorpusReport(results=[bad])
    text = render_report(rep)
    line = text.splitlines()[1]
    assert line.startswith("✗") and '"degree":3' in line
    assert "1 failed" in text
    assert not rep.ok


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "bpilab.cli", "bpi", "--group", "S3", "--pi", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert "B_{2}: 2 characters" in r.stdout
    r = subprocess.run([sys.executable, "-m", "bpilab.cli", "bpi", "--group", "A5", "--pi", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 2 and "error" in r.stderr
