import hashlib
import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from braided_groupoids import io
from braided_groupoids.cli import run
from braided_groupoids.search import read_records

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture()
def data(tmp_path):
    dst = tmp_path / "data"
    shutil.copytree(DATA, dst)
    return dst


def _digest(folder):
    return {p.name: hashlib.sha256(p.read_bytes()).hexdigest() for p in sorted(folder.iterdir())}


@pytest.mark.parametrize(
    "name,code",
    [("trivial.json", 0), ("s3s3_diagonal.json", 0), ("nonhandy8.json", 0), ("s3s3_broken.json", 3), ("s3s3_no_phi.json", 4)],
)
def test_verify_exit_codes(data, name, code):
    assert run(["verify", "--datum", str(data / name)]) == code


def test_broken_section_reports_c2(data, capsys):
    assert run(["--format", "json", "verify", "--datum", str(data / "s3s3_broken.json")]) == 3
    report = json.loads(capsys.readouterr().out)
    route = next(r for r in report["routes"] if r["route"] == "c1c2c3")
    assert "c2" in route["details"]["violated"]
    assert report["verdict"] == "not-braided"


def test_braiding_table_line_count(data, tmp_path, capsys):
    out = tmp_path / "table.jsonl"
    assert run(["braiding-table", "--datum", str(data / "nonhandy8.json"), "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 2 ** 3 * 2 ** 2
    assert all(set(json.loads(line)) == {"src1", "elem1", "mid", "elem2", "dst2", "out1_elem", "out_mid", "out2_elem"}
               for line in lines)


def test_braiding_table_refuses_unbraided(data, tmp_path):
    assert run(["braiding-table", "--datum", str(data / "s3s3_broken.json"), "--out", str(tmp_path / "t")]) == 3


def test_build_and_reconstruct(data, tmp_path):
    built = tmp_path / "built.json"
    assert run(["build-handy", "--input", str(data / "handy12_input.json"), "--out", str(built)]) == 0
    assert built.read_text() == (data / "handy12.json").read_text()
    back = tmp_path / "back.json"
    assert run(["reconstruct", "--datum", str(built), "--out", str(back)]) == 0
    assert io.handy_input_from_json(io.read(back)).same_tables(io.handy_input_from_json(io.read(data / "handy12_input.json")))
    assert run(["build-nonhandy", "--input", str(data / "nonhandy8_input.json"), "--out", str(tmp_path / "n.json")]) == 0
    assert run(["reconstruct", "--datum", str(data / "nonhandy8.json"), "--out", str(tmp_path / "r.json")]) == 4


def test_invalid_inputs(data, tmp_path, capsys):
    assert run(["verify", "--datum", str(tmp_path / "missing.json")]) == 2
    assert run(["verify", "--datum", str(data / "handy12_input.json")]) == 2
    err = json.loads(capsys.readouterr().err.splitlines()[-1])
    assert err["error"] == "SchemaError" and err["path"] == "$.kind"
    bad = tmp_path / "bad.json"
    doc = io.read(data / "handy12.json")
    doc["gamma"][0] = 6
    io.write(bad, doc)
    assert run(["verify", "--datum", str(bad)]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["path"] == "$.gamma[0]"
    assert run(["nonsense"]) == 2
    assert run(["build-handy", "--input", str(data / "handy12_input.json"), "--out", str(tmp_path / "no" / "x.json")]) == 2


def test_refuses_to_overwrite_input(data):
    src = data / "handy12_input.json"
    before = src.read_bytes()
    assert run(["build-handy", "--input", str(src), "--out", str(src)]) == 2
    assert src.read_bytes() == before


def test_no_subcommand_mutates_inputs(data, tmp_path):
    before = _digest(data)
    run(["verify", "--datum", str(data / "handy_twisted.json")])
    run(["build-handy", "--input", str(data / "handy_twisted_input.json"), "--out", str(tmp_path / "a.json")])
    run(["build-nonhandy", "--input", str(data / "nonhandy_s3_input.json"), "--out", str(tmp_path / "b.json")])
    run(["reconstruct", "--datum", str(data / "handy_twisted.json"), "--out", str(tmp_path / "c.json")])
    run(["braiding-table", "--datum", str(data / "handy12.json"), "--out", str(tmp_path / "d.jsonl")])
    run(["check-group", "--file", str(data / "trivial.json")])
    assert _digest(data) == before


def test_census_and_resume(tmp_path, capsys):
    out = tmp_path / "census.jsonl"
    assert run(["census", "--groups", "C2xC2", "D4", "--out", str(out), "--max-units", "2"]) == 0
    partial = len(read_records(out))
    assert run(["census", "--groups", "C2xC2", "D4", "--out", str(out), "--resume"]) == 0
    full = tmp_path / "full.jsonl"
    assert run(["census", "--groups", "C2xC2", "D4", "--out", str(full), "--jobs", "2"]) == 0
    assert out.read_bytes() == full.read_bytes()
    assert partial <= len(read_records(full))
    assert run(["census", "--groups", "S4", "--max-order", "12", "--out", str(tmp_path / "x")]) == 2


def test_check_group(tmp_path, capsys):
    assert run(["--format", "json", "check-group", "--group", "S3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["order"] == 6 and not doc["abelian"]
    assert run(["check-group", "--family", "dihedral", "4"]) == 0
    assert run(["check-group", "--family", "alternating", "4"]) == 2
    io.write(tmp_path / "L.json", [[b for b in range(6)] for _ in range(6)])
    io.write(tmp_path / "R.json", [[a] * 6 for a in range(6)])
    args = ["check-group", "--group", "S3", "--tri-left", str(tmp_path / "L.json"), "--tri-right", str(tmp_path / "R.json")]
    assert run(args) == 3  # trivial actions on a nonabelian group
    assert run(["check-group", "--group", "C6", *args[3:]]) == 0


def test_console_entry_point(data):
    proc = subprocess.run(
        [sys.executable, "-m", "braided_groupoids.cli", "verify", "--datum", str(data / "trivial.json")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "verdict: braided" in proc.stdout
