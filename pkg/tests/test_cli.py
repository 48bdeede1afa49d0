from __future__ import annotations

import json
import subprocess
import sys

import pytest

from ultrahom import __version__
from ultrahom.cli import main
from ultrahom.corpus import abelian, cyclic


def _write(path, data):
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def eppa_files(tmp_path):
    return {
        "A": _write(tmp_path / "A.json", cyclic(2).to_json()),
        "B": _write(tmp_path / "B.json", cyclic(4).to_json()),
        "C": _write(tmp_path / "C.json", abelian(2, 2).to_json()),
        "iAB": _write(tmp_path / "iAB.json", {"images": [0, 2]}),
        "iAC": _write(tmp_path / "iAC.json", {"images": [0, 3]}),
        "p": _write(tmp_path / "p.json", {"pairs": [[1, 3]]}),
        "q": _write(tmp_path / "q.json", {"pairs": [[1, 2], [2, 1]]}),
    }


def _amalgam_args(f, *extra):
    return ["amalgam", "--A", f["A"], "--B", f["B"], "--C", f["C"], "--iAB", f["iAB"], "--iAC", f["iAC"], *extra]


def test_tower_command(tmp_path, capsys):
    assert main(["--cache-dir", str(tmp_path), "--json", "tower", "--max-level", "2"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert [r["degree"] for r in rec["levels"]] == [3, 6, 720]
    assert (tmp_path / "level1.json").exists()


def test_tower_level_three_is_a_usage_error(tmp_path, capsys):
    with pytest.raises(SystemExit) as info:
        main(["--cache-dir", str(tmp_path), "tower", "--max-level", "3"])
    assert info.value.code == 2


def test_witness_command(tmp_path, capsys):
    pairs = _write(tmp_path / "pairs.json", {"pairs": [[1, 3]]})
    out = tmp_path / "cert.json"
    assert main(["witness", "--level", "0", "--pairs", pairs, "--out", str(out)]) == 0
    cert = json.loads(out.read_text())
    assert cert["verified"] and cert["degree"] == 6


def test_witness_accepts_image_lists(tmp_path, capsys):
    pairs = _write(tmp_path / "pairs.json", [[[1, 0, 2], [0, 2, 1]]])
    assert main(["--json", "witness", "--pairs", pairs]) == 0
    assert json.loads(capsys.readouterr().out)["verified"]


def test_witness_rejects_invalid_pairing(tmp_path, capsys):
    # an element of order 3 cannot be sent to one of order 2
    pairs = _write(tmp_path / "pairs.json", {"pairs": [[1, 2]]})
    code = main(["--json", "witness", "--pairs", pairs])
    rec = json.loads(capsys.readouterr().out)
    assert code == 2 and rec["relation"]


def test_witness_level_two_rejected(tmp_path, capsys):
    pairs = _write(tmp_path / "pairs.json", {"pairs": [[0, 0]]})
    assert main(["witness", "--level", "2", "--pairs", pairs]) == 2


def test_amalgam_with_automorphisms(eppa_files, tmp_path, capsys):
    out = tmp_path / "res.json"
    code = main(_amalgam_args(eppa_files, "--p", eppa_files["p"], "--q", eppa_files["q"], "--out", str(out)))
    assert code == 0
    rec = json.loads(out.read_text())
    assert rec["degree"] == 16


def test_amalgam_plain(eppa_files, capsys):
    assert main(_amalgam_args(eppa_files)) == 0
    assert "degree 8" in capsys.readouterr().out


def test_amalgam_cap_writes_partial_record(eppa_files, tmp_path, capsys):
    out = tmp_path / "partial.json"
    code = main(["--max-neumann", "4", *_amalgam_args(eppa_files, "--out", str(out))])
    assert code == 3
    assert json.loads(out.read_text())["partial"] is True


def test_bad_json_is_invalid_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert main(["check-group", str(bad)]) == 2
    assert "not valid JSON" in capsys.readouterr().err


def test_negative_cap_is_invalid_input(tmp_path, capsys):
    assert main(["--max-enum", "0", "check-group", "x.json"]) == 2


def test_check_group(tmp_path, capsys):
    g = _write(tmp_path / "s3.json", {"name": "S3", "generators": [[1, 2, 0], [1, 0, 2]]})
    assert main(["--json", "check-group", g]) == 0
    assert json.loads(capsys.readouterr().out)["inner_ultrahomogeneous"] is True


def test_verify_single_suite(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["verify", "q8-automorphism", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["pass"] and rep["suite"] == "q8-automorphism"
    assert "PASS q8-automorphism" in capsys.readouterr().out


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "ultrahom", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == __version__
