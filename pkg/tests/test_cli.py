import json
import shutil
import subprocess
import sys

import pytest

from leftorder.cli import run_cli
from leftorder.textio import digest_ok
from leftorder.verify import verify_file


def write_germs(path, germs):
    path.write_text(json.dumps({"format_version": 1, "germs": germs}))
    return str(path)


def test_betti(capsys):
    assert run_cli(["betti", "corpus/thurston.grp"]) == 0
    out = capsys.readouterr().out
    assert "b1 = 0" in out and "snf = 1 1 1" in out


def test_check_lo_and_verify(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert run_cli(["check-lo", "corpus/z2.grp", "--subset", "a", "--max-len", "2", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["verdict"] == "NotLeftOrderable" and doc["format_version"] == 1 and digest_ok(doc)
    assert run_cli(["verify", str(out)]) == 0
    assert "OK" in capsys.readouterr().out


def test_check_lo_to_stdout(capsys):
    assert run_cli(["check-lo", "f2", "--subset", "a, b", "--max-len", "3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "Undetermined" and len(doc["survivors"]) == 4


def test_realize_and_verify(tmp_path):
    out = tmp_path / "r.json"
    assert run_cli(["realize", "corpus/z.grp", "--order", "lex", "--radius", "5", "--iterates", "10",
                    "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["status"] == "PASS"
    assert {"faithful", "monotone", "partial_hom", "germ_orbit"} <= set(doc["checks"])
    assert doc["embedding"][1] == {"word": "a", "value_num": 1, "value_den": 1}
    assert run_cli(["verify", str(out)]) == 0


def test_germ_order_and_obstruct(tmp_path):
    germs = write_germs(tmp_path / "g.json", [{"name": "f", "expr": "x + s", "rho": "1"},
                                               {"name": "g", "expr": "(1 + s) * x", "rho": "1"}])
    out = tmp_path / "t.json"
    assert run_cli(["germ-order", germs, "--depth", "4", "--max-len", "4", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["epsilons"] == [1, 1]
    assert run_cli(["verify", str(out)]) == 0
    a = write_germs(tmp_path / "a.json", [{"name": "a", "expr": "x + s", "rho": "1"}])
    rep = tmp_path / "o.json"
    assert run_cli(["obstruct", "corpus/z3.grp", a, "--depth", "3", "--out", str(rep)]) == 0
    assert json.loads(rep.read_text())["verdict"] == "NotARepresentation"
    assert run_cli(["verify", str(rep)]) == 0


def test_corpus_listing(capsys):
    assert run_cli(["corpus", "--show", "tsuboi"]) == 0
    out = capsys.readouterr().out
    assert "thurston" in out and "gens: a b" in out


@pytest.mark.parametrize("argv, code", [
    (["nonsense"], 1),
    ([], 1),
    (["betti", "missing.grp"], 1),
    (["check-lo", "corpus/z3.grp", "--subset", "a^3"], 2),
    (["check-lo", "corpus/z3.grp", "--subset", "a", "--max-len", "0"], 1),
    (["realize", "corpus/klein.grp"], 2),
    (["check-lo", "corpus/z3.grp", "--subset", "q"], 1),
])
def test_exit_codes(argv, code, capsys):
    assert run_cli(argv) == code
    assert capsys.readouterr().err


def test_germ_order_precondition(tmp_path):
    germs = write_germs(tmp_path / "g.json", [{"name": "e", "expr": "x", "rho": "1"}])
    assert run_cli(["germ-order", germs]) == 2


def test_bad_germ_file(tmp_path):
    germs = write_germs(tmp_path / "g.json", [{"name": "f", "expr": "x ** 2", "rho": "1"}])
    assert run_cli(["germ-order", germs]) == 1


def test_parse_error_location(tmp_path, capsys):
    bad = tmp_path / "bad.grp"
    bad.write_text("gens: a b\nrels: a b^9 x\n")
    assert run_cli(["betti", str(bad)]) == 1
    assert "line 2, col 13" in capsys.readouterr().err


def test_verify_detects_corruption(tmp_path):
    out = tmp_path / "c.json"
    assert run_cli(["check-lo", "corpus/z3.grp", "--subset", "a", "--max-len", "3", "--out", str(out)]) == 0
    raw = bytearray(out.read_bytes())
    i = raw.index(b'"max_len": 3') + len(b'"max_len": ')
    raw[i:i + 1] = b"2"
    bad = tmp_path / "bad.json"
    bad.write_bytes(bytes(raw))
    assert verify_file(bad)
    assert run_cli(["verify", str(bad)]) == 3
    junk = tmp_path / "junk.json"
    junk.write_bytes(bytes(raw[: len(raw) // 2]))
    assert run_cli(["verify", str(junk)]) == 3


def test_console_script():
    exe = shutil.which("leftorder")
    cmd = [exe] if exe else [sys.executable, "-m", "leftorder.cli"]
    res = subprocess.run(cmd + ["betti", "corpus/klein.grp"], capture_output=True, text=True)
    assert res.returncode == 0 and "b1 = 1" in res.stdout


def test_threads_flag(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["check-lo", "corpus/q8.grp", "--subset", "a, b", "--max-len", "4"]
    assert run_cli(args + ["--out", str(a)]) == 0
    assert run_cli(["--threads", "4"] + args + ["--out", str(b)]) == 0
    assert a.read_text() == b.read_text()
