import csv
import io
import os
import random
import subprocess
import sys

import pytest

from mst3ree.cli import atomic_write, main, run_worked_example


def _keygen(tmp_path, name="k", seed="1f", profile="toy"):
    base = tmp_path / name
    assert main(["keygen", "--profile", profile, "--seed", seed, "--out", str(base)]) == 0
    return f"{base}.pub", f"{base}.sec"


def test_demo_worked_example(capsys):
    assert main(["demo", "--paper-example"]) == 0
    out = capsys.readouterr().out
    assert "y1 = a86:a186:a113 OK" in out
    assert "y2 = a238:a210:a0 OK" in out
    assert "y3 = 0:0:a66 OK" in out
    assert "D*2 = 0:0:a227 OK" in out
    assert "MISMATCH" not in out
    assert out.rstrip().endswith("all values match")


def test_demo_is_deterministic():
    a, b = io.StringIO(), io.StringIO()
    run_worked_example(a)
    run_worked_example(b)
    assert a.getvalue() == b.getvalue()


def test_demo_needs_flag():
    with pytest.raises(SystemExit) as exc:
        main(["demo"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mst3ree", "demo", "--paper-example"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "y1 = a86:a186:a113 OK" in proc.stdout


def test_keygen_seed_is_reproducible(tmp_path, monkeypatch):
    pub1, sec1 = _keygen(tmp_path, "a", "abc")
    pub2, _ = _keygen(tmp_path, "b", "abc")
    monkeypatch.setenv("MST3_SEED", "abc")
    base = tmp_path / "c"
    assert main(["keygen", "--profile", "toy", "--out", str(base)]) == 0
    text = open(pub1).read()
    assert text == open(pub2).read() == open(f"{base}.pub").read()
    assert open(sec1).read().startswith("MST3-REE/1\nkind secret\n")


def test_bad_seed(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["keygen", "--seed", "xyz", "--out", str(tmp_path / "k")])
    assert exc.value.code == 2


def test_round_trip_1kb(tmp_path):
    pub, sec = _keygen(tmp_path)
    payload = random.Random(5).randbytes(1024)
    src, ct, dst = tmp_path / "in.bin", tmp_path / "in.ct", tmp_path / "out.bin"
    src.write_bytes(payload)
    assert main(["encrypt", "--pub", pub, "--in", str(src), "--out", str(ct)]) == 0
    assert main(["decrypt", "--sec", sec, "--in", str(ct), "--out", str(dst)]) == 0
    assert dst.read_bytes() == payload


def test_equal_blocks_encrypt_differently(tmp_path):
    pub, _ = _keygen(tmp_path)
    src, ct = tmp_path / "in.bin", tmp_path / "in.ct"
    src.write_bytes(b"\x41" * 64)
    assert main(["encrypt", "--pub", pub, "--in", str(src), "--out", str(ct)]) == 0
    lines = [line for line in ct.read_text().splitlines() if line.count(":") == 8]
    assert len(lines) == 65
    assert len(set(lines[:64])) > 50


def test_wrong_key_leaves_no_output(tmp_path, capsys):
    pub, _ = _keygen(tmp_path, "a", "1")
    _, other_sec = _keygen(tmp_path, "b", "2")
    src, ct, dst = tmp_path / "in.bin", tmp_path / "in.ct", tmp_path / "out.bin"
    src.write_bytes(b"secret")
    assert main(["encrypt", "--pub", pub, "--in", str(src), "--out", str(ct)]) == 0
    assert main(["decrypt", "--sec", other_sec, "--in", str(ct), "--out", str(dst)]) != 0
    assert not dst.exists()
    assert not [p for p in os.listdir(tmp_path) if p.endswith(".tmp")]


def test_fixed_randomness_requires_flag(tmp_path):
    pub, sec = _keygen(tmp_path)
    src, ct = tmp_path / "in.bin", tmp_path / "in.ct"
    src.write_bytes(b"x")
    with pytest.raises(SystemExit) as exc:
        main(["encrypt", "--pub", pub, "--in", str(src), "--out", str(ct), "--r1", "3", "--r2", "4"])
    assert exc.value.code == 2
    assert not ct.exists()
    with pytest.raises(SystemExit) as exc:
        main(["encrypt", "--pub", pub, "--in", str(src), "--out", str(ct), "--r1", "3", "--insecure-test"])
    assert exc.value.code == 2
    args = ["encrypt", "--pub", pub, "--in", str(src), "--out", str(ct), "--r1", "3", "--r2", "4", "--insecure-test"]
    assert main(args) == 0
    first = ct.read_text()
    assert main(args) == 0
    assert ct.read_text() == first
    assert main(["encrypt", "--pub", pub, "--in", str(src), "--out", str(ct), "--r1", "27", "--r2", "4",
                 "--insecure-test"]) == 1


def test_malformed_files(tmp_path, capsys):
    pub, sec = _keygen(tmp_path)
    bad = tmp_path / "bad.pub"
    bad.write_text("MST3-REE/9\n")
    src = tmp_path / "in.bin"
    src.write_bytes(b"x")
    assert main(["encrypt", "--pub", str(bad), "--in", str(src), "--out", str(tmp_path / "o")]) == 3
    assert main(["encrypt", "--pub", str(tmp_path / "missing"), "--in", str(src),
                 "--out", str(tmp_path / "o")]) == 3
    assert main(["decrypt", "--sec", pub, "--in", str(src), "--out", str(tmp_path / "o")]) == 3
    assert "error:" in capsys.readouterr().err


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_attacks_from_cli(tmp_path, capsys):
    pub, sec = _keygen(tmp_path)
    src, ct, out = tmp_path / "in.bin", tmp_path / "in.ct", tmp_path / "r.csv"
    src.write_bytes(b"hi")
    assert main(["encrypt", "--pub", pub, "--in", str(src), "--out", str(ct)]) == 0
    for kind in ("pair", "split"):
        assert main(["attack", kind, "--pub", pub, "--ct", str(ct), "--block", "1", "--csv", str(out)]) == 0
        rows = list(csv.DictReader(out.open()))
        assert rows[0]["attack"] == kind and rows[0]["succeeded"] == "1"
    assert main(["attack", "tkey", "--pub", pub, "--ct", str(ct), "--sec", sec]) == 0
    text = capsys.readouterr().out
    assert "tkey: q=27" in text and "success" in text
    with pytest.raises(SystemExit):
        main(["attack", "tkey", "--pub", pub, "--ct", str(ct)])
    with pytest.raises(SystemExit):
        main(["attack", "pair", "--pub", pub, "--ct", str(ct), "--block", "7"])


def test_sizing(capsys):
    assert main(["sizing", "--profile", "large"]) == 0
    out = capsys.readouterr().out
    assert "rows per signature = s*r_i = 1944" in out
    assert "WARNING" in out


def test_atomic_write_failure_cleans_up(tmp_path):
    target = tmp_path / "f"

    with pytest.raises(TypeError):
        atomic_write(target, "not bytes")
    assert not target.exists()
    assert os.listdir(tmp_path) == []
    atomic_write(target, b"ok")
    assert target.read_bytes() == b"ok"
