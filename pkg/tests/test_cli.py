import argparse
import json
import subprocess
import sys

import pytest

from egr.cli import EXIT_INPUT, EXIT_OK, EXIT_UNKNOWN, main, parse_int

from curves import intro_curve


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_int():
    assert parse_int("1e6") == 10**6 and parse_int("-37") == -37
    for bad in ("1.5", "abc", "inf"):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_int(bad)


def test_good_d(capsys):
    code, out, _ = run(capsys, "good-d", "--a-max", "40", "--format", "csv")
    assert code == EXIT_OK
    rows = {tuple(map(int, line.split(",")[:2])) for line in out.splitlines()[1:]}
    assert {(20, 2), (16, 37), (-15, -7), (-32, -11), (39, 79)} <= rows
    code, out, _ = run(capsys, "good-d", "--a-max", "3")
    assert code == EXIT_OK and "-1727" in out
    with pytest.raises(SystemExit) as exc:
        main(["good-d", "--a-max", "0"])
    assert exc.value.code == EXIT_INPUT


def test_decide(capsys):
    code, out, _ = run(capsys, "decide", "6")
    assert code == EXIT_OK and "status=YES" in out
    code, out, _ = run(capsys, "decide", "-3")
    assert code == EXIT_OK and "status=NO" in out
    code, _, err = run(capsys, "decide", "12")
    assert code == EXIT_INPUT and "square-free" in err
    code, out, _ = run(capsys, "decide", "5", "--format", "json")
    assert code == EXIT_UNKNOWN and json.loads(out)["status"] == "UNKNOWN"


def test_construct_then_verify(capsys, tmp_path):
    path = tmp_path / "e.txt"
    code, _, _ = run(capsys, "construct", "6", "--out", str(path))
    assert code == EXIT_OK
    text = path.read_text()
    assert "# j = 8000" in text and "# EGR: true" in text
    code, out, _ = run(capsys, "verify", str(path))
    assert code == EXIT_OK and out.startswith("EGR: true")
    code, out, _ = run(capsys, "construct", "-259", "--format", "json")
    assert json.loads(out)["j"] == "4096" and json.loads(out)["egr"] is True
    code, _, err = run(capsys, "construct", "3")
    assert code == EXIT_INPUT and "status=NO" in err


def test_verify_files(capsys, tmp_path):
    E = intro_curve()
    good = tmp_path / "intro.txt"
    E.save(good)
    code, out, _ = run(capsys, "verify", str(good))
    assert code == EXIT_OK and out.startswith("EGR: true")
    lines = good.read_text().splitlines()
    lines[5] = "a6 1 0"  # flip a6 from 0 to 1
    bad = tmp_path / "tampered.txt"
    bad.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "verify", str(bad))
    assert code == EXIT_OK and out.startswith("EGR: false")
    broken = tmp_path / "broken.txt"
    broken.write_text("m 29\n1 0\n")
    code, _, err = run(capsys, "verify", str(broken))
    assert code == EXIT_INPUT and "parse error" in err
    code, _, err = run(capsys, "verify", str(tmp_path / "missing.txt"))
    assert code == EXIT_INPUT


def test_count(capsys):
    code, out, _ = run(capsys, "count", "2", "1e4")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "X,count,normalized" and lines[1].startswith("10,1,")
    code, out, _ = run(capsys, "count", "R", "--x-max", "1000", "--long")
    assert out.splitlines()[0] == "family,X,count,normalized"
    code, out, _ = run(capsys, "count", "I", "1000", "--format", "text")
    assert "alpha = 1/2" in out
    code, _, err = run(capsys, "count", "1", "10")
    assert code == EXIT_INPUT
    code, _, _ = run(capsys, "count", "2")
    assert code == EXIT_INPUT


def test_deterministic_output(capsys):
    outs = {run(capsys, "construct", "33", "--format", "json")[1] for _ in range(2)}
    assert len(outs) == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "egr", "decide", "11"], capture_output=True, text=True)
    assert res.returncode == 0 and "status=NO" in res.stdout
