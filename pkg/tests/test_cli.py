import io
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from weylcoh.arith import FpConfig
from weylcoh.cli import run_command
from weylcoh.coherence import present_left_ideal
from weylcoh.sampling import random_weyl
from weylcoh.textio import (
    OperatorFile,
    ParseError,
    format_operator,
    parse_operator,
    read_operator_file,
    read_presentation_text,
    write_operator_file,
)
from weylcoh.weyl import WeylElement

W = WeylElement


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_examples():
    c3 = FpConfig(3)
    d = parse_operator("x1^2*d1[3] + 2*d2", c3, 2)
    assert d == W.x(1, 2, c3, 2) * W.d(1, 2, c3, 3) + W.d(2, 2, c3).scale(2)
    assert len(d) == 2
    c2 = FpConfig(2)
    assert str(parse_operator("d1*x1", c2, 1)) == "x1*d1 + 1"
    assert parse_operator("d1[1]*d1[1]", c2, 1).is_zero()
    assert parse_operator(" - x1 + 2 ", c3, 1) == W.x(1, 1, c3).scale(2) + 2


@pytest.mark.parametrize("text, pos", [
    ("x1 +", 4),
    ("x1 ** 2", 4),
    ("y1", 0),
    ("x1^", 3),
    ("d1[2", 4),
    ("", 0),
])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as e:
        parse_operator(text, FpConfig(3), 2)
    assert e.value.pos == pos


def test_semantic_errors():
    c3 = FpConfig(3)
    with pytest.raises(ParseError, match="out of range"):
        parse_operator("x3", c3, 2)
    with pytest.raises(ParseError, match="not in 0..2"):
        parse_operator("3*x1", c3, 1)
    with pytest.raises(ParseError, match="d\\[0\\]"):
        parse_operator("d1[0]", c3, 1)


def test_format_examples():
    c2 = FpConfig(2)
    assert format_operator(W.zero(1, c2)) == "0"
    assert format_operator(W.one(1, c2)) == "1"
    assert format_operator(W.x(1, 1, c2) * W.d(1, 1, c2, 2)) == "x1*d1[2]"


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([2, 3, 5, 7]), st.integers(1, 3))
def test_parse_format_round_trip(seed, p, n):
    cfg = FpConfig(p)
    d = random_weyl(random.Random(seed), n, cfg, 6, 5)
    assert parse_operator(format_operator(d), cfg, n) == d


def test_cli_examples():
    assert run("mul", "--p", "2", "--n", "1", "d1", "d1") == (0, "0\n", "")
    code, out, _ = run("matrix", "--p", "2", "--n", "1", "--level", "1", "x1")
    assert code == 0 and out.splitlines()[1:] == ["0 y1", "1 0"]
    code, out, _ = run("present", "--p", "2", "--n", "1", "--side", "left", "d1")
    assert code == 0
    assert out.splitlines() == ["side=left level=1 k=1", "d1", "(d1)"]


def test_cli_other_commands():
    assert run("normalize", "--p", "2", "--n", "1", "d1*x1")[1] == "x1*d1 + 1\n"
    assert run("act", "--p", "3", "--n", "1", "d1[2]", "x1^5")[1] == "x1^3\n"
    assert run("level", "--p", "2", "--n", "1", "d1[2]")[1] == "2\n"
    code, out, _ = run("oracle", "--p", "2", "--n", "1", "--bound", "2", "d1")
    assert code == 0 and out.splitlines()[0] == "bound=2 dim=2"
    # global flags may precede the subcommand
    assert run("--p", "2", "--n", "1", "mul", "d1", "x1")[1] == "x1*d1 + 1\n"


def test_cli_json():
    code, out, _ = run("matrix", "--p", "2", "--n", "1", "--level", "1", "x1", "--json")
    assert json.loads(out) == {"level": 1, "q": 2, "rows": [["0", "y1"], ["1", "0"]]}
    code, out, _ = run("present", "--json", "--p", "2", "--n", "1", "d1")
    data = json.loads(out)
    assert data["syzygies"] == [["d1"]] and data["side"] == "left" and data["k"] == 1


def test_cli_errors():
    code, _, err = run("normalize", "--p", "4", "--n", "1", "x1")
    assert code == 2 and "not prime" in err
    code, _, err = run("normalize", "--p", "3", "--n", "1", "x1 +")
    assert code == 2 and "position" in err
    code, _, err = run("normalize", "x1")
    assert code == 2
    code, _, _ = run("matrix", "--p", "2", "--n", "1", "--level", "1", "d1[2]")
    assert code == 2
    code, _, _ = run("bogus")
    assert code != 0


def test_cli_is_deterministic():
    argv = ["present", "--p", "3", "--n", "2", "--side", "right", "x1*d2 + d1[2]", "x2 + d1"]
    outs = {run(*argv)[1] for _ in range(3)}
    assert len(outs) == 1


def test_operator_file_round_trip(tmp_path):
    path = tmp_path / "ops.txt"
    path.write_text("# generators\np=2 n=1\ng = d1\n\nh = d1*x1  # not normal\n")
    of = read_operator_file(path)
    assert (of.p, of.n) == (2, 1)
    assert list(of.operators) == ["g", "h"]
    assert str(of.operators["h"]) == "x1*d1 + 1"
    text = write_operator_file(of)
    assert read_operator_file(io.StringIO(text)).operators == of.operators
    assert read_operator_file(io.StringIO("p=3 n=2\n")).operators == {}


def test_operator_file_errors():
    with pytest.raises(ParseError, match="duplicate"):
        read_operator_file(io.StringIO("p=2 n=1\ng = d1\ng = x1\n"))
    with pytest.raises(ParseError, match="header"):
        read_operator_file(io.StringIO("n=1 p=2\n"))
    with pytest.raises(ParseError):
        read_operator_file(io.StringIO("p=2 n=1\ng = d2\n"))


def test_present_from_file(tmp_path):
    path = tmp_path / "ops.txt"
    write_operator_file(OperatorFile(2, 1, {"g": W.d(1, 1, FpConfig(2))}), path)
    code, out, _ = run("present", "--file", str(path))
    assert code == 0 and out.splitlines()[-1] == "(d1)"
    code, _, err = run("present", "--p", "3", "--file", str(path))
    assert code == 2 and "disagrees" in err


def test_verify_command(tmp_path):
    cfg = FpConfig(3)
    gens = [parse_operator("x1*d1 + d1[2]", cfg, 1), parse_operator("x1 + 2", cfg, 1)]
    pres = present_left_ideal(gens)
    good = tmp_path / "good.txt"
    good.write_text(pres.to_text() + "\n")
    assert read_presentation_text(pres.to_text(), cfg, 1) == pres
    code, out, _ = run("verify", "--p", "3", "--n", "1", str(good))
    assert code == 0 and out.strip().endswith("ok")
    lines = pres.to_text().splitlines()
    lines[-1] = "(" + ", ".join(["1"] * len(gens)) + ")"
    bad = tmp_path / "bad.txt"
    bad.write_text("\n".join(lines) + "\n")
    code, out, _ = run("verify", "--p", "3", "--n", "1", str(bad))
    assert code == 1
    assert f"syzygy {len(pres.syzygies)}: fail" in out
    code, out, _ = run("verify", "--json", "--p", "3", "--n", "1", str(bad))
    assert json.loads(out)["ok"] is False
