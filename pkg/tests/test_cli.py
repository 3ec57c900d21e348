import json
import os
from pathlib import Path

import pytest

from lyubeznik.cli import main
from lyubeznik.errors import NonHomogeneous, NonPrimeField, ParseError
from lyubeznik.parse import format_input, parse_input

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

GOLDEN_CASES = {
    "table_point": ["table", "point.txt"],
    "table_skew_tsv": ["table", "skew_lines.txt", "--format", "tsv"],
    "table_skew_json": ["table", "skew_lines.txt", "--format", "json"],
    "m0_skew": ["m0", "skew_lines.txt"],
    "compare_p1_conic_cubic": ["compare", "p1.txt", "conic.txt", "--veronese-t", "3"],
    "compare_p1_conic_json": ["compare", "p1.txt", "conic.txt", "--format", "json"],
    "veronese_p1_t3": ["veronese", "p1.txt", "--veronese-t", "3"],
    "oracle_check": ["oracle-check", "point.txt", "skew_lines.txt"],
    "table_cells": ["table", "conic_f3.txt", "--cells", "1..2,2..2"],
}


def run_cli(args, capsys):
    cwd = os.getcwd()
    os.chdir(DATA)
    try:
        code = main(args)
    finally:
        os.chdir(cwd)
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_examples():
    c = parse_input("ring 2 2 x y\nx*y")
    assert c.ring.names == ("x", "y") and [str(g) for g in c.ideal.generators] == ["x*y"]
    with pytest.raises(NonHomogeneous) as exc:
        parse_input("ring 2 2 x y\nx + y^2")
    assert exc.value.index == 0
    with pytest.raises(NonPrimeField):
        parse_input("ring 4 2 x y")


def test_parse_details():
    c = parse_input("ring 5 3 a b c\n# comment\n\n-a*b + 7*c^2 - 2*a^2\n3*a - b\n")
    assert [str(g) for g in c.ideal.generators] == ["3*a^2 + 4*a*b + 2*c^2", "3*a + 4*b"]
    assert parse_input("ring 3 2 x y\n").ideal.is_zero()
    assert parse_input("ring 2 2 x y\nx*y", field=3).ring.p == 3
    for bad, col in [("ring 3 2 x y\nx y", 3), ("ring 3 2 x y\n2x", 2), ("ring 3 2 x y\nx*w", 3),
                     ("ring 3 2 x y\nx + (y)", 5), ("ring 3 2 x y\nx^", 3), ("ring 3 2 x y\nx**y", 3)]:
        with pytest.raises(ParseError) as exc:
            parse_input(bad)
        assert (exc.value.line, exc.value.column) == (2, col), bad
    for bad in ["", "# c\nring 2 1 x", "ring 2 2 x", "ring two 1 x", "ring 2 2 x x", "ring 2 1 9x"]:
        with pytest.raises(ParseError):
            parse_input(bad)


def test_format_round_trip():
    c = parse_input("ring 3 3 x y z\nx*y - z^2\ny^3 + x*z^2\n")
    assert parse_input(format_input(c)).ideal == c.ideal


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name, capsys):
    code, out, _ = run_cli(GOLDEN_CASES[name], capsys)
    assert code == 0
    assert out == (GOLDEN / f"{name}.out").read_text()


def test_byte_identical_reruns(capsys):
    outs = {run_cli(["table", "skew_lines.txt", "--format", "json"], capsys)[1] for _ in range(3)}
    assert len(outs) == 1


def test_json_document_shape(capsys):
    _, out, _ = run_cli(["table", "skew_lines.txt", "--format", "json"], capsys)
    doc = json.loads(out)
    assert list(doc) == ["ring", "ideal", "d", "lambda", "m0", "provenance", "versions"]
    nums = [v for row in doc["lambda"] + doc["m0"] for v in row]
    assert all(type(v) is int for v in nums + [doc["d"]])
    assert doc["lambda"][0][1] == 1 and doc["lambda"][2][2] == 2


def test_jobs_do_not_change_output(capsys):
    one = run_cli(["table", "skew_lines.txt", "--format", "json"], capsys)[1]
    many = run_cli(["table", "skew_lines.txt", "--format", "json", "--jobs", "3"], capsys)[1]
    assert one == many


def test_timings_go_to_stderr(capsys):
    plain = run_cli(["table", "point.txt"], capsys)[1]
    code, out, err = run_cli(["table", "point.txt", "--timings"], capsys)
    assert code == 0 and out == plain
    assert "time resolution of R/I" in err


def test_exit_codes(capsys):
    assert run_cli(["table", "nonhomogeneous.txt"], capsys)[0] == 2
    assert run_cli(["table", "missing.txt"], capsys)[0] == 2
    assert run_cli(["table", "point.txt", "--field", "4"], capsys)[0] == 2
    assert run_cli(["oracle-check", "conic.txt"], capsys)[0] == 2
    assert run_cli(["frobnicate", "point.txt"], capsys)[0] == 2
    assert run_cli(["table", "point.txt", "--cells", "oops"], capsys)[0] == 2
    assert run_cli(["veronese", "p1.txt"], capsys)[0] == 2
    assert run_cli(["compare", "point.txt", "conic.txt"], capsys)[0] == 2  # different dimensions
    assert run_cli(["table", "skew_lines.txt", "--max-vars", "3"], capsys)[0] == 3
    assert run_cli(["veronese", "skew_lines.txt", "-t", "3"], capsys)[0] == 3
    assert run_cli(["table", "point.txt", "--jobs", "0"], capsys)[0] == 2


def test_time_budget(capsys):
    code, _, err = run_cli(["compare", "skew_lines.txt", "-t", "2", "--time-budget-secs", "0.5"], capsys)
    assert code == 3 and "time budget" in err


def test_oracle_mismatch_exit_code(capsys, monkeypatch):
    from lyubeznik import cli
    from lyubeznik.cone import LyubeznikTable

    monkeypatch.setattr(cli, "oracle_lyubeznik_monomial", lambda c: LyubeznikTable(((0, 0), (0, 2))))
    code, out, _ = run_cli(["oracle-check", "point.txt"], capsys)
    assert code == 4 and "MISMATCH at (1,1)" in out
