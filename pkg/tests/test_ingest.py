from fractions import Fraction
from pathlib import Path

import mpmath
import pytest

from hmfconverse.errors import IngestError
from hmfconverse.ideals import FracIdeal
from hmfconverse.ingest import (ingest_coefficients, ingest_text, multiplicativity_violations,
                                parse_coefficients, write_coefficients)

DATA = Path(__file__).parent / "data"

MINIMAL = """\
# smallest useful file
schema=1
field D=5
weight k=2,2
ideal <1,0,1> A=1,0
ideal 2,0,2 A=-1.5,0
ideal <5,2,1> A=0.25,-0.5
"""


def test_minimal_file(Q5):
    seq = ingest_text(MINIMAL)
    assert seq.F == Q5 and seq.k0 == 2 and seq.weight == (2, 2)
    assert seq.table[FracIdeal.principal(Q5(2))] == Fraction(-3, 2)
    v = seq.table[FracIdeal.principal(Q5.sqrtD)]
    assert abs(v - mpmath.mpc(0.25, -0.5)) < 1e-30
    assert seq.level == FracIdeal.unit(Q5)


def test_duplicate_reports_line():
    text = MINIMAL + "ideal <2,0,2> A=1,0\n"
    with pytest.raises(IngestError, match=r"line 8: duplicate.*line 6"):
        ingest_text(text)


def test_unit_coefficient_must_be_one():
    with pytest.raises(IngestError, match="A\\(O_F\\) must be 1"):
        ingest_text(MINIMAL.replace("<1,0,1> A=1,0", "<1,0,1> A=2,0"))
    with pytest.raises(IngestError, match="unit ideal"):
        ingest_text(MINIMAL.replace("ideal <1,0,1> A=1,0\n", ""))


@pytest.mark.parametrize("line,pattern", [
    ("ideal <3,4,1> A=1,0", "not a canonical HNF"),
    ("ideal <3,1,1> A=1,0", "not an ideal"),
    ("ideal <2,0,2> A=1e,0", "malformed decimal"),
    ("ideal <2,0> A=1,0", "expected 3"),
    ("coefficient 4 5", "unknown record"),
    ("field D=7", "repeated header"),
])
def test_bad_lines(line, pattern):
    with pytest.raises(IngestError, match=pattern):
        ingest_text(MINIMAL + line + "\n")


def test_schema_and_field_errors():
    with pytest.raises(IngestError, match="schema 2"):
        ingest_text(MINIMAL.replace("schema=1", "schema=2"))
    with pytest.raises(IngestError, match="line 3"):
        ingest_text(MINIMAL.replace("D=5", "D=4"))
    with pytest.raises(IngestError, match="weights"):
        ingest_text(MINIMAL.replace("k=2,2", "k=3,2"))


def test_euler_flag_detects_non_multiplicative():
    text = MINIMAL.replace("schema=1", "schema=1\neuler=1") + \
        "ideal <10,4,2> A=7,0\n"
    with pytest.raises(IngestError, match="multiplicative"):
        ingest_text(text)


def test_newform_files_are_multiplicative():
    for name, k0, records in (("q5_level11_weight2.txt", 2, 643),
                              ("q5_level1_weight6.txt", 6, 172)):
        seq = ingest_coefficients(DATA / name)
        assert seq.k0 == k0 and len(seq.table) == records
        assert multiplicativity_violations(seq) == []


def test_round_trip(tmp_path):
    seq = ingest_text(MINIMAL)
    path = tmp_path / "out.txt"
    write_coefficients(seq, path, comment="round trip", euler=False)
    again = ingest_coefficients(path)
    assert set(again.table) == set(seq.table)
    for I, v in seq.table.items():
        assert abs(mpmath.mpmathify(again.table[I]) - mpmath.mpmathify(v)) < 1e-25


def test_parse_keeps_line_numbers():
    parsed = parse_coefficients(MINIMAL)
    assert parsed["records"][(2, 0, 2)][1] == 6
    assert parsed["header"]["field"] == ("5", 3)


def test_only_unit_record():
    seq = ingest_text("field D=5\nweight k=2,2\nideal <1,0,1> A=1,0\n")
    assert len(seq.table) == 1 and seq.A(FracIdeal.unit(seq.F)) == 1
