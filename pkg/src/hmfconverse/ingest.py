"""Line-oriented coefficient files.

    # comment
    schema=1
    field D=5
    weight k=2,2
    level hnf=11,3,1
    k0=2
    euler=1
    ideal <1,0,1> A=1,0
    ideal 11,3,1 A=-2,0

Records are indexed by the canonical HNF triple (a, b, c) of an integral
ideal, Z-basis {a, b + c w}.  Decimals are parsed exactly; values with zero
imaginary part stay rational, others become mpc at the configured precision.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import combinations

import mpmath

from .errors import HMFError, IngestError
from .ideals import FracIdeal
from .lseries import CoefficientSequence, sequence_from_table, values_equal
from .numfield import Field

SCHEMA_VERSION = 1
_DECIMAL = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


def _ints(text: str, n: int, lineno: int):
    parts = text.strip().strip("<>").split(",")
    if len(parts) != n:
        raise IngestError(f"line {lineno}: expected {n} comma-separated integers, got {text!r}")
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise IngestError(f"line {lineno}: not an integer list: {text!r}") from None


def _decimal(text: str, lineno: int) -> Fraction:
    text = text.strip()
    if not _DECIMAL.match(text):
        raise IngestError(f"line {lineno}: malformed decimal {text!r}")
    return Fraction(text)


def _header(line: str, key: str, lineno: int) -> str:
    # "field D=5" and "k0=2" style
    body = line[len(key):].strip() if line.startswith(key + " ") else line
    if "=" not in body:
        raise IngestError(f"line {lineno}: expected key=value in {line!r}")
    return body.split("=", 1)[1].strip()


def parse_coefficients(text: str, prec: int = 128) -> dict:
    """Parse to a header dict plus {HNF triple: (value, line number)}."""
    header = {}
    records = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word = line.split()[0].split("=")[0]
        if word == "ideal":
            m = re.match(r"^ideal\s+(<?[-\d\s,]+>?)\s+A=(.+)$", line)
            if not m:
                raise IngestError(f"line {lineno}: malformed ideal record {raw.strip()!r}")
            key = tuple(_ints(m.group(1), 3, lineno))
            parts = m.group(2).split(",")
            if len(parts) != 2:
                raise IngestError(f"line {lineno}: A must be <real>,<imag>")
            re_part, im_part = (_decimal(x, lineno) for x in parts)
            if key in records:
                raise IngestError(f"line {lineno}: duplicate record for ideal {key} "
                                  f"(first at line {records[key][1]})")
            if im_part == 0:
                value = re_part
            else:
                with mpmath.workprec(prec):
                    value = mpmath.mpc(mpmath.mpf(re_part.numerator) / re_part.denominator,
                                       mpmath.mpf(im_part.numerator) / im_part.denominator)
            records[key] = (value, lineno)
        elif word in ("field", "weight", "level", "k0", "schema", "euler"):
            if word in header:
                raise IngestError(f"line {lineno}: repeated header {word!r}")
            header[word] = (_header(line, word, lineno), lineno)
        else:
            raise IngestError(f"line {lineno}: unknown record type {word!r}")
    return {"header": header, "records": records}


def ingest_coefficients(path, schema_version: int = SCHEMA_VERSION, prec: int = 128,
                        field: Field | None = None) -> CoefficientSequence:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return ingest_text(text, schema_version, prec, field)


def ingest_text(text: str, schema_version: int = SCHEMA_VERSION, prec: int = 128,
                field: Field | None = None) -> CoefficientSequence:
    parsed = parse_coefficients(text, prec)
    header, records = parsed["header"], parsed["records"]
    if "schema" in header:
        v = int(header["schema"][0])
        if v != schema_version:
            raise IngestError(f"line {header['schema'][1]}: schema {v} is not {schema_version}")
    if "field" not in header:
        raise IngestError("missing 'field D=' header")
    D = int(header["field"][0])
    try:
        F = field if field is not None and field.D == D else Field(D)
    except HMFError as exc:
        raise IngestError(f"line {header['field'][1]}: {exc}") from None
    weight = None
    if "weight" in header:
        weight = tuple(_ints(header["weight"][0], 2, header["weight"][1]))
        if any(k <= 0 or k % 2 for k in weight):
            raise IngestError(f"line {header['weight'][1]}: weights must be positive and even")
    if "k0" in header:
        k0 = int(header["k0"][0])
        if weight is not None and k0 != max(weight):
            raise IngestError(f"line {header['k0'][1]}: k0 must equal the largest weight")
    elif weight is not None:
        k0 = max(weight)
    else:
        raise IngestError("need a 'weight' or 'k0' header")
    weight = weight or (k0, k0)
    level = FracIdeal.unit(F)
    if "level" in header:
        a, b, c = _ints(header["level"][0], 3, header["level"][1])
        level = _ideal(F, (a, b, c), header["level"][1])
    table = {}
    for key, (value, lineno) in records.items():
        table[_ideal(F, key, lineno)] = value
    one = FracIdeal.unit(F)
    if one not in table:
        raise IngestError("no record for the unit ideal <1,0,1>")
    if not values_equal(table[one], 1, 0):
        raise IngestError(f"line {records[one.hnf][1]}: A(O_F) must be 1")
    growth_c = (k0 - 1) / 2 + 0.5
    seq = sequence_from_table(F, k0, table, growth_c, provenance="ingested",
                              weight=weight, level=level)
    if header.get("euler", ("0",))[0] == "1":
        bad = multiplicativity_violations(seq)
        if bad:
            I, J = bad[0]
            raise IngestError(f"A is not multiplicative: A({I}{J}) != A({I})A({J})")
    return seq


def _ideal(F: Field, key, lineno: int) -> FracIdeal:
    a, b, c = key
    if a <= 0 or c <= 0 or not 0 <= b < a:
        raise IngestError(f"line {lineno}: {key} is not a canonical HNF triple")
    try:
        return FracIdeal.from_hnf(F, a, b, c)
    except HMFError as exc:
        raise IngestError(f"line {lineno}: {exc}") from None


def multiplicativity_violations(seq: CoefficientSequence, limit: int = 400, tol: float = 1e-9):
    """Coprime pairs (I, J) with IJ stored and A(IJ) != A(I) A(J)."""
    ideals = sorted(seq.table, key=lambda I: (I.norm(), I.hnf))
    small = [I for I in ideals if 1 < I.norm() and 2 * I.norm() <= seq.cutoff]
    bad, checked = [], 0
    for I, J in combinations(small, 2):
        nI, nJ = int(I.norm()), int(J.norm())
        if nI * nJ > seq.cutoff or math.gcd(nI, nJ) != 1:
            continue
        K = I * J
        if K not in seq.table:
            continue
        if not values_equal(seq.table[K], seq.table[I] * seq.table[J], tol):
            bad.append((I, J))
        checked += 1
        if checked >= limit:
            break
    return bad


def _format_decimal(x) -> str:
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return mpmath.nstr(mpmath.mpf(x.numerator) / x.denominator, 30)
    if isinstance(x, int):
        return str(x)
    return mpmath.nstr(x, 30)


def write_coefficients(seq: CoefficientSequence, path, comment: str | None = None,
                       euler: bool = True) -> None:
    F = seq.F
    weight = seq.weight or (seq.k0, seq.k0)
    level = seq.level or FracIdeal.unit(F)
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines += [f"schema={SCHEMA_VERSION}", f"field D={F.D}", f"weight k={weight[0]},{weight[1]}",
              "level hnf={},{},{}".format(*level.hnf), f"k0={seq.k0}"]
    if euler:
        lines.append("euler=1")
    for I in sorted(seq.table, key=lambda I: (I.norm(), I.hnf)):
        v = seq.table[I]
        if isinstance(v, (int, Fraction)):
            re_s, im_s = _format_decimal(Fraction(v)), "0"
        else:
            v = mpmath.mpc(v)
            re_s, im_s = _format_decimal(v.real), _format_decimal(v.imag)
        lines.append("ideal <{},{},{}> A={},{}".format(*I.hnf, re_s, im_s))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
