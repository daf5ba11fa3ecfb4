from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from hmfconverse.errors import InvalidField
from hmfconverse.ideals import FracIdeal
from hmfconverse.numfield import Field, create_field, element_data, log_embedding_matrix

coord = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def test_q5_constants(Q5):
    assert Q5.discriminant == 5
    assert Q5.omega * Q5.omega == Q5.omega + 1
    assert Q5.different == FracIdeal.principal(Q5.sqrtD)
    assert Q5.different.norm() == 5


def test_different_is_trace_dual(Q5, Q3):
    # brute force: x with denominator <= 12 lies in d^-1 iff tr(x) and tr(x w) are integers
    for F in (Q5, Q3):
        dinv = F.different.inverse()
        assert F.different.is_integral() and F.different.norm() == abs(F.discriminant)
        for den in range(1, 13):
            for a in range(-12, 13):
                for b in range(-12, 13):
                    x = F(Fraction(a, den), Fraction(b, den))
                    dual = (x.trace().denominator == 1 and (x * F.omega).trace().denominator == 1)
                    assert dinv.contains(x) == dual


def test_eps1_q5(Q5):
    phi = Q5(0, 1)
    assert phi.norm() == -1
    assert Q5.eps1 == Q5.from_sqrt(Fraction(3, 2), Fraction(1, 2))
    assert Q5.eps1 == phi * phi


def test_eps1_is_smallest_totally_positive_unit(Q5, Q3):
    for F in (Q5, Q3):
        e = F.eps1
        assert e.norm() == 1 and e.is_totally_positive()
        e1 = float(e.embed(64)[0])
        # every unit x + y w with |coords| <= 40 that is totally positive and > 1
        for x in range(-40, 41):
            for y in range(-40, 41):
                u = F(x, y)
                if u.is_unit() and u.is_totally_positive() and u != F.one:
                    assert float(u.embed(64)[0]) >= e1 - 1e-9 or float(u.embed(64)[0]) < 1


def test_invalid_fields():
    for D in (12, 1, 0, -5, 4):
        with pytest.raises(InvalidField):
            create_field(D)


def test_element_data_examples(Q5):
    s5 = Q5.sqrtD
    tr, nm, _, tp = element_data(s5)
    assert (tr, nm, tp) == (0, -5, False)
    tr, nm, _, tp = element_data(Q5.from_sqrt(Fraction(3, 2), Fraction(1, 2)))
    assert (tr, nm, tp) == (3, 1, True)
    tr, nm, _, tp = element_data(Q5.from_sqrt(4, 1))
    assert nm == 11 and tp


def test_delta_values(Q5, Q3):
    _, delta = log_embedding_matrix(Q5, 128)
    with mpmath.workprec(128):
        assert abs(delta + 2 * mpmath.acosh(mpmath.mpf(3) / 2)) < mpmath.mpf(2) ** -120
        assert abs(delta - mpmath.mpf("-1.9248473002384139")) < 1e-15
    _, delta3 = log_embedding_matrix(Q3, 128)
    with mpmath.workprec(128):
        assert abs(delta3 + 2 * mpmath.log(2 + mpmath.sqrt(3))) < mpmath.mpf(2) ** -120


def test_delta_is_twice_regulator(Q5, Q3):
    for F in (Q5, Q3):
        m, delta = log_embedding_matrix(F, 96)
        with mpmath.workprec(96):
            assert abs(m[0][0] * m[1][1] - m[0][1] * m[1][0] - delta) < 1e-25
            assert abs(abs(delta) - 2 * mpmath.log(F.eps1.embed(96)[0])) < 1e-25


def test_eps1_norm_exact(Q5, Q3):
    for F in (Q5, Q3):
        e = F.eps1
        assert e * e.conj() == F.one


@settings(max_examples=150, deadline=None)
@given(coord, coord, coord, coord)
def test_trace_additive_norm_multiplicative(a, b, c, d):
    F = Field(5)
    x, y = F(a, b), F(c, d)
    assert (x + y).trace() == x.trace() + y.trace()
    assert (x * y).norm() == x.norm() * y.norm()


@settings(max_examples=100, deadline=None)
@given(coord, coord)
def test_total_positivity_matches_embeddings(a, b):
    F = Field(3)
    x = F(a, b)
    e1, e2 = x.embed(200)
    if min(abs(e1), abs(e2)) > 1e-40:
        assert x.is_totally_positive() == (e1 > 0 and e2 > 0)


@settings(max_examples=60, deadline=None)
@given(coord, coord, st.sampled_from([64, 128]))
def test_embedding_error(a, b, p):
    F = Field(5)
    x = F(a, b)
    lo, hi = x.embed(p), x.embed(2 * p)
    with mpmath.workprec(2 * p):
        for u, v in zip(lo, hi):
            assert abs(u - v) <= mpmath.mpf(2) ** (1 - p) * abs(v)
