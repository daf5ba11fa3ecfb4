import mpmath
import pytest

from hmfconverse.analytic import (shifted_mellin_check, gamma_mellin_identity_check,
                                  mellin_gamma_side, phase_residual, phibeta_identity_check,
                                  poisson_lhs, poisson_rhs_partial_sums)
from hmfconverse.errors import InvalidArgument
from hmfconverse.numfield import Field

PREC = 64


@pytest.fixture(scope="module")
def F5():
    return Field(5, PREC)


def bessel_oracle(a, b):
    """(1/2 pi i) int a1^(b1-s) a2^(b2-s) Gamma(s-b1) Gamma(s-b2) ds
    = a1^b1 a2^b2 * 2 x^(-(b1+b2)/2) K_{b1-b2}(2 sqrt x), x = a1 a2."""
    with mpmath.workprec(PREC):
        a1, a2 = map(mpmath.mpf, a)
        b1, b2 = map(mpmath.mpmathify, b)
        x = a1 * a2
        return (mpmath.power(a1, b1) * mpmath.power(a2, b2) * 2 * mpmath.power(x, -(b1 + b2) / 2)
                * mpmath.besselk(b1 - b2, 2 * mpmath.sqrt(x)))


@pytest.mark.parametrize("a,b", [((1, 1), (0, 0)), ((2, 3), (0, 0)),
                                 ((0.5, 4), (0.5, mpmath.mpc(0.25, 0.7)))])
def test_gamma_side_matches_bessel(F5, a, b):
    val, err = mellin_gamma_side(F5, a, b, sigma=2, prec=PREC)
    assert abs(val - bessel_oracle(a, b)) < 1e-13
    assert err < 1e-12


@pytest.mark.parametrize("a", [(1, 1), (2, 3), (0.3, 5)])
def test_mellin_identity(F5, a):
    res = gamma_mellin_identity_check(F5, a, prec=PREC)
    assert res.abs_diff < 1e-12


def test_mellin_identity_q3():
    F = Field(3, PREC)
    res = gamma_mellin_identity_check(F, (2, 3), prec=PREC)
    assert res.abs_diff < 1e-12


def test_mellin_rejects_bad_input(F5):
    with pytest.raises(InvalidArgument):
        gamma_mellin_identity_check(F5, (1, 1), b=(3, 0), sigma=2)
    with pytest.raises(InvalidArgument):
        gamma_mellin_identity_check(F5, (-1, 1))


@pytest.mark.parametrize("m", [0, 1, -2, 3])
def test_phase(F5, m):
    assert phase_residual(F5, m, [0.1, -0.7, 1.3, 2.9], PREC) < 1e-15


def test_shifted_mellin(F5):
    res = shifted_mellin_check(F5, 1, (0, 2), (1, 2), prec=PREC)
    assert res.abs_diff < 1e-12


def test_poisson_lhs_direct(F5):
    beta = F5(2, 1)
    y = (0.5, 0.8)
    total, tail = poisson_lhs(F5, beta, (0, 2), y, 6, PREC)
    e1, e2 = (float(v) for v in F5.eps1.embed(PREC))
    b1, b2 = (float(v) for v in beta.embed(PREC))
    ref = 0.0
    import math
    for k in range(-6, 7):
        x1, x2 = e1 ** k * b1, e2 ** k * b2
        ref += x2 ** -1 * math.exp(-2 * math.pi * (x1 * y[0] + x2 * y[1]))
    assert abs(float(total) - ref) < 1e-12 * max(1, abs(ref))


def test_poisson_identity(F5):
    res = phibeta_identity_check(F5, F5(2, 1), (0, 0), (0.6, 0.9), M_units=6, M_chars=4,
                                 prec=PREC)
    assert res.abs_diff < 1e-10


def test_poisson_partial_sums_converge(F5):
    diffs = poisson_rhs_partial_sums(F5, F5(1), (0, 2), (0.6, 0.9), 4, prec=PREC)
    assert diffs[-1] < diffs[0]
    assert diffs[-1] < 1e-8


def test_gamma_side_independent_of_sigma(F5):
    v1, e1 = mellin_gamma_side(F5, (2, 3), (0, 0), sigma=1.5, prec=PREC)
    v2, e2 = mellin_gamma_side(F5, (2, 3), (0, 0), sigma=3.0, prec=PREC)
    assert abs(v1 - v2) <= 10 * (e1 + e2) + 1e-15


@pytest.mark.parametrize("beta,y", [((2, 1), (0.6, 0.9)), ((0, 1), (1.0, 1.0)),
                                    ((3, 1), (0.8, 0.5))])
def test_poisson_partial_sums_envelope(F5, beta, y):
    b = F5(*beta)
    if beta == (0, 1):
        b = b / F5.sqrtD
    diffs = poisson_rhs_partial_sums(F5, b, (0, 0), y, 4, prec=PREC)
    # the error envelope shrinks as more characters are added
    envelope = [max(diffs[i:]) for i in range(len(diffs))]
    assert all(envelope[i + 1] <= envelope[i] for i in range(len(envelope) - 1))
    assert diffs[-1] < 1e-3 * max(diffs[0], 1e-30) or diffs[-1] < 1e-12


def test_delta_matches_log_matrix(F5):
    from hmfconverse.numfield import log_embedding_matrix, unit_log
    M, delta = log_embedding_matrix(F5, PREC)
    e1, e2 = F5.eps1.embed(PREC)
    with mpmath.workprec(PREC):
        assert abs(delta - (mpmath.log(e2) - mpmath.log(e1))) < 1e-17
        assert abs(abs(delta) - 2 * abs(unit_log(F5, PREC))) < 1e-17
