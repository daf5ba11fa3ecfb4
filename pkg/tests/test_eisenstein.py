from fractions import Fraction

import mpmath
import pytest
from sympy import kronecker_symbol

from hmfconverse.eisenstein import (EisensteinSeries, ProductSeries, dedekind_zeta_negative,
                                    divisor_power_sum, level_one_cusp_form_sequence)
from hmfconverse.errors import InvalidArgument
from hmfconverse.ideals import FracIdeal, factor_small, ideals_up_to
from hmfconverse.ingest import multiplicativity_violations
from hmfconverse.numfield import Field


@pytest.mark.parametrize("D,k,value", [(5, 2, Fraction(1, 30)), (2, 2, Fraction(1, 12)),
                                       (3, 2, Fraction(1, 6)), (5, 4, Fraction(1, 60))])
def test_known_zeta_values(D, k, value):
    assert dedekind_zeta_negative(Field(D), k) == value


@pytest.mark.parametrize("D", [5, 3, 13])
@pytest.mark.parametrize("k", [2, 4, 6])
def test_zeta_against_hurwitz(D, k):
    F = Field(D)
    f = F.discriminant
    chi = [int(kronecker_symbol(f, n)) for n in range(f)]
    with mpmath.workdps(30):
        ref = mpmath.zeta(1 - k) * mpmath.dirichlet(1 - k, chi)
        got = dedekind_zeta_negative(F, k)
        assert abs(mpmath.mpf(got.numerator) / got.denominator - ref) < mpmath.mpf(10) ** -25


def test_zeta_rejects_odd():
    with pytest.raises(InvalidArgument):
        dedekind_zeta_negative(Field(5), 3)


def test_divisor_power_sum_bruteforce(Q5):
    ideals = [I for I, _ in ideals_up_to(Q5, 60)]
    for I in ideals:
        ref = sum(int(J.norm()) ** 3 for J in ideals if J.divides(I))
        assert divisor_power_sum(I, 3) == ref


def test_product_constant_term(Q5):
    E2 = EisensteinSeries(Q5, 2)
    cube = ProductSeries(E2, ProductSeries(E2, E2))
    E6 = EisensteinSeries(Q5, 6)
    assert cube.coefficient(Q5.zero) == 1 == E6.coefficient(Q5.zero)


def test_cusp_form_is_hecke_eigenform(Q5):
    seq = level_one_cusp_form_sequence(Q5, 80)
    assert multiplicativity_violations(seq) == []
    assert all(v.denominator == 1 for v in seq.table.values())
    for I, v in seq.table.items():
        fac = factor_small(I)
        if len(fac) == 1 and fac[0][1] == 1:
            # Ramanujan bound at primes
            assert abs(v) <= 2 * float(I.norm()) ** 2.5
    assert seq.A(FracIdeal.principal(Q5(2))) == 20


def test_cusp_form_prime_square_recursion(Q5):
    seq = level_one_cusp_form_sequence(Q5, 130)
    for g in (Q5(2), Q5(3, 2)):
        P = FracIdeal.principal(g)
        assert seq.A(P * P) == seq.A(P) ** 2 - int(P.norm()) ** 5
