import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hmfconverse.errors import IncompleteFactorization, InvalidArgument
from hmfconverse.ideals import (FracIdeal, factor_small, ideal_algebra, ideals_up_to,
                                narrow_class_group, primes_above, totally_positive_generator)
from hmfconverse.numfield import Field


def random_ideal(F, rng):
    gens = [F(rng.randint(-9, 9), rng.randint(-9, 9)) for _ in range(2)]
    gens = [g for g in gens if not g.is_zero()] or [F.one]
    I = FracIdeal.from_generators(F, gens)
    return I / rng.randint(1, 4)


def test_sqrt5_squared(Q5):
    s = FracIdeal.principal(Q5.sqrtD)
    assert s * s == FracIdeal.principal(Q5(5))


def test_inverse_different(Q5):
    dinv = Q5.different.inverse()
    phi = Q5(0, 1)
    assert dinv.contains(phi / Q5.sqrtD)
    assert dinv.norm() == Fraction(1, 5)


def test_inverse_identity(Q5, Q3):
    rng = random.Random(3)
    for F in (Q5, Q3):
        for _ in range(50):
            I = random_ideal(F, rng)
            assert I * I.inverse() == FracIdeal.unit(F)


def test_canonical_hnf_invariants(Q5, Q3):
    rng = random.Random(4)
    for F in (Q5, Q3):
        for _ in range(40):
            I = random_ideal(F, rng)
            a, b, c = I.hnf
            assert a % c == 0 and b % c == 0 and 0 <= b < a
            # closed under multiplication by omega
            num = FracIdeal(F, a, b, c)
            assert num.contains(F(a) * F.omega) and num.contains(F(b, c) * F.omega)
            assert I.norm() == Fraction(a * c, I.den ** 2)


def test_zero_ideal_rejected(Q5):
    with pytest.raises(InvalidArgument):
        FracIdeal.principal(Q5.zero)


def test_ideal_algebra_kinds(Q5):
    I = FracIdeal.principal(Q5(2, 1))
    J = FracIdeal.principal(Q5(3))
    assert ideal_algebra(I, J, "product") == I * J
    assert ideal_algebra(I, kind="norm") == 5
    assert ideal_algebra(I, I * J, "divides")
    assert not ideal_algebra(J, I, "divides")
    assert ideal_algebra(I, kind="contains_element", x=Q5(2, 1) * 7)


def test_factor_11_split(Q5):
    fac = factor_small(FracIdeal.principal(Q5(11)))
    assert len(fac) == 2
    assert all(P.norm == 11 and P.e == 1 and P.f == 1 and e == 1 for P, e in fac)
    # 5 is a square mod 11
    assert pow(5, 5, 11) == 1
    assert fac[0][0].ideal * fac[1][0].ideal == FracIdeal.principal(Q5(11))


def test_factor_sqrt5_ramified(Q5):
    fac = factor_small(FracIdeal.principal(Q5.sqrtD))
    assert len(fac) == 1
    P, e = fac[0]
    assert P.e == 2 and e == 1 and P.ideal ** 2 == FracIdeal.principal(Q5(5))


def test_factor_unit_ideal(Q5):
    assert factor_small(FracIdeal.unit(Q5)) == []


def test_factor_bound(Q5):
    with pytest.raises(IncompleteFactorization):
        factor_small(FracIdeal.principal(Q5(31)), norm_bound=30)


def test_factorization_reconstructs(Q5, Q3):
    rng = random.Random(5)
    for F in (Q5, Q3):
        for _ in range(40):
            I = random_ideal(F, rng)
            prod = FracIdeal.unit(F)
            for P, e in factor_small(I):
                prod = prod * P.ideal ** e
            assert prod == I


def test_class_numbers(Q5, Q3):
    assert narrow_class_group(Q5).h == 1
    G = narrow_class_group(Q3)
    assert G.h == 2 and G.wide_h == 1
    assert all(int(T.norm()) in (11, 13) for T in G.reps)


def test_class_number_oracle_q3(Q3):
    # 2 + sqrt3 has norm +1, so no unit has norm -1 and (sqrt3) is not narrowly principal
    assert all(u.norm() == 1 for u in (Q3.fundamental_unit, Q3.eps1))
    s = FracIdeal.principal(Q3.sqrtD)
    assert totally_positive_generator(s) is None


def test_pairing_level_one(Q5):
    G = narrow_class_group(Q5)
    assert G.pairing == [0] and G.q == [Q5.one]


def test_pairing_generators_q3(Q3):
    level = primes_above(Q3, 2)[0].ideal
    G = narrow_class_group(Q3, level)
    for lam, T in enumerate(G.reps):
        q = G.q[lam]
        assert q.is_totally_positive()
        assert FracIdeal.principal(q) == T * G.reps[G.pairing[lam]] * level


def test_totally_positive_generator_examples(Q5):
    assert totally_positive_generator(FracIdeal.principal(Q5(5))) == Q5(5)
    g = totally_positive_generator(Q5.different.inverse())
    assert g == Q5(0, 1) / Q5.sqrtD and g.trace() == 1
    g = totally_positive_generator(FracIdeal.principal(Q5.sqrtD))
    assert g.is_totally_positive() and FracIdeal.principal(g) == FracIdeal.principal(Q5.sqrtD)


@pytest.mark.parametrize("D", [5, 3])
def test_every_ideal_has_one_class(D):
    F = Field(D)
    G = narrow_class_group(F)
    for I, _ in ideals_up_to(F, 100):
        hits = [lam for lam, T in enumerate(G.reps)
                if totally_positive_generator(I / T) is not None]
        assert len(hits) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_norm_multiplicative(seed):
    F = Field(3 if seed % 2 else 5)
    rng = random.Random(seed)
    I, J = random_ideal(F, rng), random_ideal(F, rng)
    assert (I * J).norm() == I.norm() * J.norm()
