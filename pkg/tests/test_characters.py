import itertools
import random

import mpmath
import pytest

from hmfconverse.characters import (build_psi_family, check_character, cyclic_basis,
                                    evaluate_psi, evaluate_psi_factored, group_characters,
                                    indicator_decomposition, power_minus_nu,
                                    reconstruct_indicator)
from hmfconverse.cyclotomic import CycloElement
from hmfconverse.ideals import FracIdeal, factor_small, ideals_up_to, narrow_class_group


def product_table(*orders):
    elems = list(itertools.product(*[range(n) for n in orders]))
    index = {e: i for i, e in enumerate(elems)}
    return [[index[tuple((a + b) % n for a, b, n in zip(x, y, orders))] for y in elems]
            for x in elems]


@pytest.mark.parametrize("orders", [(1,), (2,), (6,), (2, 2), (2, 4), (3, 3)])
def test_characters_of_synthetic_groups(orders):
    table = product_table(*orders)
    h = len(table)
    chars = group_characters(table)
    assert len(chars) == h and chars[0].is_trivial()
    assert all(check_character(table, chi) for chi in chars)
    assert len({chi.values for chi in chars}) == h
    # column orthogonality
    for x in range(h):
        total = sum(complex(chi.value(x)) for chi in chars)
        assert abs(total - (h if x == 0 else 0)) < 1e-9


def test_cyclic_basis_is_bijective():
    table = product_table(2, 4)
    gens, orders, coords = cyclic_basis(table)
    assert sorted(orders) == [2, 4] and len(coords) == 8


@pytest.mark.parametrize("orders", [(2,), (6,), (2, 2), (2, 4)])
def test_indicator_decomposition_exact(orders):
    table = product_table(*orders)
    h = len(table)
    for C in range(h):
        dec = indicator_decomposition(table, C, twist_class=(C + 1) % h)
        M = dec["modulus"]
        for x in range(h):
            assert reconstruct_indicator(dec, x) == CycloElement.rational(M, int(x == C))
            expect = int(x == dec["twisted_target"])
            assert reconstruct_indicator(dec, x, twisted=True) == CycloElement.rational(M, expect)


def test_q3_class_characters(Q3):
    G = narrow_class_group(Q3)
    chars = group_characters(G.table)
    assert [chi.values[1] for chi in chars] == [0, 0.5]


@pytest.mark.parametrize("D,m", [(5, 1), (5, 3), (3, 1), (3, 2)])
def test_psi_properties(D, m):
    from hmfconverse.numfield import Field
    F = Field(D, 96)
    psi = build_psi_family(F, m, prec=96)
    r1, r2 = psi.linear_residuals()
    assert r1 < 1e-25 and r2 < 1e-25
    ideals = [I for I, _ in ideals_up_to(F, 60) if not I.is_unit_ideal()]
    rng = random.Random(D * 10 + m)
    with mpmath.workprec(96):
        assert abs(evaluate_psi(psi, FracIdeal.unit(F)) - 1) < 1e-25
        for I in ideals:
            v = evaluate_psi(psi, I)
            assert abs(abs(v) - 1) < 1e-25
            assert abs(evaluate_psi_factored(psi, factor_small(I)) - v) < 1e-25
        for _ in range(30):
            I, J = rng.choice(ideals), rng.choice(ideals)
            assert abs(evaluate_psi(psi, I * J) - evaluate_psi(psi, I) * evaluate_psi(psi, J)) < 1e-24
        # unit invariance and the value on narrowly principal ideals
        assert abs(power_minus_nu(F.eps1, psi.nu, 96) - 1) < 1e-25
        xi = F(7, 3) * F(7, 3)
        assert abs(evaluate_psi(psi, FracIdeal.principal(xi)) - power_minus_nu(xi, psi.nu, 96)) < 1e-25


def test_psi_trivial_at_m_zero(Q5):
    psi = build_psi_family(Q5, 0)
    for I, _ in ideals_up_to(Q5, 30):
        assert abs(evaluate_psi(psi, I) - 1) < 1e-30


@pytest.mark.parametrize("D", [5, 3])
def test_nu_residuals_small_m(D):
    from hmfconverse.numfield import Field
    F = Field(D, 128)
    for m in range(-10, 11):
        r1, r2 = build_psi_family(F, m, prec=128).linear_residuals()
        assert r1 < 1e-35 and r2 < 1e-33


def test_psi_unit_invariance(Q5):
    psi = build_psi_family(Q5, 2)
    rng = random.Random(9)
    count = 0
    with mpmath.workprec(psi.prec):
        while count < 50:
            xi = Q5(rng.randint(1, 40), rng.randint(-20, 20))
            if not xi.is_totally_positive():
                continue
            count += 1
            base = power_minus_nu(xi, psi.nu, psi.prec)
            for k in range(-3, 4):
                v = power_minus_nu(Q5.eps1 ** k * xi, psi.nu, psi.prec)
                assert abs(v - base) < 1e-30


def test_twisted_indicator_q3(Q3):
    G = narrow_class_group(Q3)
    d2 = G.class_index(Q3.different ** 2)
    for C in range(G.h):
        dec = indicator_decomposition(G.table, C, twist_class=d2)
        target = dec["twisted_target"]
        for x in range(G.h):
            v = reconstruct_indicator(dec, x, twisted=True)
            assert v.rational_value() == (1 if x == target else 0)
