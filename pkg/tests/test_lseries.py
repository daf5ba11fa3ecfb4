import random
from fractions import Fraction

import mpmath
import pytest
from sympy import factorint, jacobi_symbol, kronecker_symbol, primerange

from hmfconverse.basechange import CURVE_11A, base_change_sequence
from hmfconverse.characters import group_characters
from hmfconverse.errors import ConvergenceRefused, IncompleteData, PoleError
from hmfconverse.ideals import FracIdeal, ideals_up_to, narrow_class_group, prime_ideals_up_to
from hmfconverse.lseries import (complete_l, hecke_prime_powers, inject_fault, inverse_series,
                                 partial_l_sum, recursion_equivalence_check,
                                 sequence_from_euler, sequence_from_table)
from hmfconverse.primes import degree_one_prime


def test_prime_powers_match_inverse_series():
    for a, q, k0 in ((3, 11, 2), (-7, 19, 4), (0, 29, 2)):
        c = q ** (k0 - 1)
        assert hecke_prime_powers(a, q, k0, 8) == inverse_series([1, -a, c], 8)


def unit_sequence(F, cutoff):
    table = {I: 1 for I, _ in ideals_up_to(F, cutoff)}
    return sequence_from_table(F, 1, table, growth_c=0.0, cutoff=cutoff)


@pytest.mark.parametrize("D,disc", [(5, 5), (3, 12)])
def test_dedekind_zeta_oracle(D, disc):
    from hmfconverse.numfield import Field
    F = Field(D)
    seq = unit_sequence(F, 400)
    s = 4
    got = partial_l_sum(seq, s=s, prec=80)
    chi = [int(kronecker_symbol(disc, n)) for n in range(disc)]
    with mpmath.workprec(80):
        ref = mpmath.zeta(s) * mpmath.dirichlet(s, chi)
    err = abs(got.value - ref)
    assert err <= got.tail
    assert err < 1e-6


def test_convergence_refused(Q5):
    seq = unit_sequence(Q5, 50)
    with pytest.raises(ConvergenceRefused):
        partial_l_sum(seq, s=1.1)


def test_class_restricted_sums(Q3):
    seq = unit_sequence(Q3, 300)
    G = narrow_class_group(Q3)
    with mpmath.workprec(128):
        total = partial_l_sum(seq, s=3).value
        parts = [partial_l_sum(seq, C=C, s=3, group=G).value for C in range(G.h)]
        assert abs(sum(parts) - total) < 1e-25
        # indicator of a class as an average of character twists
        chars = group_characters(G.table)
        for C in range(G.h):
            avg = sum(mpmath.conj(chi.value(C)) * partial_l_sum(seq, s=3, group=G, chi=chi).value
                      for chi in chars) / G.h
            assert abs(avg - parts[C]) < 1e-25


def legendre_trace(p):
    # (2y + 1)^2 = 4(x^3 - x^2 - 10x - 20) + 1 for y^2 + y = x^3 - x^2 - 10x - 20
    count = sum(1 + int(jacobi_symbol((4 * (x ** 3 - x * x - 10 * x - 20) + 1) % p, p))
                for x in range(p))
    return p - count


def rational_coefficients(N):
    a = {1: 1}
    ap = {2: -2}
    for p in primerange(3, N + 1):
        ap[p] = legendre_trace(p)
    for n in range(2, N + 1):
        v = 1
        for p, e in factorint(n).items():
            if p == 11:
                v *= ap[11] ** e
            else:
                prev, cur = 1, ap[p]
                for _ in range(e - 1):
                    prev, cur = cur, ap[p] * cur - p * prev
                v *= cur
        a[n] = v
    return a


def test_base_change_dirichlet_convolution(Q5):
    """sum_{N(a)=n} A(a) = sum_{d | n} a(d) chi(n/d) a(n/d)."""
    N = 300
    seq = base_change_sequence(Q5, CURVE_11A, 11, N)
    a = rational_coefficients(N)
    by_norm = {}
    for I, v in seq.table.items():
        by_norm[int(I.norm())] = by_norm.get(int(I.norm()), 0) + v
    for n in range(1, N + 1):
        ref = sum(a[d] * int(kronecker_symbol(5, n // d)) * a[n // d]
                  for d in range(1, n + 1) if n % d == 0)
        assert by_norm.get(n, 0) == ref, n


def test_base_change_level(Q5):
    seq = base_change_sequence(Q5, CURVE_11A, 11, 50)
    assert seq.level == FracIdeal.principal(Q5(11))


def test_recursion_detects_faults(Q5):
    rng = random.Random(2)
    local = {P.ideal: rng.randint(-5, 5) for P in prime_ideals_up_to(Q5, 300)}
    seq = sequence_from_euler(Q5, 2, local, {}, 300)
    p = degree_one_prime(Q5(3, 2))
    assert recursion_equivalence_check(seq, p).ok
    P2 = p.ideal ** 2
    bad = inject_fault(seq, P2, 1)
    rep = recursion_equivalence_check(bad, p)
    assert not rep.ok
    other = degree_one_prime(Q5(4, 1))  # norm 19
    bad2 = inject_fault(seq, other.ideal * p.ideal, 1)
    assert not recursion_equivalence_check(bad2, p).recursion_ok


def test_cutoff_enforced(Q5):
    seq = unit_sequence(Q5, 20)
    with pytest.raises(IncompleteData):
        seq.A(FracIdeal.principal(Q5(5)))


def test_complete_l_gamma_factor(Q5):
    seq = unit_sequence(Q5, 200)
    s = mpmath.mpf(3)
    out = complete_l(seq, s=s, weight=(2, 2), prec=80)
    with mpmath.workprec(80):
        ref = (2 * mpmath.pi) ** (-2 * s) * mpmath.mpf(25) ** (s / 2) * mpmath.gamma(s) ** 2
        assert abs(out.gamma_part - ref) < 1e-20
        assert abs(out.value - ref * out.dirichlet_part) < 1e-20


def test_complete_l_pole(Q5):
    seq = unit_sequence(Q5, 50)
    seq.growth_c = -5.0
    with pytest.raises(PoleError):
        complete_l(seq, s=1, weight=(2, 4))


def test_exact_coefficients_stay_exact(Q5):
    seq = sequence_from_euler(Q5, 2, {P.ideal: Fraction(1, 2) for P in prime_ideals_up_to(Q5, 60)},
                              {}, 60)
    assert all(isinstance(v, (int, Fraction)) for v in seq.table.values())


@pytest.mark.parametrize("D", [5, 3])
def test_partition_identity_random_s(D):
    from hmfconverse.numfield import Field
    from hmfconverse.characters import build_psi_family
    F = Field(D)
    G = narrow_class_group(F)
    rng = random.Random(D)
    local = {P.ideal: rng.randint(-3, 3) for P in prime_ideals_up_to(F, 200)}
    seq = sequence_from_euler(F, 2, local, {}, 200)
    psi = build_psi_family(F, 1, G)
    with mpmath.workprec(128):
        for _ in range(5):
            s = mpmath.mpc(rng.uniform(3.0, 6.0), rng.uniform(-5, 5))
            total = partial_l_sum(seq, psi=psi, s=s, group=G).value
            parts = sum(partial_l_sum(seq, C=C, psi=psi, s=s, group=G).value
                        for C in range(G.h))
            assert abs(total - parts) < 1e-30


@pytest.mark.parametrize("s", [3, 4, mpmath.mpc(3.5, 2)])
def test_tail_estimate_sound(Q5, s):
    rng = random.Random(1)
    local = {P.ideal: rng.randint(-3, 3) for P in prime_ideals_up_to(Q5, 600)}
    seq = sequence_from_euler(Q5, 2, local, {}, 600)
    short = partial_l_sum(seq, s=s, cutoff=300)
    full = partial_l_sum(seq, s=s, cutoff=600)
    assert abs(full.value - short.value) <= short.tail
