import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from hmfconverse.congruence import (GroupSpec, build_sij, classify_det, coset_chain,
                                    coset_index, check_distinct_cosets, gamma_p_alpha,
                                    membership, normalize_coset_rep, pair_beta,
                                    primesum_harness, primesum_sample_points,
                                    random_gamma0_word, random_gamma1_word,
                                    random_sgamma1_word, reduce_to_sgamma0, reduce_to_sgamma1,
                                    residue_map, small_residue_system)
from hmfconverse.errors import CosetCoverError, InvalidArgument
from hmfconverse.forms import Matrix2, T_matrix, build_candidate
from hmfconverse.ideals import FracIdeal, narrow_class_group, primes_above, totally_positive_generator
from hmfconverse.ingest import ingest_coefficients
from hmfconverse.numfield import Field
from hmfconverse.primes import degree_one_prime, degree_one_primes

DATA = Path(__file__).parent / "data"
F5 = Field(5)
F3 = Field(3)


def setup(F):
    if F.D == 5:
        return primes_above(F, 11)[0].ideal, primes_above(F, 2)[0].ideal
    G = narrow_class_group(F)
    return G.reps[-1], primes_above(F, 2)[0].ideal


def test_classify_det():
    assert classify_det(F5.zero) == "singular"
    assert classify_det(F5(2)) == "non-unit"
    assert classify_det(F5.eps1) == "totally positive unit"
    assert classify_det(-F5.one) == "unit"


def test_membership_examples():
    one = FracIdeal.unit(F5)
    m = FracIdeal.principal(F5.sqrtD)
    g = Matrix2.of(F5, 1, 0, F5.sqrtD, 1)
    assert membership(g, GroupSpec("SGamma1", one, m))
    bad = Matrix2.of(F5, 1, 0, 1, 1)
    res = membership(bad, GroupSpec("SGamma1", one, m))
    assert not res and "c in m" in res.failed
    unit_det = Matrix2.of(F5, -1, 0, 0, 1)
    assert membership(unit_det, GroupSpec("Gamma0", one, m))
    assert not membership(unit_det, GroupSpec("Gamma0+", one, m))


def test_group_spec_rejects_unknown_kind():
    with pytest.raises(InvalidArgument):
        GroupSpec("Gamma2", FracIdeal.unit(F5), FracIdeal.unit(F5))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([5, 3]))
def test_gamma1_reduction(seed, D):
    F = F5 if D == 5 else F3
    t, m = setup(F)
    rng = random.Random(seed)
    g = random_gamma1_word(t, m, rng)
    assert membership(g, GroupSpec("Gamma1", t, t * m))
    eps, n, cert = reduce_to_sgamma1(g, t, m)
    h = Matrix2(eps.inverse(), F.zero, F.zero, F.one) * g
    red = h * T_matrix(h.b * n)
    assert red == cert["reduced"]
    assert membership(red, GroupSpec("SGamma1", FracIdeal.unit(F), t * m))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([5, 3]))
def test_gamma0_reduction(seed, D):
    F = F5 if D == 5 else F3
    t, m = setup(F)
    rng = random.Random(seed)
    g = random_gamma0_word(t, m, rng)
    eps, l, n, cert = reduce_to_sgamma0(g, t, m)
    h = Matrix2(eps.inverse(), F.zero, F.zero, F.one) * g
    if l is not None:
        h = T_matrix(l) * h
    red = h * T_matrix(h.b * n)
    assert red == cert["reduced"]
    assert membership(red, GroupSpec("SGamma0", FracIdeal.unit(F), t * m))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_sgamma1_words_closed(seed):
    m = FracIdeal.principal(F5.sqrtD * 2)
    g = random_sgamma1_word(m, random.Random(seed))
    assert membership(g, GroupSpec("SGamma1", FracIdeal.unit(F5), m))


def test_reduction_rejects_outsiders():
    t, m = setup(F5)
    with pytest.raises(InvalidArgument):
        reduce_to_sgamma1(Matrix2.of(F5, 1, 0, 1, 1), t, m)


@settings(max_examples=60, deadline=None)
@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_residue_map_is_ring_hom(a, b, c, d):
    p = degree_one_prime(F5(3, 2))
    phi = residue_map(p)
    x, y = F5(a, b), F5(c, d)
    assert phi(x + y) == (phi(x) + phi(y)) % 11
    assert phi(x * y) == (phi(x) * phi(y)) % 11
    assert (phi(x) == 0) == p.ideal.contains(x)


def test_small_residue_system_complete():
    for p in degree_one_primes(F5, 60):
        if p.q == 5:
            continue
        reps = small_residue_system(p)
        phi = residue_map(p)
        assert sorted(phi(x) for x in reps) == list(range(p.q))


def test_gamma_p_alpha_det_one():
    p = degree_one_prime(F5(3, 2))
    reps = small_residue_system(p)
    phi = residue_map(p)
    nonzero = [x for x in reps if phi(x)]
    q = F5.one
    for a in nonzero:
        b = pair_beta(a, nonzero, p, q)
        g = gamma_p_alpha(p, a, b, q)
        assert g.det() == F5.one and all(x.is_integral() for x in g.entries())


def test_primesum_exact_parts():
    G = narrow_class_group(F5)
    for p in degree_one_primes(F5, 60):
        if p.q == 5:
            continue
        r = primesum_harness(None, G, 0, p)
        assert r.pairing_ok and r.det_ok and r.in_sgamma0


def test_primesum_level_one_weight_six():
    seq = ingest_coefficients(DATA / "q5_level1_weight6.txt", field=F5)
    G = narrow_class_group(F5)
    f = build_candidate(seq, G, 0, (6, 6))
    p = degree_one_prime(F5(3, 2))
    pts = primesum_sample_points(G, 0, p)
    r = primesum_harness([f], G, 0, p, sample_z=pts)
    assert r.samples == len(pts)
    assert r.residual < 1e-5 and r.residual_tail < 1e-5
    assert r.residual < 1e-6 * r.scale


def test_coset_normalization_and_cover():
    sq = F5.sqrtD
    H = GroupSpec("SGamma1", FracIdeal.unit(F5), FracIdeal.principal(sq))
    g = normalize_coset_rep(Matrix2.of(F5, 0, -1, 1, 0), H)
    assert not g.a.is_zero() and not g.c.is_zero()
    g = normalize_coset_rep(Matrix2.of(F5, 1, 1, 0, 1), H)
    assert not g.c.is_zero()
    gammas = [Matrix2.of(F5, 1, 0, sq, 1), Matrix2(F5(3), sq, sq, F5(2))]
    check_distinct_cosets(gammas, H)
    with pytest.raises(InvalidArgument):
        check_distinct_cosets([gammas[0], gammas[0]], H)
    with pytest.raises(CosetCoverError):
        coset_index(Matrix2(F5(2), sq, sq, F5(3)), gammas, H)


def test_coset_chain_nonzero_det():
    sq = F5.sqrtD
    H = GroupSpec("SGamma1", FracIdeal.unit(F5), FracIdeal.principal(sq))
    gammas = [Matrix2.of(F5, 1, 0, sq, 1), Matrix2(F5(3), sq, sq, F5(2)),
              Matrix2(F5(2), sq, sq, F5(3)), Matrix2(F5(4), sq * 3, sq, F5(4))]
    q = totally_positive_generator(FracIdeal.principal(sq))
    xi = totally_positive_generator(F5.different.inverse())
    res = coset_chain(gammas, H, q, xi)
    assert [p.q for p in res["primes"]] == [11, 19, 29, 31]
    s = res["s"]
    for j, p in enumerate(res["primes"]):
        assert sorted(a for i in range(4) for a in s[i][j]) == list(range(1, p.q))
    assert res["det"]["status"] == "nonzero" and res["det"]["violations"] == []
    again = build_sij(res["gammas"], H, res["primes"], res["alphas"], q)
    assert again == s
