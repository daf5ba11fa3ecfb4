"""Congruence subgroups: membership, reductions to SL2 subgroups, and the
coset classification feeding the exponential-sum determinant."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from sympy import primerange

from .cyclotomic import nonzerodet_check
from .errors import (BoundExhausted, CosetCoverError, DomainError, AccuracyNotMet,
                     InvalidArgument)
from .forms import (GroupRingElement, Matrix2, T_matrix, evaluator,
                    slash_apply)
from .ideals import FracIdeal, NarrowClassData, generators, primes_above
from .numfield import Field, FieldElement
from .primes import DegreeOnePrime, PrimeConstraints, _as_prime, progression_prime_search

KINDS = ("SGamma0", "SGamma1", "Gamma0", "Gamma1", "Gamma0+", "Gamma1+")


@dataclass(frozen=True)
class GroupSpec:
    """kind in KINDS; the SL2 kinds use only m."""
    kind: str
    t: FracIdeal
    m: FracIdeal

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidArgument(f"unknown group kind {self.kind!r}")

    @property
    def F(self) -> Field:
        return self.m.F


@dataclass
class Membership:
    ok: bool
    failed: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def classify_det(det: FieldElement) -> str:
    if det.is_zero():
        return "singular"
    if not det.is_unit():
        return "non-unit"
    return "totally positive unit" if det.is_totally_positive() else "unit"


def membership(gamma: Matrix2, spec: GroupSpec) -> Membership:
    a, b, c, d = gamma.entries()
    F = spec.F
    one = FracIdeal.unit(F)
    failed = []
    det = gamma.det()
    if spec.kind.startswith("S"):
        m = spec.m
        for name, x in (("a", a), ("b", b), ("c", c), ("d", d)):
            if not x.is_integral():
                failed.append(f"{name} in O")
        if not m.contains(c):
            failed.append("c in m")
        if spec.kind == "SGamma1":
            if not m.contains(d - 1):
                failed.append("d-1 in m")
            if not m.contains(a - 1):
                failed.append("a-1 in m")
        if det != F.one:
            failed.append("det = 1")
        return Membership(not failed, failed)
    t, m = spec.t, spec.m
    if not a.is_integral():
        failed.append("a in O")
    if not t.inverse().contains(b):
        failed.append("b in t^-1")
    if not (t * m).contains(c):
        failed.append("c in tm")
    if spec.kind.startswith("Gamma1"):
        if not m.contains(d - 1):
            failed.append("d-1 in m")
    elif not one.contains(d):
        failed.append("d in O")
    cls = classify_det(det)
    if spec.kind.endswith("+"):
        if cls != "totally positive unit":
            failed.append("det totally positive unit")
    elif cls not in ("unit", "totally positive unit"):
        failed.append("det unit")
    return Membership(not failed, failed)


def _diag(F: Field, x: FieldElement, y: FieldElement) -> Matrix2:
    return Matrix2(x, F.zero, F.zero, y)


def _find_n(a: FieldElement, t: FracIdeal) -> FieldElement:
    for n in t.residues():
        if t.contains(a * n + 1):
            return n
    raise InvalidArgument(f"(a)={a} is not coprime to t")


def reduce_to_sgamma1(gamma: Matrix2, t: FracIdeal, m: FracIdeal):
    """For gamma in Gamma1(t, tm): (eps, n, certificate) with
    diag(eps^-1, 1) gamma T^(b n) in SGamma1(tm)."""
    F = t.F
    tm = t * m
    if not membership(gamma, GroupSpec("Gamma1", t, tm)):
        raise InvalidArgument("gamma is not in Gamma1(t, tm)")
    eps = gamma.det()
    g1 = _diag(F, eps.inverse(), F.one) * gamma
    n = _find_n(g1.a, t)
    reduced = g1 * T_matrix(g1.b * n)
    check = membership(reduced, GroupSpec("SGamma1", FracIdeal.unit(F), tm))
    if not check:
        raise AssertionError(f"reduction failed: {check.failed}")
    return eps, n, {"reduced": reduced, "membership": check}


def auxiliary_prime(t: FracIdeal, bound: int = 2000):
    """(q, l) with q != t prime and (l) t = q, scanning primes by norm."""
    F = t.F
    for p in primerange(2, bound + 1):
        for P in primes_above(F, p):
            if P.ideal == t:
                continue
            gens = generators(P.ideal / t)
            if gens:
                l = min(gens, key=lambda z: (abs(z.trace()), z.x, z.y))
                return P.ideal, l
    raise BoundExhausted(f"no prime equivalent to {t} with norm below {bound}")


def reduce_to_sgamma0(gamma: Matrix2, t: FracIdeal, m: FracIdeal, bound: int = 2000):
    """For gamma in Gamma0(t, m) with t prime: (eps, l or None, n, certificate)
    with T^l diag(eps^-1, 1) gamma T^(b' n) in SGamma0(tm)."""
    F = t.F
    if not membership(gamma, GroupSpec("Gamma0", t, m)):
        raise InvalidArgument("gamma is not in Gamma0(t, m)")
    eps = gamma.det()
    g1 = _diag(F, eps.inverse(), F.one) * gamma
    l = None
    if t.contains(g1.a):
        q, l = auxiliary_prime(t, bound)
        g1 = T_matrix(l) * g1
        if t.contains(g1.a):
            raise AssertionError("a + c l is still in t")
    n = _find_n(g1.a, t)
    reduced = g1 * T_matrix(g1.b * n)
    check = membership(reduced, GroupSpec("SGamma0", FracIdeal.unit(F), t * m))
    if not check:
        raise AssertionError(f"reduction failed: {check.failed}")
    return eps, l, n, {"reduced": reduced, "membership": check}


# -- random generator words ---------------------------------------------------------

def random_element(I: FracIdeal, rng: random.Random, size: int = 3) -> FieldElement:
    v1, v2 = I.basis()
    while True:
        x = v1 * rng.randint(-size, size) + v2 * rng.randint(-size, size)
        if not x.is_zero():
            return x


def _unit_powers(F: Field, totally_positive: bool):
    u = F.eps1 if totally_positive else F.fundamental_unit
    return [u ** k for k in (-1, 1)] + ([] if totally_positive else [-F.one])


def random_gamma1_word(t: FracIdeal, m: FracIdeal, rng: random.Random, length: int = 6,
                       plus: bool = True) -> Matrix2:
    """A product of T^b (b in t^-1), A_c (c in t^2 m) and E_eps: an element
    of Gamma1(t, tm)."""
    F = t.F
    tinv, c_ideal = t.inverse(), t * t * m
    units = _unit_powers(F, plus)
    g = Matrix2.of(F, 1, 0, 0, 1)
    for _ in range(length):
        kind = rng.randrange(3)
        if kind == 0:
            g = g * T_matrix(random_element(tinv, rng))
        elif kind == 1:
            g = g * Matrix2(F.one, F.zero, random_element(c_ideal, rng, 1), F.one)
        else:
            g = g * _diag(F, rng.choice(units), F.one)
    return g


def random_gamma0_word(t: FracIdeal, m: FracIdeal, rng: random.Random, length: int = 6,
                       plus: bool = True) -> Matrix2:
    """As random_gamma1_word, plus diag(1, eps) and A_c with c in tm: an
    element of Gamma0(t, m)."""
    F = t.F
    tinv, tm = t.inverse(), t * m
    units = _unit_powers(F, plus)
    g = Matrix2.of(F, 1, 0, 0, 1)
    for _ in range(length):
        kind = rng.randrange(4)
        if kind == 0:
            g = g * T_matrix(random_element(tinv, rng))
        elif kind == 1:
            g = g * Matrix2(F.one, F.zero, random_element(tm, rng, 1), F.one)
        elif kind == 2:
            g = g * _diag(F, rng.choice(units), F.one)
        else:
            g = g * _diag(F, F.one, rng.choice(units))
    return g


def random_sgamma1_word(m: FracIdeal, rng: random.Random, length: int = 6) -> Matrix2:
    """Product of T^b (b in O) and A_c (c in m)."""
    F = m.F
    O = FracIdeal.unit(F)
    g = Matrix2.of(F, 1, 0, 0, 1)
    for _ in range(length):
        if rng.randrange(2):
            g = g * T_matrix(random_element(O, rng))
        else:
            g = g * Matrix2(F.one, F.zero, random_element(m, rng, 1), F.one)
    return g


# -- the prime-sum identity ----------------------------------------------------------

def residue_map(p: DegreeOnePrime):
    """The isomorphism O/(p) -> Z/N(p) sending omega to its residue."""
    a, b, c = p.ideal.hnf
    q = p.q
    if a != q or c != 1:
        raise AssertionError("unexpected HNF for a degree-one prime")
    r = (-b) % q

    def phi(x: FieldElement) -> int:
        if not x.is_integral():
            raise InvalidArgument(f"{x} is not integral")
        return (int(x.x) + int(x.y) * r) % q
    return phi


def small_residue_system(p) -> list:
    """Representatives of O/(p) with small embeddings, 0 first."""
    P = _as_prime(p)
    F = P.F
    phi = residue_map(P)
    best = {}
    R = 1
    while len(best) < P.q:
        for x in range(-R * 3, R * 3 + 1):
            for y in range(-R, R + 1):
                z = FieldElement(F, x, y)
                e1, e2 = z.embed_float()
                size = (max(abs(e1), abs(e2)), abs(x) + abs(y), x, y)
                k = phi(z)
                if k not in best or size < best[k][0]:
                    best[k] = (size, z)
        R *= 2
    return [best[k][1] for k in sorted(best, key=lambda k: best[k][0])]


def pair_beta(alpha: FieldElement, reps_nonzero, p: DegreeOnePrime, q_lam: FieldElement):
    """The unique beta in reps with p | alpha beta q + 1."""
    phi = residue_map(p)
    hits = [b for b in reps_nonzero if phi(alpha * b * q_lam + 1) == 0]
    if len(hits) != 1:
        raise InvalidArgument(f"expected one partner for {alpha}, found {len(hits)}")
    return hits[0]


def gamma_p_alpha(p: DegreeOnePrime, alpha: FieldElement, beta: FieldElement,
                  q_lam: FieldElement) -> Matrix2:
    """gamma_{p,-alpha} = (p, -alpha; -beta q, (alpha beta q + 1)/p)."""
    return Matrix2(p.p, -alpha, -beta * q_lam, (alpha * beta * q_lam + 1) / p.p)


@dataclass
class PrimeSumReport:
    pairing_ok: bool
    det_ok: bool
    in_sgamma0: bool
    residual: float | None = None
    residual_tail: float | None = None
    scale: float | None = None
    samples: int = 0
    skipped: int = 0
    matrices: list = field(default_factory=list)


def primesum_harness(f_tuple, group: NarrowClassData, lam: int, p, sample_z=(),
                     reps=None, target_err: float | None = None) -> PrimeSumReport:
    """(i) the beta pairing, (ii) det gamma_{p,-alpha} = 1 with integral entries,
    (iii) sum_alpha f|(gamma_{p,-alpha} - 1) T^(alpha/p) at sample points."""
    P = _as_prime(p)
    F = P.F
    q_lam = group.q[lam]
    if P.ideal.divides(FracIdeal.principal(q_lam)):
        raise InvalidArgument("p divides q_lambda")
    reps = small_residue_system(P) if reps is None else list(reps)
    phi = residue_map(P)
    if sorted(phi(x) for x in reps) != list(range(P.q)):
        raise InvalidArgument("reps is not a residue system modulo (p)")
    nonzero = [x for x in reps if phi(x) != 0]
    betas = [pair_beta(a, nonzero, P, q_lam) for a in nonzero]
    pairing_ok = len({phi(b) for b in betas}) == len(nonzero)
    mats = [gamma_p_alpha(P, a, b, q_lam) for a, b in zip(nonzero, betas)]
    det_ok = all(g.det() == F.one and all(x.is_integral() for x in g.entries())
                 for g in mats)
    t = group.reps[lam]
    spec = GroupSpec("SGamma0", FracIdeal.unit(F), t * group.level)
    in_sg0 = all(membership(g, spec).ok for g in mats)
    report = PrimeSumReport(pairing_ok, det_ok, in_sg0, matrices=mats)
    if not sample_z:
        return report
    f = f_tuple[lam]
    op = GroupRingElement([])
    for a, g in zip(nonzero, mats):
        Ta = T_matrix(a / P.p)
        op = op + GroupRingElement([(1, g * Ta), (-1, Ta)])
    ev = evaluator(f, target_err)
    worst, tail, scale = 0.0, 0.0, 0.0
    for z in sample_z:
        try:
            val, err = slash_apply(ev, op, f.weight, z, f.prec)
            ref, _ = ev(z)
        except (DomainError, AccuracyNotMet):
            report.skipped += 1
            continue
        worst = max(worst, float(abs(val)))
        tail = max(tail, err)
        scale = max(scale, float(abs(ref)))
        report.samples += 1
    if report.samples == 0:
        raise DomainError("no sample point is evaluable for every gamma_{p,-alpha}")
    report.residual, report.residual_tail, report.scale = worst, tail, scale
    return report


def primesum_sample_points(group: NarrowClassData, lam: int, p, reps=None, count: int = 3,
                           xs=None, ys=(0.2, 0.3, 0.4, 0.5, 0.6, 0.8, 1.0)):
    """Grid points z maximizing the smallest imaginary part over all the
    images gamma T^(alpha/p) z and T^(alpha/p) z that the harness evaluates."""
    P = _as_prime(p)
    report = primesum_harness(None, group, lam, P, reps=reps)
    reps = small_residue_system(P) if reps is None else list(reps)
    phi = residue_map(P)
    nonzero = [x for x in reps if phi(x) != 0]
    mats = []
    for a, g in zip(nonzero, report.matrices):
        Ta = T_matrix(a / P.p)
        mats += [(g * Ta).embed(j, 53) for j in range(2)] + [Ta.embed(j, 53) for j in range(2)]
    xs = xs or [i / 10 for i in range(-5, 6)]

    def worst(z):
        m = math.inf
        for k, ent in enumerate(mats):
            a, b, c, d = (complex(e) for e in ent)
            zj = z[k % 2]
            m = min(m, ((a * zj + b) / (c * zj + d)).imag)
        return m
    scored = []
    for x1 in xs:
        for x2 in xs:
            for y in ys:
                z = (complex(x1, y), complex(x2, y))
                scored.append((-worst(z), x1, x2, y, z))
    scored.sort(key=lambda t: t[:4])
    return [t[4] for t in scored[:count]]


def normalize_coset_rep(g: Matrix2, H: GroupSpec) -> Matrix2:
    """Left-multiply by T^1 or A_beta (both in H) so that a and c are nonzero."""
    F = H.F
    if g.a.is_zero():
        g = T_matrix(F.one) * g
    if g.c.is_zero():
        beta = H.m.basis()[0]
        g = Matrix2(F.one, F.zero, beta, F.one) * g
    return g


# -- coset classification -----------------------------------------------------------------

def check_distinct_cosets(gammas, H: GroupSpec):
    for i in range(len(gammas)):
        for j in range(i):
            if membership(gammas[i] * gammas[j].inverse(), H):
                raise InvalidArgument(f"coset representatives {j} and {i} coincide")


def coset_index(g: Matrix2, gammas, H: GroupSpec) -> int:
    for i, gi in enumerate(gammas):
        if membership(g * gi.inverse(), H):
            return i
    raise CosetCoverError(f"{g} lies in none of the given cosets")


def build_sij(gammas, H: GroupSpec, primes, alphas, q_lam: FieldElement):
    """s[i][j] = {a in 1..q_j-1 : gamma_{p_j, -a alpha_j} in H gamma_i}."""
    check_distinct_cosets(gammas, H)
    u = len(gammas)
    if len(primes) != u or len(alphas) != u:
        raise InvalidArgument("need one prime and one alpha per coset")
    s = [[[] for _ in range(u)] for _ in range(u)]
    for j, (p, alpha) in enumerate(zip(primes, alphas)):
        P = _as_prime(p)
        phi = residue_map(P)
        if phi(alpha) == 0:
            raise InvalidArgument(f"p_{j} divides alpha_{j}")
        reps = [alpha * a for a in range(1, P.q)]
        for a in range(1, P.q):
            al = alpha * a
            beta = pair_beta(al, reps, P, q_lam)
            g = gamma_p_alpha(P, al, beta, q_lam)
            s[coset_index(g, gammas, H)][j].append(a)
    return s


def coset_chain(gammas, H: GroupSpec, q_lam: FieldElement, xi: FieldElement, m: int = 1,
                level: FracIdeal | None = None, norm_bound: int = 10 ** 5):
    """From coset reps to the determinant: choose p_j = a_j + r_j c_j by the
    progression search with the side conditions, alpha_j = -b_j - r_j d_j,
    n_j = tr(xi alpha_j q_j / p_j), classify, and test det(S_ij)."""
    level = level or H.m
    primes, alphas, ns = [], [], []
    used = ()
    gammas = [normalize_coset_rep(g, H) for g in gammas]
    for g in gammas:
        cons = PrimeConstraints(m, q_lam, level, xi, avoid_norms=used)
        p = progression_prime_search(g.a, g.c, 1, norm_bound, constraints=cons)[0]
        r = (p.p - g.a) / g.c
        alpha = -g.b - r * g.d
        primes.append(p)
        alphas.append(alpha)
        used = used + (p.q,)
        n = (xi * alpha * p.q / p.p).trace()
        if n.denominator != 1:
            raise AssertionError("n_j should be an integer")
        ns.append(int(n))
    s = build_sij(gammas, H, primes, alphas, q_lam)
    qs = [p.q for p in primes]
    result = nonzerodet_check(qs, [m] * len(qs), ns, s)
    return {"gammas": gammas, "primes": primes, "alphas": alphas, "n": ns, "s": s, "det": result}
