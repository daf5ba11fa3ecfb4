"""Verification suites shared by the command line driver and the tests.

Each suite returns a list of Check records; a suite passes when no check
has status "fail".
"""
from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field

import mpmath
from sympy import totient

from . import analytic, characters, congruence, cyclotomic, forms, lseries, primes
from .errors import AccuracyNotMet, DomainError, HMFError
from .ideals import FracIdeal, narrow_class_group, prime_ideals_up_to, primes_above
from .numfield import Field


@dataclass
class Check:
    name: str
    status: str
    residual: float | None = None
    tolerance: float | None = None
    tail: float | None = None
    detail: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _bounded(name, residual, tolerance, tail=None, **detail) -> Check:
    residual = float(residual)
    return Check(name, _status(residual < tolerance), residual, tolerance,
                 None if tail is None else float(tail), detail)


def _count(name, exceptions, **detail) -> Check:
    return Check(name, _status(exceptions == 0), float(exceptions), 0.0, None, detail)


@dataclass
class Config:
    field: int | None = None
    prec: int = 128
    bound: int | None = None
    tol: float | None = None
    seed: int = 0
    cutoff: int | None = None
    data: str | None = None
    fuzz: int = 200
    height: int = 20
    sign: int = 1

    def fields(self, default=(5, 3)):
        return [self.field] if self.field else list(default)


# -- residue systems and degree-one primes -------------------------------------------------------------------

def _test_ideals(F: Field):
    """O, the different, and the narrow class representatives."""
    out = [FracIdeal.unit(F), F.different]
    for T in narrow_class_group(F).reps:
        if T not in out:
            out.append(T)
    return out


def _height_box(I: FracIdeal, H: int):
    v1, v2 = I.basis()
    for x in range(-H, H + 1):
        for y in range(-H, H + 1):
            yield v1 * x + v2 * y


def appendix_checks(F: Field, bound: int = 50, height: int = 20):
    D = F.D
    ps = primes.degree_one_primes(F, bound)
    ts = _test_ideals(F)
    checks = []

    bad, n = 0, 0
    for p in ps:
        for alpha in (F.one, F.omega, F.one + F.omega):
            if p.ideal.contains(alpha):
                continue
            for t in [None] + ts:
                if t is not None and (t.norm().numerator * t.norm().denominator) % p.q == 0:
                    continue
                n += 1
                try:
                    out = primes.residue_representatives(p, alpha, t)
                    reps = out if t is None else out[0]
                    # independent oracle: the residues reduce to q distinct classes
                    if len({p.ideal.reduce(r) for r in reps}) != p.q:
                        bad += 1
                except HMFError:
                    bad += 1
    checks.append(_count(f"residue systems[D={D}]", bad, cases=n))

    bad, n = 0, 0
    for t in ts:
        tinv = t.inverse()
        pts = [x for x in _height_box(tinv, height)]
        for p in ps:
            if (t.norm().numerator * t.norm().denominator) % p.q == 0:
                continue
            for xi in pts:
                n += 1
                nn, eta = primes.xi_decompose(xi, p, t)
                ok = (xi == eta * p.p + nn and tinv.contains(eta) and 0 <= nn < p.q)
                bad += not ok
    checks.append(_count(f"xi decomposition[D={D}]", bad, cases=n))

    bad, n = 0, 0
    dinv = F.different.inverse()
    pts = list(_height_box(dinv, height))
    for p in ps:
        if F.discriminant % p.q == 0:
            continue
        for xi in pts:
            lhs, rhs = primes.np_divisibility_test(xi, p)
            n += 1
            bad += lhs != rhs
    checks.append(_count(f"divisibility equivalence[D={D}]", bad, cases=n))

    bad, n = 0, 0
    for p in ps:
        for t in ts:
            if (t.norm().numerator * t.norm().denominator) % p.q == 0:
                continue
            n += 1
            bad += not primes.local_quotient_check(p, t)
    checks.append(_count(f"local quotient[D={D}]", bad, cases=n))
    return checks


def density_checks(F: Field):
    _, _, r3 = primes.degree1_density_scan(F, 10 ** 3)
    d4, t4, r4 = primes.degree1_density_scan(F, 10 ** 4)
    return [
        Check(f"degree-one density[D={F.D}]", _status(r4 > 0.9), r4, 0.9, None,
              {"ratio_1e3": r3, "ratio_1e4": r4, "degree_one": d4, "total": t4}),
        Check(f"degree-one monotone[D={F.D}]", _status(r4 >= r3 - 0.02), r3 - r4, 0.02, None, {}),
    ]


def suite_appendix(cfg: Config):
    out = []
    for D in cfg.fields():
        F = Field(D, cfg.prec)
        out += appendix_checks(F, cfg.bound or 50, cfg.height)
        out += density_checks(F)
    return out


# -- analytic identities ----------------------------------------------------------------

def class_decomposition_checks(F: Field, prec: int, seed: int, s=4, cutoff: int = 120):
    """Indicator reconstruction (exact) and L(s,C,psi) = sum alpha_chi L(s,A,psi chi)."""
    G = narrow_class_group(F)
    h = len(G.table)
    bad = 0
    for C in range(h):
        dec = characters.indicator_decomposition(G.table, C, twist_class=0)
        for x in range(h):
            v = characters.reconstruct_indicator(dec, x)
            bad += v.rational_value() != (1 if x == C else 0)
    out = [_count(f"indicator-reconstruction[D={F.D}]", bad, h=h)]
    seq = random_euler_sequence(F, 2, cutoff, random.Random(seed))
    psi = characters.build_psi_family(F, 1, G, prec)
    worst = 0.0
    with mpmath.workprec(prec):
        for C in range(h):
            lhs = lseries.partial_l_sum(seq, C, psi, s, group=G, prec=prec).value
            dec = characters.indicator_decomposition(G.table, C)
            rhs = mpmath.mpc(0)
            for a, chi in zip(dec["alpha"], dec["characters"]):
                L = lseries.partial_l_sum(seq, None, psi, s, group=G, chi=chi, prec=prec).value
                rhs += mpmath.mpc(a.to_complex()) * L
            worst = max(worst, float(abs(lhs - rhs)))
    out.append(_bounded(f"character-decomposition[D={F.D}]", worst, 1e-10, s=s))
    return out


def suite_analytic(cfg: Config):
    D = cfg.field or 5
    F = Field(D, cfg.prec)
    out = []
    lhs = {}
    for a in ((1, 1), (2, 3), (3, 2)):
        r = analytic.gamma_mellin_identity_check(F, a, prec=cfg.prec)
        lhs[a] = r.lhs
        if a != (3, 2):
            out.append(_bounded(f"mellin a={a}", r.abs_diff, cfg.tol or 1e-8,
                                r.lhs_error + r.rhs_error))
    with mpmath.workprec(cfg.prec):
        out.append(_bounded("mellin swap symmetry", abs(lhs[(2, 3)] - lhs[(3, 2)]), 1e-8))
    sh = analytic.gamma_shift_check(F, 1, prec=cfg.prec)
    out.append(_bounded("phase identity m=1", sh["phase_residual"], 1e-20))
    out.append(_bounded("shifted mellin m=1", sh["abs_diff"], cfg.tol or 1e-8))
    from .ideals import totally_positive_generator
    beta = totally_positive_generator(F.different.inverse())
    r = analytic.phibeta_identity_check(F, beta, (0, 0), (1, 1), 6, 4, prec=cfg.prec)
    out.append(_bounded("poisson identity y=(1,1)", r.abs_diff, 1e-4, r.lhs_error + r.rhs_error,
                        beta=str(beta)))
    out += class_decomposition_checks(Field(3, cfg.prec), cfg.prec, cfg.seed)
    return out


# -- Hecke operators ---------------------------------------------------------------------

def random_euler_sequence(F: Field, k0: int, cutoff: int, rng: random.Random, weight=None):
    """Unramified Euler data with random integer A(p) in the Ramanujan range."""
    local = {}
    for P in prime_ideals_up_to(F, cutoff):
        bound = int(2 * P.norm ** ((k0 - 1) / 2))
        local[P.ideal] = rng.randint(-bound, bound)
    return lseries.sequence_from_euler(F, k0, local, {}, cutoff,
                                       weight=weight or (k0, k0), level=FracIdeal.unit(F))


def default_hecke_prime(F: Field):
    if F.D == 5:
        return primes.degree_one_prime(F.from_sqrt(4, 1))
    for p in primes.degree_one_primes(F, 200):
        if F.discriminant % p.q:
            return p
    raise DomainError("no degree-one prime found")


def hecke_triad(F: Field, seq, p, G):
    """(eigen, recursion, local factor) pass flags for one sequence."""
    f = forms.build_candidate(seq, G, 0, seq.weight)
    reps = primes.residue_representatives(p, F.one)
    eig = forms.hecke_eigen_check(f, p, reps)
    rec = lseries.recursion_equivalence_check(seq, p, J=10)
    return eig.ok, rec.recursion_ok, rec.local_factor_ok


def hecke_checks(F: Field, seed: int, cutoff: int = 150, count: int = 20, faults: int = 5):
    rng = random.Random(seed)
    G = narrow_class_group(F)
    p = default_hecke_prime(F)
    weights = [(2, 2), (4, 4), (4, 2)]
    valid_bad, fault_bad = [], []
    for i in range(count):
        w = weights[i % len(weights)]
        seq = random_euler_sequence(F, max(w), cutoff, rng, w)
        res = hecke_triad(F, seq, p, G)
        if not all(res):
            valid_bad.append((i, res))
    for i in range(faults):
        w = weights[i % len(weights)]
        seq = random_euler_sequence(F, max(w), cutoff, rng, w)
        bad = lseries.inject_fault(seq, p.ideal ** 2, 1 + i)
        res = hecke_triad(F, bad, p, G)
        if any(res):
            fault_bad.append((i, res))
    out = [
        _count(f"hecke triad valid[D={F.D}]", len(valid_bad), sequences=count,
               failures=[str(x) for x in valid_bad]),
        _count(f"hecke triad faults[D={F.D}]", len(fault_bad), sequences=faults,
               undetected=[str(x) for x in fault_bad]),
    ]
    seq = random_euler_sequence(F, 2, max(cutoff, 600), rng)
    f = forms.build_candidate(seq, G, 0, (2, 2))
    std = primes.residue_representatives(p, F.one)
    alt = congruence.small_residue_system(p)
    a = forms.hecke_infinity_apply(f, p, std).coeffs
    b = forms.hecke_infinity_apply(f, p, alt).coeffs
    diff = sum(1 for k in set(a) | set(b) if a.get(k) != b.get(k))
    out.append(_count(f"residue-system independence p={p.p}", diff, coefficients=len(a)))
    out.append(_count(f"character sum p={p.p}",
                      len(forms.off_lattice_sums_vanish(f, p, std)), xis=len(f.coeffs)))
    img = forms.hecke_infinity_apply(f, p, std)
    worst, tail = 0.0, 0.0
    for z in ((complex(0.1, 1.5), complex(0.3, 1.4)), (complex(-0.2, 1.2), complex(0.05, 1.6)),
              (complex(0.35, 1.8), complex(-0.4, 1.3))):
        v, e = forms.hecke_infinity_apply(f, p, std, "pointwise", z)
        w = forms.evaluate_hecke_image(img, z)
        worst = max(worst, float(abs(v - w.value)))
        tail = max(tail, e + w.tail)
    out.append(Check("hecke coefficient vs pointwise", _status(worst <= 2 * tail + 1e-12),
                     worst, 2 * tail, tail, {}))
    return out


def suite_hecke(cfg: Config):
    F = Field(cfg.field or 5, cfg.prec)
    return hecke_checks(F, cfg.seed, cfg.cutoff or 150)


# -- slash action, invariance and the Fricke involution ---------------------------------------

def _small_matrices(F: Field, rng: random.Random):
    u = F.eps1
    gens = [forms.T_matrix(F(rng.randint(-2, 2), rng.randint(-2, 2))),
            forms.E_matrix(u), forms.E_matrix(u.inverse()),
            forms.A_matrix(F(rng.choice([-1, 1]), 0)),
            forms.Matrix2(F(2), F(1), F(1), F(1))]
    g = gens[rng.randrange(len(gens))]
    for _ in range(rng.randint(0, 1)):
        g = g * gens[rng.randrange(len(gens))]
    return g


def _min_image_height(gamma: forms.Matrix2, z):
    worst = math.inf
    for j in range(2):
        a, b, c, d = (complex(x) for x in gamma.embed(j, 53))
        worst = min(worst, ((a * z[j] + b) / (c * z[j] + d)).imag)
    return worst


def cocycle_checks(f, rng: random.Random, count: int = 20):
    F = f.F
    ev = forms.evaluator(f)
    worst_ratio, done, worst, tails = 0.0, 0, 0.0, 0.0
    attempts = 0
    while done < count and attempts < 50 * count:
        attempts += 1
        g1, g2 = _small_matrices(F, rng), _small_matrices(F, rng)
        z = (complex(rng.uniform(-0.5, 0.5), rng.uniform(1.0, 1.6)),
             complex(rng.uniform(-0.5, 0.5), rng.uniform(1.0, 1.6)))
        if min(_min_image_height(g2, z), _min_image_height(g1 * g2, z)) < 0.45:
            continue
        try:
            inner = lambda w: forms.slash_apply(ev, g1, f.weight, w, f.prec)  # noqa: E731
            lhs, e1 = forms.slash_apply(inner, g2, f.weight, z, f.prec)
            rhs, e2 = forms.slash_apply(ev, g1 * g2, f.weight, z, f.prec)
        except (DomainError, AccuracyNotMet):
            continue
        r = float(abs(lhs - rhs))
        worst, tails = max(worst, r), max(tails, e1 + e2)
        worst_ratio = max(worst_ratio, r / (e1 + e2))
        done += 1
    ok = done == count and worst_ratio < 1
    return Check("slash cocycle", _status(ok), worst, tails, tails,
                 {"pairs": done, "max_residual_over_tail": worst_ratio})


def fricke_conjugation_check(F: Field, rng: random.Random):
    bad = 0
    for _ in range(20):
        q = F(rng.randint(1, 30), rng.randint(0, 5))
        while not q.is_totally_positive():
            q = q + 7
        beta = F(rng.randint(-9, 9), rng.randint(-9, 9))
        g = forms.fricke_conjugate(beta, q)
        bad += g != forms.Matrix2(F.one, F.zero, beta, F.one)
    return _count("A_beta = W^-1 T^(-beta/q) W", bad, cases=20)


def invariance_checks(f):
    F = f.F
    zs = [(complex(0.1, 0.8), complex(-0.2, 0.9)), (complex(0.3, 1.1), complex(0.25, 0.7))]
    out = []
    alpha = f.t.inverse().basis()[1] * 3 + f.t.inverse().basis()[0]
    r = forms.invariance_residual(f, forms.T_matrix(alpha), zs)
    out.append(Check("T^alpha invariance", _status(bool(r.exact) and r.within_tails),
                     r.max_residual, 2 * r.max_tail, r.max_tail, {"alpha": str(alpha)}))
    r = forms.invariance_residual(f, forms.E_matrix(F.eps1), zs)
    out.append(Check("E_eps invariance", _status(bool(r.exact) and r.within_tails),
                     r.max_residual, 2 * r.max_tail, r.max_tail, {}))
    half = F.one / 2
    r = forms.invariance_residual(f, forms.T_matrix(half), zs)
    out.append(Check("T^alpha negative control", _status(r.exact is False and
                                                         r.max_residual > 100 * r.max_tail),
                     r.max_residual, 100 * r.max_tail, r.max_tail, {"alpha": "1/2"}))
    return out


def random_control(seq, rng: random.Random):
    """Same support and rough size as seq, random values."""
    table = {}
    for I, v in seq.table.items():
        if I.norm() == 1:
            table[I] = v
        else:
            scale = max(1, int(float(I.norm()) ** ((seq.k0 - 1) / 2)))
            table[I] = rng.randint(-2 * scale, 2 * scale)
    return lseries.sequence_from_table(seq.F, seq.k0, table, seq.growth_c, "explicit",
                                       seq.cutoff, seq.weight, seq.level)


def data_checks(cfg: Config, seq, rng: random.Random):
    F = seq.F
    out = []
    G = narrow_class_group(F, level=seq.level)
    n = len(seq.table)
    out.append(Check("coefficient count", "pass" if n >= 300 else "skipped", float(n), 300.0,
                     None, {"k0": seq.k0}))
    fs = [forms.build_candidate(seq, G, lam, seq.weight) for lam in range(G.h)]
    tol = cfg.tol or 1e-6
    worst, tail, samples = 0.0, 0.0, 0
    for lam in range(G.h):
        r = forms.fricke_residual(fs, G, lam, cfg.sign)
        worst, tail = max(worst, r.max_residual), max(tail, r.max_tail)
        samples += r.samples
    out.append(_bounded("fricke residual", worst, tol, tail, sign=cfg.sign,
                        q=[str(q) for q in G.q], samples=samples))
    ctrl = random_control(seq, rng)
    cs = [forms.build_candidate(ctrl, G, lam, seq.weight) for lam in range(G.h)]
    cworst = max(forms.fricke_residual(cs, G, lam, cfg.sign).max_residual for lam in range(G.h))
    ratio = cworst / max(worst, 1e-300)
    out.append(Check("fricke negative control", _status(ratio >= 1e4), ratio, 1e4, None,
                     {"control_residual": cworst}))
    out.append(primesum_check(fs, G, seq))
    return out


def primesum_check(fs, G, seq, tol: float = 1e-5) -> Check:
    F = seq.F
    bad = FracIdeal.principal(G.q[0] * F.discriminant) * seq.level
    p = next(p for p in primes.degree_one_primes(F, 500) if not p.ideal.divides(bad))
    pts = congruence.primesum_sample_points(G, 0, p)
    try:
        rep = congruence.primesum_harness(fs, G, 0, p, pts)
    except DomainError as exc:
        return Check("primesum residual", "skipped", None, tol, None, {"reason": str(exc)})
    exact_ok = rep.pairing_ok and rep.det_ok and rep.in_sgamma0
    if rep.samples < len(pts) or rep.residual_tail > tol:
        return Check("primesum residual", "skipped", rep.residual, tol, rep.residual_tail,
                     {"reason": "tail estimate above tolerance: the images of the sample "
                                "points need more coefficients than the data holds",
                      "samples": rep.samples, "exact_parts_ok": exact_ok})
    ok = exact_ok and rep.residual < tol
    return Check("primesum residual", _status(ok), rep.residual, tol, rep.residual_tail,
                 {"p": str(p.p), "scale": rep.scale, "samples": rep.samples})


def suite_fricke(cfg: Config):
    rng = random.Random(cfg.seed)
    F = Field(cfg.field or 5, cfg.prec)
    out = [fricke_conjugation_check(F, rng)]
    seq = random_euler_sequence(F, 2, cfg.cutoff or 300, rng)
    f = forms.build_candidate(seq, narrow_class_group(F), 0, (2, 2))
    out.append(cocycle_checks(f, rng))
    out += invariance_checks(f)
    if not cfg.data:
        for name in ("fricke residual", "fricke negative control", "primesum residual"):
            out.append(Check(name, "skipped", detail={"reason": "no --data file given"}))
        return out
    from .ingest import ingest_coefficients
    data = ingest_coefficients(cfg.data, prec=cfg.prec)
    return out + data_checks(cfg, data, rng)


# -- exponential sums -------------------------------------------------------------------

def suite_nonzerodet(cfg: Config):
    rng = random.Random(cfg.seed)
    out = []
    zeros, degree_bad, norm_bad, viol = 0, 0, 0, 0
    for _ in range(cfg.fuzz):
        qs, ms, ns, s = cyclotomic.random_valid_instance(rng)
        res = cyclotomic.nonzerodet_check(qs, ms, ns, s)
        viol += bool(res["violations"])
        zeros += res["status"] != "nonzero"
        degree_bad += int(totient(ms[0] * qs[0])) < qs[0] - 1
        L = res["modulus"]
        for j in range(len(qs)):
            m2, n2 = cyclotomic.normalize_pair(ms[j], ns[j])
            for i in range(len(qs)):
                a = cyclotomic.exponential_sum(qs[j], ms[j], ns[j], s[i][j], L)
                L2 = L * m2 * qs[j] // math.gcd(L, m2 * qs[j])
                b = cyclotomic.exponential_sum(qs[j], m2, n2, s[i][j], L2)
                norm_bad += a.embed(L2) != b
    out.append(Check("fuzz determinants nonzero", _status(zeros == 0 and viol == 0),
                     float(zeros), 0.0, None, {"instances": cfg.fuzz, "hypothesis_violations": viol}))
    out.append(_count("degree bound", degree_bad))
    out.append(_count("gcd normalization", norm_bad))
    r = cyclotomic.nonzerodet_check([5, 7], [1, 1], [1, 1], [[[1], [2]], [[1], [2]]])
    out.append(Check("equal rows", _status(r["status"] == "zero" and "overlapping sets in a column" in r["violations"]),
                     None, None, None, {"violations": r["violations"]}))
    r1 = cyclotomic.nonzerodet_check([2], [1], [1], [[[1]]])
    r2 = cyclotomic.nonzerodet_check([3], [1], [1], [[[1, 2]]])
    ok = r1["det"].rational_value() == -1 and r2["det"].rational_value() == -1
    out.append(Check("small determinants", _status(ok)))
    return out


# -- congruence subgroups -----------------------------------------------------------------

def congruence_setup(F: Field):
    """(t, m) per field: t a degree-one prime, m a small prime."""
    if F.D == 5:
        return primes_above(F, 11)[0].ideal, primes_above(F, 2)[0].ideal
    G = narrow_class_group(F)
    t = G.reps[-1] if G.h > 1 else primes_above(F, 11)[0].ideal
    small = [P for p in (2, 3, 5, 7) for P in primes_above(F, p) if P.ideal != t]
    return t, small[0].ideal


def congruence_checks(F: Field, rng: random.Random, count: int = 200):
    t, m = congruence_setup(F)
    D = F.D
    one = FracIdeal.unit(F)
    out = []
    bad = 0
    for _ in range(count):
        g = congruence.random_gamma1_word(t, m, rng)
        try:
            eps, n, cert = congruence.reduce_to_sgamma1(g, t, m)
            h = forms.Matrix2(eps.inverse(), F.zero, F.zero, F.one) * g
            red = h * forms.T_matrix(h.b * n)
            ok = red == cert["reduced"] and congruence.membership(
                red, congruence.GroupSpec("SGamma1", one, t * m)).ok
        except (HMFError, AssertionError):
            ok = False
        bad += not ok
    out.append(_count(f"gamma1 certificates[D={D}]", bad, words=count, t=str(t), m=str(m)))
    bad = 0
    for _ in range(count):
        g = congruence.random_gamma0_word(t, m, rng)
        try:
            eps, l, n, cert = congruence.reduce_to_sgamma0(g, t, m)
            h = forms.Matrix2(eps.inverse(), F.zero, F.zero, F.one) * g
            if l is not None:
                h = forms.T_matrix(l) * h
            red = h * forms.T_matrix(h.b * n)
            ok = red == cert["reduced"] and congruence.membership(
                red, congruence.GroupSpec("SGamma0", one, t * m)).ok
        except (HMFError, AssertionError):
            ok = False
        bad += not ok
    out.append(_count(f"gamma0 certificates[D={D}]", bad, words=count))
    bad = 0
    spec = congruence.GroupSpec("SGamma1", one, t * m)
    for _ in range(count):
        bad += not congruence.membership(congruence.random_sgamma1_word(t * m, rng), spec).ok
    out.append(_count(f"SGamma1 word closure[D={D}]", bad, words=count))
    return out


def sij_chain_check(F: Field, m: int = 1):
    sq = F.sqrtD
    H = congruence.GroupSpec("SGamma1", FracIdeal.unit(F), FracIdeal.principal(sq))
    gammas = [forms.Matrix2.of(F, 1, 0, sq, 1), forms.Matrix2(F(3), sq, sq, F(2)),
              forms.Matrix2(F(2), sq, sq, F(3)), forms.Matrix2(F(4), sq * 3, sq, F(4))]
    from .ideals import totally_positive_generator
    q = totally_positive_generator(FracIdeal.principal(sq))
    xi = totally_positive_generator(F.different.inverse())
    res = congruence.coset_chain(gammas, H, q, xi, m)
    s = res["s"]
    u = len(gammas)
    disjoint = all(not (set(s[i][j]) & set(s[k][j]))
                   for j in range(u) for i in range(u) for k in range(i))
    diag = all(1 in s[j][j] for j in range(u))
    ok = disjoint and diag and res["det"]["status"] == "nonzero" and not res["det"]["violations"]
    return Check("s_ij chain", _status(ok), None, None, None,
                 {"norms": [p.q for p in res["primes"]], "n": res["n"],
                  "violations": res["det"]["violations"]})


def suite_congruence(cfg: Config):
    rng = random.Random(cfg.seed)
    out = []
    for D in cfg.fields():
        F = Field(D, cfg.prec)
        out += congruence_checks(F, rng, cfg.fuzz)
    F = Field(5, cfg.prec)
    out.append(sij_chain_check(F))
    G = narrow_class_group(F)
    bad = 0
    for p in primes.degree_one_primes(F, 60):
        if F.discriminant % p.q == 0:
            continue
        r = congruence.primesum_harness(None, G, 0, p)
        bad += not (r.pairing_ok and r.det_ok and r.in_sgamma0)
    out.append(_count("primesum pairing and determinants", bad))
    return out


SUITES = {
    "appendix": suite_appendix,
    "analytic": suite_analytic,
    "hecke": suite_hecke,
    "fricke": suite_fricke,
    "nonzerodet": suite_nonzerodet,
    "congruence": suite_congruence,
}


def run_suite(name: str, cfg: Config):
    if name == "all":
        out = []
        for key in SUITES:
            out += [Check(f"{key}: {c.name}", c.status, c.residual, c.tolerance, c.tail,
                          c.detail) for c in SUITES[key](cfg)]
        return out
    return SUITES[name](cfg)
