"""Fourier series candidates f_lambda, the slash action and residual checks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .cyclotomic import CycloElement
from .errors import (AccuracyNotMet, DomainError, IncompleteData, InvalidArgument,
                     InvalidMatrix)
from .ideals import (FracIdeal, NarrowClassData, ideals_up_to, lattice_points,
                     totally_positive_generator)
from .lseries import CoefficientSequence, is_exact, to_mpc
from .numfield import Field, FieldElement, embedding_power
from .primes import DegreeOnePrime, _as_prime

DEFAULT_EVAL_PREC = 64


@dataclass(frozen=True)
class WeightVector:
    k: tuple

    def __post_init__(self):
        if len(self.k) != 2 or any(kj <= 0 or kj % 2 for kj in self.k):
            raise InvalidArgument(f"weights must be positive even integers, got {self.k}")

    @property
    def k0(self) -> int:
        return max(self.k)

    @property
    def kprime(self):
        return tuple(self.k0 - kj for kj in self.k)

    @property
    def half_kprime(self):
        return tuple(kp // 2 for kp in self.kprime)


def _as_weight(w) -> WeightVector:
    return w if isinstance(w, WeightVector) else WeightVector(tuple(w))


# -- coefficient values: exact field elements or complex numbers ---------------

def _scale(mono: FieldElement, A, prec):
    """A * mono as an exact element when A is rational, else sigma_1 numerically."""
    if is_exact(A):
        return mono * A
    with mpmath.workprec(prec):
        return to_mpc(A) * mono.sigma(0, prec)


def coefficient_value(c, prec=DEFAULT_EVAL_PREC):
    """Numerical value of a coefficient (sigma_1 of exact field elements)."""
    if isinstance(c, FieldElement):
        return c.sigma(0, prec)
    if isinstance(c, (int, Fraction)):
        return to_mpc(c)
    return c


def coefficients_equal(u, v, tol=0.0, prec=DEFAULT_EVAL_PREC) -> bool:
    exact = (FieldElement, int, Fraction)
    if isinstance(u, exact) and isinstance(v, exact):
        return u == v if isinstance(u, FieldElement) else v == u
    with mpmath.workprec(prec):
        return abs(coefficient_value(u, prec) - coefficient_value(v, prec)) <= tol


# -- candidates ----------------------------------------------------------------

@dataclass
class FormCandidate:
    """f_lambda(z) = sum_xi a(xi) e(tr(xi z)) over totally positive xi in t d^-1,
    a(xi) = N(t)^(k0/2) A(xi t^-1 d) xi^(-k'/2)."""
    lam: int
    weight: WeightVector
    seq: CoefficientSequence
    group: NarrowClassData
    coeffs: dict = field(default_factory=dict)
    prec: int = DEFAULT_EVAL_PREC
    zero: bool = False
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def F(self) -> Field:
        return self.seq.F

    @property
    def t(self) -> FracIdeal:
        return self.group.reps[self.lam]

    @property
    def lattice(self) -> FracIdeal:
        return self.t * self.F.different.inverse()

    @property
    def cutoff(self) -> int:
        return self.seq.cutoff

    def ideal_of(self, xi: FieldElement) -> FracIdeal:
        return FracIdeal.principal(xi) * self.t.inverse() * self.F.different

    def norm_of(self, xi: FieldElement) -> Fraction:
        """N(xi t^-1 d) without building the ideal."""
        return xi.norm() * self.F.different.norm() / self.t.norm()

    def coefficient(self, xi: FieldElement):
        """a(xi); zero off the totally positive cone of the lattice."""
        key = (xi.x, xi.y)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if self.zero or not xi.is_totally_positive() or not self.lattice.contains(xi):
            val = 0
        else:
            A = self.seq.A(self.ideal_of(xi))
            if A == 0:
                val = 0
            else:
                mono = embedding_power(xi, tuple(-h for h in self.weight.half_kprime))
                k0 = self.weight.k0
                val = _scale(mono * Fraction(self.t.norm()) ** (k0 // 2), A, self.prec)
        self._cache[key] = val
        return val

    def magnitude_constant(self) -> float:
        """K with |a(xi)| <= K N(xi t^-1 d)^c over the stored orbit representatives."""
        K = self.seq.fitted_constant() * float(self.t.norm()) ** (self.weight.k0 / 2)
        c = self.seq.growth_c
        for xi, a in self.coeffs.items():
            v = float(abs(coefficient_value(a, self.prec)))
            K = max(K, v / float(self.norm_of(xi)) ** c)
        return K


def build_candidate(seq: CoefficientSequence, group: NarrowClassData, lam: int,
                    weight, cutoff: int | None = None, prec: int = DEFAULT_EVAL_PREC,
                    zero: bool = False) -> FormCandidate:
    weight = _as_weight(weight)
    if weight.k0 != seq.k0:
        raise InvalidArgument(f"weight {weight.k} does not match k0={seq.k0}")
    cutoff = seq.cutoff if cutoff is None else cutoff
    if cutoff > seq.cutoff:
        raise IncompleteData(f"cutoff {cutoff} exceeds the data cutoff {seq.cutoff}")
    f = FormCandidate(lam, weight, seq, group, prec=prec, zero=zero)
    F = seq.F
    target = group.class_index(f.t.inverse() * F.different)
    d_t = f.t * F.different.inverse()
    for I, fac in ideals_up_to(F, cutoff):
        if group.class_from_factorization(fac) != target:
            continue
        if I not in seq.table:
            raise IncompleteData(f"coefficient of {I} (norm {I.norm()}) is missing")
        xi = totally_positive_generator(I * d_t)
        if xi is None:
            raise AssertionError(f"{I} is not in the class of t^-1 d")
        f.coeffs[xi] = f.coefficient(xi)
    return f


# -- evaluation ------------------------------------------------------------------

def _lattice_covolume(L: FracIdeal) -> float:
    return math.sqrt(L.F.discriminant) * float(L.norm())


def _truncation_tail(K, c, y, nd_over_nt, covol, T) -> float:
    """Heuristic bound for the terms with tr(xi y) > T: the number of lattice
    points with tr(xi y) in [u, u+du] is about u du / (y1 y2 covol), and
    N(xi t^-1 d) <= (u^2 / 4 y1 y2) N(d)/N(t)."""
    y1, y2 = y
    with mpmath.workprec(53):
        def g(u):
            nm = u * u / (4 * y1 * y2) * nd_over_nt
            return K * mpmath.power(max(nm, 1), c) * (u / (y1 * y2 * covol) + 1) \
                * mpmath.exp(-2 * mpmath.pi * u)
        return float(mpmath.quad(g, [T, T + 1, T + 4, mpmath.inf]))


@dataclass
class Evaluation:
    value: object
    tail: float
    terms: int
    T: float


def _imag_parts(z):
    return [float(mpmath.im(zj)) for zj in z]


def evaluate_form(f: FormCandidate, z, target_err: float | None = None) -> Evaluation:
    """Truncated Fourier sum at z in H^2 with a tail estimate.

    Terms with tr(xi Im z) <= T are summed.  T is the largest value for
    which every such xi has N(xi t^-1 d) within the data cutoff, or the
    smallest value meeting target_err.
    """
    if f.zero or not f.coeffs:
        if min(_imag_parts(z)) <= 0:
            raise DomainError(f"{z} is not in the upper half plane")
        return Evaluation(mpmath.mpc(0), 0.0, 0, 0.0)
    nd_over_nt = float(f.F.different.norm() / f.t.norm())
    return evaluate_series(f.coefficient, f.lattice, z, f.cutoff, nd_over_nt,
                           f.magnitude_constant(), f.seq.growth_c, f.prec, target_err)


def evaluate_series(coefficient, L: FracIdeal, z, cutoff, nd_over_nt, K, c, prec,
                    target_err=None) -> Evaluation:
    """sum over totally positive xi in L of coefficient(xi) e(tr(xi z)), where
    coefficient(xi) is known while N(xi) nd_over_nt <= cutoff and is bounded
    by K (N(xi) nd_over_nt)^c."""
    y = _imag_parts(z)
    if min(y) <= 0:
        raise DomainError(f"{z} is not in the upper half plane")
    F = L.F
    T_max = 2 * math.sqrt(cutoff * y[0] * y[1] / nd_over_nt)
    covol = _lattice_covolume(L)
    tail_at = lambda T: _truncation_tail(K, c, y, nd_over_nt, covol, T)
    if target_err is None:
        T = T_max
    else:
        if tail_at(T_max) > target_err:
            need = T_max
            while tail_at(need) > target_err and need < 1e3:
                need *= 1.2
            est = need * need * nd_over_nt / (4 * y[0] * y[1])
            raise AccuracyNotMet(
                f"tail {tail_at(T_max):.3g} at the stored cutoff {cutoff}; "
                f"about {int(est) + 1} is needed for {target_err:g}",
                achieved=tail_at(T_max), required=target_err)
        lo, hi = 0.0, T_max
        for _ in range(40):
            mid = (lo + hi) / 2
            if tail_at(mid) > target_err:
                lo = mid
            else:
                hi = mid
        T = hi
    v1, v2 = L.basis()
    total = mpmath.mpc(0)
    absum = mpmath.mpf(0)
    n = 0
    with mpmath.workprec(prec):
        zz = [mpmath.mpmathify(zj) for zj in z]
        twopi_i = 2j * mpmath.pi
        cons = [(-1, 0, 0), (0, -1, 0), (y[0], y[1], T)]
        for xi in lattice_points(v1, v2, F.zero, cons, (0, T / y[0], 0, T / y[1])):
            if not xi.is_totally_positive():
                continue
            x1, x2 = xi.embed_float()
            if x1 * y[0] + x2 * y[1] > T:
                continue
            a = coefficient(xi)
            if isinstance(a, (int, Fraction)) and a == 0:
                continue
            e1, e2 = xi.embed(prec)
            term = coefficient_value(a, prec) * mpmath.exp(twopi_i * (e1 * zz[0] + e2 * zz[1]))
            total += term
            absum += abs(term)
            n += 1
    rounding = float(absum) * 2.0 ** (-prec + 8)
    return Evaluation(total, tail_at(T) + rounding, n, T)


def evaluator(f: FormCandidate, target_err: float | None = None):
    """z -> (value, error) for use with slash_apply."""
    def g(z):
        ev = evaluate_form(f, z, target_err)
        return ev.value, ev.tail
    return g


# -- matrices and the slash action -----------------------------------------------

@dataclass(frozen=True)
class Matrix2:
    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement

    @classmethod
    def of(cls, F: Field, a, b, c, d) -> "Matrix2":
        conv = lambda v: v if isinstance(v, FieldElement) else F.one * Fraction(v)
        return cls(conv(a), conv(b), conv(c), conv(d))

    @property
    def F(self) -> Field:
        return self.a.F

    def det(self) -> FieldElement:
        return self.a * self.d - self.b * self.c

    def __mul__(self, o: "Matrix2") -> "Matrix2":
        return Matrix2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                       self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self) -> "Matrix2":
        D = self.det()
        if D.is_zero():
            raise InvalidMatrix("singular matrix")
        return Matrix2(self.d / D, -self.b / D, -self.c / D, self.a / D)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, o):
        return isinstance(o, Matrix2) and self.entries() == o.entries()

    def __hash__(self):
        return hash(self.entries())

    def embed(self, j: int, prec: int):
        return [x.sigma(j, prec) for x in self.entries()]


def T_matrix(alpha: FieldElement) -> Matrix2:
    F = alpha.F
    return Matrix2(F.one, alpha, F.zero, F.one)


def E_matrix(eps: FieldElement) -> Matrix2:
    F = eps.F
    return Matrix2(eps, F.zero, F.zero, F.one)


def A_matrix(beta: FieldElement) -> Matrix2:
    F = beta.F
    return Matrix2(F.one, F.zero, beta, F.one)


def W_matrix(q: FieldElement) -> Matrix2:
    F = q.F
    return Matrix2(F.zero, -F.one, q, F.zero)


def fricke_conjugate(beta: FieldElement, q: FieldElement) -> Matrix2:
    """W_q^-1 T^(-beta/q) W_q, which is the lower unipotent matrix (1, 0; beta, 1)."""
    W = W_matrix(q)
    return W.inverse() * T_matrix(-beta / q) * W


@dataclass
class GroupRingElement:
    """Finite formal combination sum_j c_j [gamma_j]."""
    terms: list = field(default_factory=list)

    @classmethod
    def of(cls, gamma: Matrix2, coeff=1) -> "GroupRingElement":
        return cls([(coeff, gamma)])

    def __add__(self, o: "GroupRingElement") -> "GroupRingElement":
        return GroupRingElement(self.terms + o.terms)

    def __mul__(self, o):
        if isinstance(o, GroupRingElement):
            return GroupRingElement([(c1 * c2, g1 * g2) for c1, g1 in self.terms
                                     for c2, g2 in o.terms])
        return GroupRingElement([(c * o, g) for c, g in self.terms])

    __rmul__ = __mul__


def _act(gamma: Matrix2, z, prec):
    """(gamma z, automorphy factor det^(k/2) (cz+d)^(-k) without the weights)."""
    out = []
    for j in range(2):
        a, b, c, d = gamma.embed(j, prec)
        zj = mpmath.mpmathify(z[j])
        out.append(((a * zj + b) / (c * zj + d), a * d - b * c, c * zj + d))
    return out


def slash_apply(g, gamma, weight, z, prec: int = DEFAULT_EVAL_PREC):
    """(g|_k gamma)(z) = det(gamma)^(k/2) (cz+d)^(-k) g(gamma z), extended linearly.

    g maps a point of H^2 to (value, error); the error is scaled along.
    """
    weight = _as_weight(weight)
    if isinstance(gamma, Matrix2):
        gamma = GroupRingElement.of(gamma)
    if isinstance(g, FormCandidate):
        g = evaluator(g)
    total = mpmath.mpc(0)
    err = 0.0
    with mpmath.workprec(prec):
        for coeff, M in gamma.terms:
            if not M.det().is_totally_positive():
                raise InvalidMatrix(f"det {M.det()} is not totally positive")
            parts = _act(M, z, prec)
            factor = mpmath.mpc(1)
            for (w, det, czd), kj in zip(parts, weight.k):
                factor *= mpmath.power(det, kj // 2) * mpmath.power(czd, -kj)
            val, e = g([w for w, _, _ in parts])
            c = to_mpc(coeff) if is_exact(coeff) else mpmath.mpmathify(coeff)
            total += c * factor * val
            err += float(abs(c * factor)) * e
    return total, err


# -- residual checks ---------------------------------------------------------------

@dataclass
class ResidualReport:
    max_residual: float
    max_tail: float
    samples: int
    skipped: int
    exact: bool | None = None
    details: list = field(default_factory=list)

    @property
    def within_tails(self) -> bool:
        return self.max_residual <= 2 * self.max_tail


def _is_upper_triangular_unit(gamma: Matrix2) -> bool:
    return gamma.c.is_zero() and gamma.a == gamma.F.one and gamma.d == gamma.F.one


def translation_fast_path(f: FormCandidate, alpha: FieldElement) -> bool:
    """f(z + alpha) = f(z) termwise iff tr(xi alpha) is an integer for every
    xi in the lattice, i.e. for both basis vectors."""
    return all((xi * alpha).trace().denominator == 1 for xi in f.lattice.basis())


def unit_fast_path(f: FormCandidate, eps: FieldElement) -> bool:
    """f|E_eps = f termwise: a(eps xi) = eps^(k/2) a(xi) on stored orbit reps
    (using N(eps) = 1 for totally positive units)."""
    mono = embedding_power(eps, tuple(kj // 2 for kj in f.weight.k))
    for xi, a in f.coeffs.items():
        lhs = f.coefficient(eps * xi)
        rhs = _mul(mono, a, f.prec)
        tol = 1e-12 * (1 + float(abs(coefficient_value(a, f.prec))))
        if not coefficients_equal(lhs, rhs, tol, f.prec):
            return False
    return True


def invariance_residual(f: FormCandidate, gamma: Matrix2, sample_z, weight=None,
                        target_err: float | None = None) -> ResidualReport:
    """max |(f|gamma)(z) - f(z)| over the evaluable sample points."""
    weight = _as_weight(weight or f.weight)
    ev = evaluator(f, target_err)
    worst, worst_tail, used, skipped = 0.0, 0.0, 0, 0
    details = []
    for z in sample_z:
        try:
            lhs, e1 = slash_apply(ev, gamma, weight, z, f.prec)
            rhs, e2 = ev(z)
        except (DomainError, AccuracyNotMet):
            skipped += 1
            continue
        with mpmath.workprec(f.prec):
            r = float(abs(lhs - rhs))
        details.append((r, e1 + e2))
        worst = max(worst, r)
        worst_tail = max(worst_tail, e1 + e2)
        used += 1
    if used == 0:
        raise DomainError("no sample point is evaluable on both sides")
    exact = None
    if _is_upper_triangular_unit(gamma):
        exact = translation_fast_path(f, gamma.b)
    elif gamma.b.is_zero() and gamma.c.is_zero() and gamma.d == gamma.F.one \
            and gamma.a.is_unit() and gamma.a.is_totally_positive():
        exact = unit_fast_path(f, gamma.a)
    return ResidualReport(worst, worst_tail, used, skipped, exact, details)


def fricke_sample_points(q: FieldElement, scales=(0.8, 1.0, 1.25), x_shifts=(0.0,)):
    """z = x + i s q^(-1/2)(1, 1) per embedding."""
    q1, q2 = q.embed_float()
    pts = []
    for s in scales:
        for x in x_shifts:
            pts.append((complex(x, s / math.sqrt(q1)), complex(-x / 2, s / math.sqrt(q2))))
    return pts


def fricke_residual(f_tuple, group: NarrowClassData, lam: int, epsilon: int,
                    sample_z=None, target_err: float | None = None) -> ResidualReport:
    """max |(f_lam|W_q)(z) - epsilon f_lam~(z)| with q = q_lambda."""
    if epsilon not in (1, -1):
        raise InvalidArgument("epsilon must be +1 or -1")
    if not group.q:
        raise InvalidArgument("class data has no level pairing")
    lam_t = group.pairing[lam]
    q = group.q[lam]
    f, g = f_tuple[lam], f_tuple[lam_t]
    if sample_z is None:
        sample_z = fricke_sample_points(q)
    W = W_matrix(q)
    ev_f, ev_g = evaluator(f, target_err), evaluator(g, target_err)
    worst, worst_tail, used, skipped = 0.0, 0.0, 0, 0
    details = []
    for z in sample_z:
        try:
            lhs, e1 = slash_apply(ev_f, W, f.weight, z, f.prec)
            rhs, e2 = ev_g(z)
        except (DomainError, AccuracyNotMet):
            skipped += 1
            continue
        with mpmath.workprec(f.prec):
            r = float(abs(lhs - epsilon * rhs))
        details.append((r, e1 + e2, complex(lhs), complex(rhs)))
        worst = max(worst, r)
        worst_tail = max(worst_tail, e1 + e2)
        used += 1
    if used == 0:
        raise DomainError("no sample point is evaluable on both sides")
    return ResidualReport(worst, worst_tail, used, skipped, None, details)


# -- Hecke operators at infinity ---------------------------------------------------

def check_residue_system(p: DegreeOnePrime, reps):
    if len(reps) != p.q:
        raise InvalidArgument(f"expected {p.q} residues, got {len(reps)}")
    for r in reps:
        if not r.is_integral():
            raise InvalidArgument(f"{r} is not integral")
    seen = set()
    for r in reps:
        key = p.ideal.reduce(r)
        if key in seen:
            raise InvalidArgument(f"{r} repeats a residue class modulo (p)")
        seen.add(key)


def character_sum(xi: FieldElement, p: DegreeOnePrime, reps) -> CycloElement:
    """sum_{alpha in reps} e(tr(xi alpha / p)), exactly in Q(zeta_q)."""
    q = p.q
    exps = {}
    for alpha in reps:
        tr = (xi * alpha / p.p).trace()
        if (tr * q).denominator != 1:
            raise InvalidArgument(f"tr({xi} alpha / p) is not in (1/{q})Z")
        e = int(tr * q) % q
        exps[e] = exps.get(e, 0) + 1
    return CycloElement._from_exponents(q, exps)


@dataclass
class HeckeImage:
    """Fourier coefficients b(eta) of T_p f on a set of frequencies."""
    coeffs: dict
    p: DegreeOnePrime
    source: FormCandidate


def _hecke_region(f: FormCandidate, p: DegreeOnePrime):
    """Orbit representatives eta with N(eta p t^-1 d) within the cutoff."""
    return [eta for eta in f.coeffs if f.norm_of(eta) * p.q <= f.cutoff]


def hecke_coefficients(f: FormCandidate, p, reps, region=None) -> HeckeImage:
    """b(eta) = p^(k'/2-1) S(p eta) a(p eta) + p^(k+k'/2-1) a(eta/p), with
    S(xi) = sum_alpha e(tr(xi alpha/p)) computed exactly from reps."""
    P = _as_prime(p)
    check_residue_system(P, reps)
    hk = f.weight.half_kprime
    m1 = embedding_power(P.p, tuple(h - 1 for h in hk))
    m2 = embedding_power(P.p, tuple(kj + h - 1 for kj, h in zip(f.weight.k, hk)))
    region = _hecke_region(f, P) if region is None else region
    out = {}
    for eta in region:
        S = character_sum(eta * P.p, P, reps).rational_value()
        if S is None:
            raise AssertionError("character sum over O/(p) should be rational")
        b = _mul(m1 * S, f.coefficient(eta * P.p), f.prec)
        b = _add(b, _mul(m2, f.coefficient(eta / P.p), f.prec))
        out[eta] = b
    return HeckeImage(out, P, f)


def _mul(mono: FieldElement, a, prec):
    if isinstance(a, (int, Fraction)) and a == 0:
        return 0
    if isinstance(a, FieldElement):
        return mono * a
    return coefficient_value(a, prec) * mono.sigma(0, prec)


def _add(u, v):
    if isinstance(u, (int, Fraction)) and u == 0:
        return v
    if isinstance(v, (int, Fraction)) and v == 0:
        return u
    if isinstance(u, FieldElement) and isinstance(v, FieldElement):
        return u + v
    return coefficient_value(u) + coefficient_value(v)


def off_lattice_sums_vanish(f: FormCandidate, p, reps, xis=None):
    """For xi in the lattice: S(xi) = N(p) if xi/p is in the lattice, else 0."""
    P = _as_prime(p)
    check_residue_system(P, reps)
    L = f.lattice
    xis = list(f.coeffs) if xis is None else xis
    bad = []
    for xi in xis:
        S = character_sum(xi, P, reps).rational_value()
        want = P.q if L.contains(xi / P.p) else 0
        if S != want:
            bad.append(xi)
    return bad


def hecke_pointwise(f: FormCandidate, p, reps, z, target_err: float | None = None):
    """N(p)^(k0/2-1) (f|(p,0;0,1) + sum_alpha f|(1,alpha;0,p)) at z."""
    P = _as_prime(p)
    check_residue_system(P, reps)
    F = f.F
    ev = evaluator(f, target_err)
    op = GroupRingElement.of(Matrix2(P.p, F.zero, F.zero, F.one))
    for alpha in reps:
        op = op + GroupRingElement.of(Matrix2(F.one, alpha, F.zero, P.p))
    val, err = slash_apply(ev, op, f.weight, z, f.prec)
    scale = Fraction(P.q) ** (f.weight.k0 // 2 - 1)
    return val * to_mpc(scale), err * float(scale)


def evaluate_hecke_image(img: HeckeImage, z, target_err: float | None = None) -> Evaluation:
    """sum_eta b(eta) e(tr(eta z)) from the coefficient formula."""
    f = img.source
    P = img.p
    reps = _standard_reps(P)

    def coef(eta):
        return hecke_coefficients(f, P, reps, region=[eta]).coeffs[eta]

    nd_over_nt = float(f.F.different.norm() / f.t.norm())
    c = f.seq.growth_c
    big = max(P.p.embed_float())
    K = f.magnitude_constant() * (P.q ** c + P.q ** (f.weight.k0 - 1 - c)) \
        * big ** max(f.weight.half_kprime)
    return evaluate_series(coef, f.lattice, z, f.cutoff / P.q, nd_over_nt, K, c, f.prec,
                           target_err)


def _standard_reps(p: DegreeOnePrime):
    return [p.F.one * n for n in range(p.q)]


def hecke_infinity_apply(f: FormCandidate, p, F_reps, mode: str = "coefficients", z=None,
                         target_err: float | None = None):
    if mode == "coefficients":
        return hecke_coefficients(f, p, F_reps)
    if mode == "pointwise":
        if z is None:
            raise InvalidArgument("pointwise mode needs a point z")
        return hecke_pointwise(f, p, F_reps, z, target_err)
    raise InvalidArgument(f"unknown mode {mode!r}")


@dataclass
class EigenReport:
    ok: bool
    checked: int
    first_violation: object = None


def hecke_eigen_check(f: FormCandidate, p, F_reps, tol: float = 0.0) -> EigenReport:
    """b(eta) = A(p) a(eta) on every stored frequency with data in range."""
    P = _as_prime(p)
    img = hecke_coefficients(f, P, F_reps)
    Ap = f.seq.A(P.ideal)
    n = 0
    for eta, b in img.coeffs.items():
        a = f.coefficient(eta)
        rhs = a * Ap if isinstance(a, FieldElement) and is_exact(Ap) else \
            coefficient_value(a, f.prec) * to_mpc(Ap)
        n += 1
        if not coefficients_equal(b, rhs, tol, f.prec):
            return EigenReport(False, n, eta)
    return EigenReport(True, n)
