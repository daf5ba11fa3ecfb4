"""Numerical checks of the Mellin inversion and Poisson summation identities.

The unit-lattice Jacobian enters through |Delta|: with the first embedding
of eps1 above 1, Delta = log eps1^(2) - log eps1^(1) is negative, while the
change of variables (y0, t) -> y has Jacobian of absolute value |Delta| y0.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .characters import nu_vector
from .errors import AccuracyNotMet, InvalidArgument
from .numfield import Field, FieldElement, log_embedding_matrix


@dataclass
class IdentityResult:
    lhs: object
    rhs: object
    abs_diff: float
    lhs_error: float
    rhs_error: float
    params: dict


def _vertical_integral(f, sigma, T, prec, step=2):
    """(1/2 pi i) int_{sigma - iT}^{sigma + iT} f(s) ds, with error estimate."""
    with mpmath.workprec(prec):
        n = max(2, int(2 * T / step))
        pts = mpmath.linspace(-T, T, n + 1)
        val, err = mpmath.quad(lambda t: f(mpmath.mpc(sigma, t)), pts, error=True)
        return val / (2 * mpmath.pi), err / (2 * mpmath.pi)


def _truncation_height(f, sigma, target, prec, start=4.0, limit=400.0):
    """Smallest T (doubling) with |f| below target on both ends beyond T."""
    T = start
    with mpmath.workprec(prec):
        while T <= limit:
            edge = max(abs(f(mpmath.mpc(sigma, T))), abs(f(mpmath.mpc(sigma, -T))))
            edge2 = max(abs(f(mpmath.mpc(sigma, 1.5 * T))), abs(f(mpmath.mpc(sigma, -1.5 * T))))
            if edge * T < target and edge2 <= edge:
                return T, float(edge * T)
            T *= 1.5
    raise AccuracyNotMet(f"integrand does not decay below {target} by |Im s| = {limit}",
                         achieved=float(edge))


def mellin_gamma_side(F: Field, a, b, sigma, target=1e-15, prec=None):
    """(1/2 pi i) int prod_j a_j^(-s+b_j) Gamma(s-b_j) ds on Re(s) = sigma."""
    prec = prec or F.precision_bits
    with mpmath.workprec(prec):
        a = [mpmath.mpf(x) for x in a]
        b = [mpmath.mpmathify(x) for x in b]

        def f(s):
            v = mpmath.mpc(1)
            for aj, bj in zip(a, b):
                v *= mpmath.power(aj, -s + bj) * mpmath.gamma(s - bj)
            return v

        T, tail = _truncation_height(f, sigma, target, prec)
        val, err = _vertical_integral(f, sigma, T, prec)
        return val, float(err) + tail


def mellin_unit_side(F: Field, a, b, prec=None):
    """r^-1 |Delta| int_R exp(-sum_j a_j eps^(j)t) prod_j (eps^(j))^(-t b_j) dt."""
    prec = prec or F.precision_bits
    _, delta = log_embedding_matrix(F, prec)
    e = F.eps1.embed(prec)
    with mpmath.workprec(prec):
        logs = [mpmath.log(x) for x in e]
        a = [mpmath.mpf(x) for x in a]
        b = [mpmath.mpmathify(x) for x in b]

        def g(t):
            expo = mpmath.mpc(0)
            for aj, bj, lj in zip(a, b, logs):
                expo -= aj * mpmath.exp(t * lj) + t * bj * lj
            return mpmath.exp(expo)

        # the integrand decays doubly exponentially; find where it is negligible
        R = mpmath.mpf(1)
        while abs(g(R)) + abs(g(-R)) > mpmath.mpf(2) ** (-prec) and R < 200:
            R *= 2
        pts = mpmath.linspace(-R, R, int(4 * R) + 1)
        val, err = mpmath.quad(g, pts, error=True)
        return abs(delta) * val / F.r, float(abs(delta) * err / F.r)


def gamma_mellin_identity_check(F: Field, a, b=(0, 0), sigma=2, target=1e-15,
                                prec=None) -> IdentityResult:
    prec = prec or F.precision_bits
    bre = max(float(mpmath.re(mpmath.mpmathify(x))) for x in b)
    if sigma <= bre:
        raise InvalidArgument(f"sigma={sigma} must exceed max Re(b_j)={bre}")
    if any(x <= 0 for x in a):
        raise InvalidArgument("a_j must be positive")
    lhs, lerr = mellin_gamma_side(F, a, b, sigma, target, prec)
    rhs, rerr = mellin_unit_side(F, a, b, prec)
    with mpmath.workprec(prec):
        diff = float(abs(lhs - rhs))
    return IdentityResult(lhs, rhs, diff, lerr, rerr,
                          {"a": list(a), "b": [str(x) for x in b], "sigma": sigma})


def phase_residual(F: Field, m: int, t_samples, prec=None):
    """max_t |eps(t)^(nu_m) - e(m t)| where eps(t)^c = prod_j (eps^(j))^(t c_j)."""
    prec = prec or F.precision_bits
    nu = nu_vector(F, m, prec)
    e = F.eps1.embed(prec)
    worst = mpmath.mpf(0)
    with mpmath.workprec(prec):
        logs = [mpmath.log(x) for x in e]
        for t in t_samples:
            t = mpmath.mpf(t)
            lhs = mpmath.exp(t * (nu[0] * logs[0] + nu[1] * logs[1]))
            rhs = mpmath.expjpi(2 * m * t)
            worst = max(worst, abs(lhs - rhs))
    return worst


def gamma_shift_check(F: Field, m: int, kprime=(0, 0), a=(1, 1),
                      t_samples=(0.37, -1.25, 2.5), sigma=None, prec=None):
    """Phase identity at sampled t plus the shifted Mellin identity."""
    prec = prec or F.precision_bits
    res = shifted_mellin_check(F, m, kprime, a, sigma, prec)
    return {
        "m": m,
        "phase_residual": phase_residual(F, m, t_samples, prec),
        "mellin": res,
        "abs_diff": res.abs_diff,
    }


def shifted_mellin_check(F: Field, m: int, kprime, a, sigma=None, prec=None) -> IdentityResult:
    """The Mellin identity with b_j = k'_j/2 - nu_{m,j}."""
    prec = prec or F.precision_bits
    nu = nu_vector(F, m, prec)
    with mpmath.workprec(prec):
        b = [mpmath.mpf(kp) / 2 - n for kp, n in zip(kprime, nu)]
    if sigma is None:
        sigma = max(kprime) / 2 + 2
    return gamma_mellin_identity_check(F, a, b, sigma, prec=prec)


def poisson_lhs(F: Field, beta: FieldElement, kprime, y, M_units: int, prec=None):
    """sum_{|k| <= M_units} (eps1^k beta)^(-k'/2) exp(-2 pi tr(eps1^k beta y)),
    with the size of the first omitted terms as tail."""
    prec = prec or F.precision_bits
    if not beta.is_totally_positive():
        raise InvalidArgument("beta must be totally positive")
    e = F.eps1

    def term(k):
        x = (e ** k) * beta
        xs = x.embed(prec)
        with mpmath.workprec(prec):
            v = mpmath.mpf(1)
            expo = mpmath.mpf(0)
            for xj, kp, yj in zip(xs, kprime, y):
                v *= mpmath.power(xj, -mpmath.mpf(kp) / 2)
                expo += xj * mpmath.mpf(yj)
            return v * mpmath.exp(-2 * mpmath.pi * expo)

    with mpmath.workprec(prec):
        total = mpmath.mpf(0)
        for k in range(-M_units, M_units + 1):
            total += term(k)
        tail = abs(term(M_units + 1)) + abs(term(-M_units - 1))
    return total, float(tail)


def poisson_rhs_term(F: Field, beta: FieldElement, kprime, y, m: int, sigma,
                     target=1e-20, prec=None):
    """C * (1/2 pi i) int (2pi)^(-rs) N(beta)^-s psi_m((beta)) y^(-s+k'/2-nu_m)
    prod_j Gamma(s - k'_j/2 + nu_mj) ds, C = r |Delta|^-1 (2 pi)^(|k'|/2)."""
    prec = prec or F.precision_bits
    nu = nu_vector(F, m, prec)
    _, delta = log_embedding_matrix(F, prec)
    bs = beta.embed(prec)
    with mpmath.workprec(prec):
        yv = [mpmath.mpf(v) for v in y]
        Nb = bs[0] * bs[1]
        psi_beta = mpmath.exp(-(nu[0] * mpmath.log(bs[0]) + nu[1] * mpmath.log(bs[1])))
        kp = [mpmath.mpf(k) for k in kprime]
        twopi = 2 * mpmath.pi

        def f(s):
            v = mpmath.power(twopi, -F.r * s) * mpmath.power(Nb, -s) * psi_beta
            for yj, kj, nj in zip(yv, kp, nu):
                v *= mpmath.power(yj, -s + kj / 2 - nj) * mpmath.gamma(s - kj / 2 + nj)
            return v

        # the integrand is concentrated in |Im s| <= |nu| + T
        shift = abs(mpmath.im(nu[0]))
        T, tail = _truncation_height(f, sigma, target, prec, start=float(shift) + 4)
        val, err = _vertical_integral(f, sigma, T, prec)
        C = F.r / abs(delta) * mpmath.power(twopi, sum(kp) / 2)
        return C * val, float(abs(C) * (err + tail))


def phibeta_identity_check(F: Field, beta: FieldElement, kprime, y, M_units: int = 6,
                           M_chars: int = 4, sigma=None, prec=None) -> IdentityResult:
    prec = prec or F.precision_bits
    if any(v <= 0 for v in y):
        raise InvalidArgument("y must be totally positive")
    if sigma is None:
        sigma = max(kprime) / 2 + 2
    lhs, lhs_tail = poisson_lhs(F, beta, kprime, y, M_units, prec)
    with mpmath.workprec(prec):
        rhs = mpmath.mpc(0)
        err = 0.0
        for m in range(-M_chars, M_chars + 1):
            v, e = poisson_rhs_term(F, beta, kprime, y, m, sigma, prec=prec)
            rhs += v
            err += e
        # size of the first omitted character terms
        omitted = 0.0
        for m in (M_chars + 1, -M_chars - 1):
            v, _ = poisson_rhs_term(F, beta, kprime, y, m, sigma, prec=prec)
            omitted += float(abs(v))
        diff = float(abs(lhs - rhs))
    return IdentityResult(lhs, rhs, diff, lhs_tail, err + omitted,
                          {"beta": str(beta), "kprime": list(kprime), "y": [str(v) for v in y],
                           "M_units": M_units, "M_chars": M_chars, "sigma": sigma})


def poisson_rhs_partial_sums(F: Field, beta, kprime, y, M_max: int, sigma=None, prec=None):
    """|lhs - rhs_M| for M = 0..M_max."""
    prec = prec or F.precision_bits
    if sigma is None:
        sigma = max(kprime) / 2 + 2
    lhs, _ = poisson_lhs(F, beta, kprime, y, 12, prec)
    out = []
    with mpmath.workprec(prec):
        acc, _ = poisson_rhs_term(F, beta, kprime, y, 0, sigma, prec=prec)
        out.append(float(abs(lhs - acc)))
        for M in range(1, M_max + 1):
            for m in (M, -M):
                v, _ = poisson_rhs_term(F, beta, kprime, y, m, sigma, prec=prec)
                acc += v
            out.append(float(abs(lhs - acc)))
    return out
