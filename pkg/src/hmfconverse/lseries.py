"""Coefficient sequences, Euler products and L-series in the region of absolute convergence."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import ConvergenceRefused, IncompleteData, InvalidArgument, PoleError
from .ideals import FracIdeal, NarrowClassData, PrimeIdeal, ideals_up_to, valuation
from .numfield import Field

CONVERGENCE_MARGIN = 1.25


def is_exact(v) -> bool:
    return isinstance(v, (int, Fraction))


def to_mpc(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    if isinstance(v, int):
        return mpmath.mpf(v)
    return mpmath.mpmathify(v)


def values_equal(u, v, tol=0):
    if is_exact(u) and is_exact(v):
        return u == v
    return abs(to_mpc(u) - to_mpc(v)) <= tol


@dataclass
class CoefficientSequence:
    F: Field
    k0: int
    cutoff: int
    table: dict
    factorization: dict
    growth_c: float
    provenance: str = "explicit"
    prime_powers: dict = field(default_factory=dict)
    weight: tuple | None = None
    level: FracIdeal | None = None

    def A(self, I: FracIdeal):
        if not I.is_integral():
            return 0
        if I.norm() > self.cutoff:
            raise IncompleteData(f"A({I}) requested beyond cutoff {self.cutoff}")
        try:
            return self.table[I]
        except KeyError:
            raise IncompleteData(f"no coefficient stored for {I}")

    def ideals(self, cutoff=None):
        cutoff = self.cutoff if cutoff is None else cutoff
        return [I for I in self.table if I.norm() <= cutoff]

    def fitted_constant(self) -> float:
        """K = max |A(a)| / N(a)^c over the table (at least 1)."""
        K = 1.0
        for I, v in self.table.items():
            K = max(K, float(abs(to_mpc(v))) / float(I.norm()) ** self.growth_c)
        return K

    def growth_warnings(self, K: float):
        return [I for I, v in self.table.items()
                if float(abs(to_mpc(v))) > K * float(I.norm()) ** self.growth_c]

    def copy(self) -> "CoefficientSequence":
        return CoefficientSequence(self.F, self.k0, self.cutoff, dict(self.table),
                                   dict(self.factorization), self.growth_c, self.provenance,
                                   {P: list(v) for P, v in self.prime_powers.items()},
                                   self.weight, self.level)


def inverse_series(poly, order: int):
    """Coefficients of 1/poly(X) to X^order; poly[0] must be 1."""
    if poly[0] != 1:
        raise InvalidArgument("Euler polynomial must have constant term 1")
    out = [Fraction(1)] if is_exact(poly[0]) else [mpmath.mpc(1)]
    for j in range(1, order + 1):
        acc = 0
        for i in range(1, min(j, len(poly) - 1) + 1):
            acc = acc - poly[i] * out[j - i]
        out.append(acc)
    return out


def hecke_prime_powers(a_p, norm: int, k0: int, order: int):
    """A(p^j) for j <= order from A(p^j) = A(p)A(p^{j-1}) - N^{k0-1} A(p^{j-2})."""
    c = norm ** (k0 - 1)
    out = [1, a_p]
    for j in range(2, order + 1):
        out.append(a_p * out[j - 1] - c * out[j - 2])
    return out[:order + 1]


def sequence_from_euler(F: Field, k0: int, local_data: dict, bad_factors: dict,
                        cutoff: int, order: int = 10, growth_c: float | None = None,
                        weight=None, level=None) -> CoefficientSequence:
    """Coefficients from Euler factors: good primes via the Hecke recursion,
    bad primes via 1/poly(X)."""
    ideals = ideals_up_to(F, cutoff)
    primes = {}
    for I, fac in ideals:
        for P, _ in fac:
            primes[P.ideal] = P
    powers = {}
    for Pid, P in primes.items():
        need = max(order, int(math.log(cutoff) / math.log(P.norm)) + 1)
        if Pid in bad_factors:
            powers[Pid] = inverse_series(list(bad_factors[Pid]), need)
        elif Pid in local_data:
            powers[Pid] = hecke_prime_powers(local_data[Pid], P.norm, k0, need)
        else:
            raise IncompleteData(f"no local factor for the prime {Pid}")
    table, facs = {}, {}
    for I, fac in ideals:
        v = 1
        for P, e in fac:
            v = v * powers[P.ideal][e]
        table[I] = v
        facs[I] = fac
    if growth_c is None:
        growth_c = (k0 - 1) / 2 + 0.5
    return CoefficientSequence(F, k0, cutoff, table, facs, growth_c, "euler", powers,
                               weight, level)


def sequence_from_table(F: Field, k0: int, table: dict, growth_c: float,
                        provenance: str = "explicit", cutoff: int | None = None,
                        weight=None, level=None) -> CoefficientSequence:
    one = FracIdeal.unit(F)
    if not values_equal(table.get(one, 0), 1, 1e-30):
        raise InvalidArgument("A(O_F) must equal 1")
    if cutoff is None:
        cutoff = int(max(I.norm() for I in table))
    from .ideals import factor_small
    facs = {I: tuple(factor_small(I)) for I in table}
    return CoefficientSequence(F, k0, cutoff, dict(table), facs, growth_c, provenance,
                               weight=weight, level=level)


def inject_fault(seq: CoefficientSequence, I: FracIdeal, delta=1) -> CoefficientSequence:
    """A copy of seq with A(I) shifted by delta (also in the stored prime-power data)."""
    out = seq.copy()
    out.table[I] = out.table[I] + delta
    fac = out.factorization[I]
    if len(fac) == 1:
        P, e = fac[0]
        if P.ideal in out.prime_powers:
            out.prime_powers[P.ideal][e] = out.prime_powers[P.ideal][e] + delta
    out.provenance = "explicit"
    return out


# -- L-series ----------------------------------------------------------------

@dataclass
class LSum:
    value: object
    tail: float
    terms: int
    cutoff: int


def tail_bound(K: float, c: float, sigma: float, X: float) -> float:
    """Bound for sum_{N(a) > X} K N(a)^c N(a)^-sigma, using
    #{a : N(a) = n} <= d(n) and sum_{n <= x} d(n) <= x (log x + 1)."""
    d = sigma - c - 1
    return K * ((math.log(X) + 2) * X ** (-d) / d + X ** (-d) / (d * d))


def partial_l_sum(seq: CoefficientSequence, C=None, psi=None, s=4, cutoff=None,
                  group: NarrowClassData | None = None, chi=None, prec=None) -> LSum:
    """sum over a in C with N(a) <= cutoff of psi(a) chi([a]) A(a) N(a)^-s."""
    from .characters import evaluate_psi_factored
    prec = prec or seq.F.precision_bits
    s = mpmath.mpmathify(s)
    sigma = float(mpmath.re(s))
    if sigma < seq.growth_c + CONVERGENCE_MARGIN:
        raise ConvergenceRefused(
            f"Re(s)={sigma} is below growth_c + {CONVERGENCE_MARGIN} = "
            f"{seq.growth_c + CONVERGENCE_MARGIN}")
    cutoff = seq.cutoff if cutoff is None else min(cutoff, seq.cutoff)
    if (C is not None or chi is not None) and group is None:
        raise InvalidArgument("a class group is needed for class restrictions")
    total = mpmath.mpc(0)
    n = 0
    with mpmath.workprec(prec):
        for I in sorted(seq.table, key=lambda J: (J.norm(), J.key())):
            nm = I.norm()
            if nm > cutoff:
                continue
            fac = seq.factorization[I]
            cls = group.class_from_factorization(fac) if group is not None else 0
            if C is not None and cls != C:
                continue
            term = to_mpc(seq.table[I]) * mpmath.power(mpmath.mpf(int(nm)), -s)
            if psi is not None:
                term *= evaluate_psi_factored(psi, fac)
            if chi is not None:
                term *= chi.value(cls)
            total += term
            n += 1
    K = seq.fitted_constant()
    return LSum(total, tail_bound(K, seq.growth_c, sigma, cutoff), n, cutoff)


@dataclass
class CompletedLValue:
    s: object
    value: object
    gamma_part: object
    dirichlet_part: object
    truncation_norm: int
    tail_estimate: float


def gamma_arguments(s, kprime, nu):
    return [s - mpmath.mpf(kp) / 2 + n for kp, n in zip(kprime, nu)]


def complete_l(seq: CoefficientSequence, psi=None, s=4, level: FracIdeal | None = None,
               cutoff=None, weight=None, C=None, group=None, prec=None) -> CompletedLValue:
    prec = prec or seq.F.precision_bits
    F = seq.F
    weight = weight or seq.weight or (seq.k0, seq.k0)
    k0 = max(weight)
    kprime = [k0 - k for k in weight]
    level = level or seq.level or FracIdeal.unit(F)
    nu = psi.nu if psi is not None else (mpmath.mpc(0), mpmath.mpc(0))
    with mpmath.workprec(prec):
        s = mpmath.mpmathify(s)
        args = gamma_arguments(s, kprime, nu)
        for a in args:
            if mpmath.im(a) == 0 and mpmath.re(a) <= 0 and mpmath.re(a) == int(mpmath.re(a)):
                raise PoleError(f"Gamma has a pole at {a}")
        gamma = mpmath.mpc(1)
        for a in args:
            gamma *= mpmath.gamma(a)
        lsum = partial_l_sum(seq, C, psi, s, cutoff, group=group, prec=prec)
        nd2 = level * F.different ** 2
        N = mpmath.mpf(int(nd2.norm()))
        factor = mpmath.power(2 * mpmath.pi, -F.r * s) * mpmath.power(N, s / 2)
        gamma_part = factor * gamma
        value = gamma_part * lsum.value
        tail = float(abs(gamma_part)) * lsum.tail
    return CompletedLValue(s, value, gamma_part, lsum.value, lsum.cutoff, tail)


# -- recursion / local factor ---------------------------------------------------

@dataclass
class RecursionReport:
    recursion_ok: bool
    local_factor_ok: bool
    first_violation: object = None
    local_violation: object = None
    checked: int = 0

    @property
    def ok(self):
        return self.recursion_ok and self.local_factor_ok


def recursion_equivalence_check(seq: CoefficientSequence, p, C=None, J: int = 10,
                                group: NarrowClassData | None = None, tol=0) -> RecursionReport:
    """(i) A(a)A(p) = A(ap) + N(p)^{k0-1} A(a/p) over a in C;
    (ii) the p-local factor: the local series times
    (1 - A(p)X + N(p)^{k0-1}X^2) is 1 + O(X^{J+1}), and A(b p^j) = A(b)A(p^j)
    for p not dividing b (the partial Euler product)."""
    P = p.ideal
    q = p.q
    c = q ** (seq.k0 - 1)
    Pdata = PrimeIdeal(P, q, 1, 1)
    Ap = seq.A(P)
    report = RecursionReport(True, True)
    Pinv = P.inverse()
    for I in sorted(seq.table, key=lambda K: (K.norm(), K.key())):
        if I.norm() * q > seq.cutoff:
            continue
        if C is not None and group is not None and \
                group.class_from_factorization(seq.factorization[I]) != C:
            continue
        if valuation(I, Pdata) >= J:
            continue
        lhs = seq.A(I) * Ap
        rhs = seq.A(I * P) + c * seq.A(I * Pinv)
        report.checked += 1
        if not values_equal(lhs, rhs, tol):
            report.recursion_ok = False
            report.first_violation = I
            break
    # local series from the table where available, stored prime powers beyond
    series = []
    stored = seq.prime_powers.get(P)
    for j in range(J + 1):
        Pj = P ** j
        if Pj.norm() <= seq.cutoff:
            series.append(seq.A(Pj))
        elif stored is not None and j < len(stored):
            series.append(stored[j])
        else:
            break
    poly = [1, -Ap, c]
    for j in range(len(series)):
        acc = 0
        for i in range(3):
            if j - i >= 0:
                acc = acc + poly[i] * series[j - i]
        target = 1 if j == 0 else 0
        if not values_equal(acc, target, tol):
            report.local_factor_ok = False
            report.local_violation = ("series", j)
            break
    if report.local_factor_ok:
        for I in sorted(seq.table, key=lambda K: (K.norm(), K.key())):
            v = valuation(I, Pdata)
            if v == 0:
                continue
            b = I * Pinv ** v
            if not values_equal(seq.A(I), seq.A(b) * seq.A(P ** v), tol):
                report.local_factor_ok = False
                report.local_violation = ("euler", I)
                break
    return report
