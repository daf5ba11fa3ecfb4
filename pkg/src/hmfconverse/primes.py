"""Degree-one primes, residue systems and prime searches in progressions."""
from __future__ import annotations

import math
from dataclasses import dataclass

from sympy import isprime, primerange

from .errors import BoundExhausted, InvalidArgument, UnsupportedPrime
from .ideals import FracIdeal, lattice_points, primes_above
from .numfield import Field, FieldElement


@dataclass(frozen=True)
class DegreeOnePrime:
    p: FieldElement
    ideal: FracIdeal
    q: int

    @property
    def F(self) -> Field:
        return self.p.F

    def __repr__(self):
        return f"DegreeOnePrime(p={self.p}, q={self.q})"


def degree_one_prime(p: FieldElement) -> DegreeOnePrime:
    """Validate that p is a totally positive generator of a degree-1 prime."""
    F = p.F
    if not p.is_integral() or p.is_zero():
        raise InvalidArgument(f"{p} is not a nonzero integer of {F}")
    nm = abs(p.norm())
    if not isprime(int(nm)):
        raise UnsupportedPrime(f"(p) with N(p)={nm} is not a degree-1 prime")
    q = int(nm)
    if F.discriminant % q == 0:
        raise UnsupportedPrime(f"(p) lies over the ramified prime {q}")
    if not p.is_totally_positive():
        raise InvalidArgument(f"{p} is not totally positive")
    return DegreeOnePrime(p, FracIdeal.principal(p), q)


def _as_prime(p) -> DegreeOnePrime:
    if isinstance(p, DegreeOnePrime):
        return p
    return degree_one_prime(p)


def divides_element(p: FieldElement, x: FieldElement) -> bool:
    """(p) | (x) for integral x."""
    return (x / p).is_integral()


def congruent(x: FieldElement, y: FieldElement, modulus: FracIdeal) -> bool:
    return modulus.contains(x - y)


def residue_representatives(p, alpha: FieldElement, t: FracIdeal | None = None):
    """{0, alpha, ..., (q-1) alpha}, checked to be a full residue system mod (p).

    With t given, also returns the same elements checked as representatives
    of t^-1 / t^-1 (p).
    """
    P = _as_prime(p)
    if not alpha.is_integral():
        raise InvalidArgument("alpha must be integral")
    if P.ideal.contains(alpha):
        raise InvalidArgument(f"p divides alpha={alpha}")
    reps = [alpha * a for a in range(P.q)]
    _check_incongruent(reps, P.ideal)
    if t is None:
        return reps
    if P.ideal.divides(FracIdeal.principal(P.F.one * t.norm().numerator)) or \
            P.ideal.divides(FracIdeal.principal(P.F.one * t.norm().denominator)):
        raise InvalidArgument("p divides N(t)")
    modulus = t.inverse() * P.ideal
    _check_incongruent(reps, modulus)
    return reps, list(reps)


def _check_incongruent(reps, modulus: FracIdeal):
    for i in range(len(reps)):
        for j in range(i):
            if modulus.contains(reps[i] - reps[j]):
                raise InvalidArgument(
                    f"{reps[i]} and {reps[j]} are congruent modulo {modulus}")


def xi_decompose(xi: FieldElement, p, t: FracIdeal):
    """(n, eta) with xi = n + p*eta, n in [0, q-1], eta in t^-1."""
    P = _as_prime(p)
    tinv = t.inverse()
    if not tinv.contains(xi):
        raise InvalidArgument(f"{xi} is not in t^-1")
    if t.norm().numerator % P.q == 0 or t.norm().denominator % P.q == 0:
        raise InvalidArgument("p divides N(t)")
    J = tinv * P.ideal
    hits = [n for n in range(P.q) if J.contains(xi - n)]
    if len(hits) != 1:
        raise InvalidArgument(f"expected exactly one n, found {hits}")
    n = hits[0]
    eta = (xi - n) / P.p
    return n, eta


def np_divisibility_test(xi: FieldElement, p):
    """((p) | xi*d, N(p) | tr(xi N(p)/p)), computed independently."""
    P = _as_prime(p)
    F = P.F
    if F.discriminant % P.q == 0:
        raise InvalidArgument("p divides N(d)")
    d = F.different
    if not d.inverse().contains(xi):
        raise InvalidArgument(f"{xi} is not in the inverse different")
    if xi.is_zero():
        return True, True
    lhs = P.ideal.divides(FracIdeal.principal(xi) * d)
    tr = (xi * P.q / P.p).trace()
    if tr.denominator != 1:
        raise AssertionError("trace should be integral")
    rhs = tr.numerator % P.q == 0
    return lhs, rhs


def local_quotient_check(p, t: FracIdeal):
    """The natural map O/(p) -> t^-1 / t^-1 (p) is a bijection.

    Injectivity is checked on the standard representatives and the index
    [t^-1 : t^-1 (p)] is compared with N(p).
    """
    P = _as_prime(p)
    tinv = t.inverse()
    J = tinv * P.ideal
    reps = [P.F.one * n for n in range(P.q)]
    try:
        _check_incongruent(reps, J)
        injective = True
    except InvalidArgument:
        injective = False
    index = J.norm() / tinv.norm()
    return injective and index == P.q


def degree_one_primes(F: Field, bound: int):
    """Totally positive generators of the principal degree-1 primes of norm <= bound.

    Non-narrowly-principal primes are skipped.
    """
    from .ideals import totally_positive_generator
    out = []
    for q in primerange(2, bound + 1):
        for P in primes_above(F, q):
            if not P.degree_one:
                continue
            g = totally_positive_generator(P.ideal)
            if g is not None:
                out.append(DegreeOnePrime(g, P.ideal, q))
    return out


def degree1_density_scan(F: Field, X: int):
    if X < 100:
        raise InvalidArgument("X must be at least 100")
    split = total = 0
    for q in primerange(2, X + 1):
        for P in primes_above(F, q):
            if P.norm <= X:
                total += 1
                if P.degree_one:
                    split += 1
    return split, total, split / total


@dataclass
class PrimeConstraints:
    """Data for the extended search: m, q_lambda, level n, and xi."""
    m: int
    q_lambda: FieldElement
    level: FracIdeal
    xi: FieldElement
    avoid_norms: tuple = ()


def _coset_totally_positive(a: FieldElement, c: FieldElement) -> FieldElement:
    step = abs(c.norm())
    d = 0
    while not (a + step * d).is_totally_positive():
        d += 1
    return a + step * d


def progression_prime_search(a: FieldElement, c: FieldElement, want: int,
                             norm_bound: int, constraints: PrimeConstraints | None = None,
                             trace_bound=None, distinct_norms: bool = False):
    """Totally positive p = a + n c generating distinct degree-1 primes,
    in order of increasing trace (ties by coordinates). With distinct_norms,
    primes sharing a norm with an earlier hit are skipped."""
    F = a.F
    if a.is_zero() or c.is_zero():
        raise InvalidArgument("a and c must be nonzero")
    if not FracIdeal.from_generators(F, [a, c]).is_unit_ideal():
        raise InvalidArgument("(a) and (c) are not coprime")
    a0 = _coset_totally_positive(a, c)
    if trace_bound is None:
        e1 = F.eps1.embed_float()[0]
        trace_bound = 4 * math.sqrt(norm_bound * e1) * max(1.0, math.sqrt(abs(float(c.norm()))))
    if constraints is not None:
        bad = (FracIdeal.principal(constraints.q_lambda * constraints.m * F.discriminant)
               * constraints.level)
        xid = FracIdeal.principal(constraints.xi) * F.different if not constraints.xi.is_zero() else None
    used_norms = set(constraints.avoid_norms) if constraints is not None else set()
    found, seen = [], set()
    v1, v2 = c, c * F.omega
    lo, T = 0.0, 8.0
    while True:
        T = min(T, trace_bound)
        batch = []
        for x in lattice_points(v1, v2, a0, [(-1, 0, 0), (0, -1, 0), (1, 1, T)],
                                (0, T, 0, T)):
            if not x.is_totally_positive():
                continue
            tr = x.trace()
            if tr <= lo or tr > T:
                continue
            batch.append(x)
        batch.sort(key=lambda z: (z.trace(), z.x, z.y))
        for x in batch:
            nm = x.norm()
            if nm > norm_bound or not isprime(int(nm)) or F.discriminant % int(nm) == 0:
                continue
            P = FracIdeal.principal(x)
            if P in seen:
                continue
            q = int(nm)
            if constraints is not None:
                if P.divides(bad) or (xid is not None and P.divides(xid)) or q in used_norms:
                    continue
                used_norms.add(q)
            elif distinct_norms:
                if q in used_norms:
                    continue
                used_norms.add(q)
            seen.add(P)
            found.append(DegreeOnePrime(x, P, int(nm)))
            if len(found) >= want:
                return found
        if T >= trace_bound:
            raise BoundExhausted(
                f"found {len(found)} of {want} primes with trace <= {trace_bound:.1f}")
        lo, T = T, 2 * T
