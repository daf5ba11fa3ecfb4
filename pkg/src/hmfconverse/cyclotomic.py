"""Exact arithmetic in cyclotomic fields and exponential-sum determinants.

Elements of Q(zeta_M) are stored on the tensor basis coming from
Q(zeta_M) = (x) Q(zeta_{p^k}) over the prime powers p^k || M, each factor
with its power basis zeta_{p^k}^c, 0 <= c < phi(p^k).  This basis is
canonical, so the zero test is a coefficient test, and a single root of
unity never expands into more than prod (p-1) basis terms.
"""
from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from functools import lru_cache

from sympy import factorint, isprime, mobius, totient

from .errors import InvalidArgument


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod(num, den):
    """Exact division over Q, coefficients low -> high."""
    num = [Fraction(c) for c in num]
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1] / lead
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    rem = num[:len(den) - 1]
    while rem and rem[-1] == 0:
        rem.pop()
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(M: int):
    """Coefficients (low -> high) of Phi_M via the Moebius product formula."""
    num, den = [1], [1]
    for d in range(1, M + 1):
        if M % d:
            continue
        mu = int(mobius(M // d))
        f = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = _poly_mul(num, f)
        elif mu == -1:
            den = _poly_mul(den, f)
    q, rem = _poly_divmod(num, den)
    assert not rem
    out = [int(c) for c in q]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@lru_cache(maxsize=None)
def _structure(M: int):
    facs = sorted(factorint(M).items()) if M > 1 else []
    comps = []
    for p, k in facs:
        q = p ** k
        inv = pow(M // q, -1, q)
        comps.append((p, k, q, inv))
    return tuple(comps)


@lru_cache(maxsize=None)
def _reduce_component(p: int, k: int, c: int):
    """zeta_{p^k}^c on the power basis 0 <= c' < phi(p^k)."""
    q = p ** k
    phi = q - q // p
    c %= q
    if c < phi:
        return ((c, 1),)
    r = c - phi
    step = q // p
    return tuple((i * step + r, -1) for i in range(p - 1))


class CycloElement:
    __slots__ = ("M", "terms")

    def __init__(self, M: int, terms=None):
        if M < 1:
            raise InvalidArgument("modulus must be positive")
        self.M = M
        self.terms = {}
        if terms:
            for k, v in terms.items():
                if v:
                    self.terms[k] = Fraction(v)

    # construction
    @classmethod
    def rational(cls, M: int, value) -> "CycloElement":
        key = tuple(0 for _ in _structure(M))
        return cls(M, {key: Fraction(value)})

    @classmethod
    def root(cls, M: int, e: int) -> "CycloElement":
        """zeta_M^e."""
        return cls._from_exponents(M, {e % M: Fraction(1)})

    @classmethod
    def _from_exponents(cls, M: int, exps) -> "CycloElement":
        comps = _structure(M)
        terms = {}
        for e, coeff in exps.items():
            if not coeff:
                continue
            parts = [_reduce_component(p, k, e * inv) for p, k, q, inv in comps]
            for combo in itertools.product(*parts):
                key = tuple(c for c, _ in combo)
                sign = 1
                for _, s in combo:
                    sign *= s
                terms[key] = terms.get(key, 0) + sign * coeff
        return cls(M, terms)

    def exponent_of(self, key) -> int:
        comps = _structure(self.M)
        return sum(c * (self.M // q) for c, (p, k, q, inv) in zip(key, comps)) % self.M

    # arithmetic
    def _align(self, other):
        if isinstance(other, (int, Fraction)):
            return self, CycloElement.rational(self.M, other)
        if self.M == other.M:
            return self, other
        L = self.M * other.M // math.gcd(self.M, other.M)
        return self.embed(L), other.embed(L)

    def embed(self, L: int) -> "CycloElement":
        if L % self.M:
            raise InvalidArgument(f"cannot embed Q(zeta_{self.M}) into Q(zeta_{L})")
        if L == self.M:
            return self
        f = L // self.M
        exps = {}
        for key, v in self.terms.items():
            e = self.exponent_of(key) * f % L
            exps[e] = exps.get(e, 0) + v
        return CycloElement._from_exponents(L, exps)

    def __add__(self, other):
        a, b = self._align(other)
        terms = dict(a.terms)
        for k, v in b.terms.items():
            terms[k] = terms.get(k, 0) + v
        return CycloElement(a.M, terms)

    __radd__ = __add__

    def __neg__(self):
        return CycloElement(self.M, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, CycloElement) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._align(other)
        comps = _structure(a.M)
        acc = {}
        for k1, v1 in a.terms.items():
            for k2, v2 in b.terms.items():
                coeff = v1 * v2
                parts = [_reduce_component(p, k, c1 + c2)
                         for (p, k, q, inv), c1, c2 in zip(comps, k1, k2)]
                if all(len(pt) == 1 for pt in parts):
                    key = tuple(pt[0][0] for pt in parts)
                    sign = 1
                    for pt in parts:
                        sign *= pt[0][1]
                    acc[key] = acc.get(key, 0) + sign * coeff
                    continue
                for combo in itertools.product(*parts):
                    key = tuple(c for c, _ in combo)
                    sign = 1
                    for _, s in combo:
                        sign *= s
                    acc[key] = acc.get(key, 0) + sign * coeff
        return CycloElement(a.M, acc)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise InvalidArgument("negative powers are not supported")
        result = CycloElement.rational(self.M, 1)
        for _ in range(e):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloElement.rational(self.M, other)
        if not isinstance(other, CycloElement):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("CycloElement is not hashable")

    def __repr__(self):
        return f"CycloElement(M={self.M}, terms={len(self.terms)})"

    def rational_value(self):
        """The value as a Fraction if the element is rational, else None."""
        zero = tuple(0 for _ in _structure(self.M))
        if not self.terms:
            return Fraction(0)
        if set(self.terms) == {zero}:
            return self.terms[zero]
        return None

    def degree(self) -> int:
        return int(totient(self.M))

    @property
    def coeffs(self):
        """Coefficient vector on the power basis zeta_M^i, i < phi(M)."""
        poly = [Fraction(0)] * self.M
        for key, v in self.terms.items():
            poly[self.exponent_of(key)] += v
        _, rem = _poly_divmod(poly, list(cyclotomic_polynomial(self.M)))
        rem = rem + [Fraction(0)] * (self.degree() - len(rem))
        return rem

    def to_complex(self):
        import cmath
        total = 0
        for key, v in self.terms.items():
            total += float(v) * cmath.exp(2j * math.pi * self.exponent_of(key) / self.M)
        return total


def cyclo_arith(x: CycloElement, y=None, kind: str = "add", L: int | None = None):
    if kind == "add":
        return x + y
    if kind == "mul":
        return x * y
    if kind == "embed_into_larger_M":
        return x.embed(L)
    raise InvalidArgument(f"unknown operation {kind!r}")


def determinant(rows):
    """Division-free cofactor expansion along the first row."""
    n = len(rows)
    if n == 0:
        return None
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = rows[0][j] * determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return CycloElement.rational(rows[0][0].M, 0)
    return total


def exponential_sum(q: int, m: int, n: int, s, L: int) -> CycloElement:
    """sum_{a in s} e(n a / (m q)) inside Q(zeta_L)."""
    f = L // (m * q)
    exps = {}
    for a in s:
        e = (n * a * f) % L
        exps[e] = exps.get(e, 0) + 1
    return CycloElement._from_exponents(L, exps)


def check_hypotheses(qs, ms, ns, s):
    u = len(qs)
    violations = []
    if len(set(qs)) != u or not all(isprime(q) for q in qs):
        violations.append("distinct primes")
    if any((m * n) % q == 0 for q, m, n in zip(qs, ms, ns)):
        violations.append("q_j divides m_j n_j")
    if any(m % q == 0 for q in qs for m in ms):
        violations.append("q_i divides some m_j")
    for j in range(u):
        for i in range(u):
            for i2 in range(i):
                if set(s[i][j]) & set(s[i2][j]):
                    if "overlapping sets in a column" not in violations:
                        violations.append("overlapping sets in a column")
    if any(not s[j][j] for j in range(u)):
        violations.append("empty diagonal set")
    return violations


def nonzerodet_check(qs, ms, ns, s):
    """Exact determinant of S_{i,j} = sum_{a in s[i][j]} e(n_j a / (m_j q_j))."""
    u = len(qs)
    if not (len(ms) == len(ns) == u and len(s) == u and all(len(row) == u for row in s)):
        raise InvalidArgument("inconsistent instance dimensions")
    for i in range(u):
        for j in range(u):
            if any(not (1 <= a <= qs[j] - 1) for a in s[i][j]):
                raise InvalidArgument(f"s[{i}][{j}] is not inside 1..q_{j}-1")
    violations = check_hypotheses(qs, ms, ns, s)
    L = 1
    for q, m in zip(qs, ms):
        L = L * (m * q) // math.gcd(L, m * q)
    rows = [[exponential_sum(qs[j], ms[j], ns[j], s[i][j], L) for j in range(u)]
            for i in range(u)]
    det = determinant(rows)
    return {
        "status": "zero" if det.is_zero() else "nonzero",
        "det": det,
        "modulus": L,
        "violations": violations,
    }


def normalize_pair(m: int, n: int):
    """Replace (m, n) by the coprime pair with the same ratio n/m."""
    g = math.gcd(m, n)
    return m // g, n // g


def random_valid_instance(rng: random.Random, u_max: int = 3, q_max: int = 13,
                          m_max: int = 6):
    """An instance with distinct primes q_j coprime to every m_i and m_j n_j,
    disjoint sets in each column and nonempty diagonal sets."""
    primes = [q for q in range(2, q_max + 1) if isprime(q)]
    while True:
        u = rng.randint(1, u_max)
        qs = rng.sample(primes, u)
        ms = [rng.randint(1, m_max) for _ in range(u)]
        if any(m % q == 0 for q in qs for m in ms):
            continue
        ns = []
        for q in qs:
            n = rng.randint(1, 3 * q)
            while n % q == 0:
                n = rng.randint(1, 3 * q)
            ns.append(n)
        s = [[None] * u for _ in range(u)]
        for j, q in enumerate(qs):
            pool = list(range(1, q))
            rng.shuffle(pool)
            # s[j][j] gets at least one element, the rest are split randomly
            cuts = {j: [pool.pop()]}
            for a in pool:
                i = rng.randrange(u + 1)
                if i < u:
                    cuts.setdefault(i, []).append(a)
            for i in range(u):
                s[i][j] = sorted(cuts.get(i, []))
        return qs, ms, ns, s
