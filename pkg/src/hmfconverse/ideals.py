"""Fractional ideals in Hermite normal form, factorization and narrow classes."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import factorint, primerange

from .errors import BoundExhausted, IncompleteFactorization, InvalidArgument
from .numfield import Field, FieldElement


def _egcd(a: int, b: int):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def hnf_lattice(vectors):
    """HNF (A, B, C) of the integer lattice spanned by pairs (x, y).

    The lattice is then Z(A, 0) + Z(B, C) with A, C > 0 and 0 <= B < A.
    Returns None if the lattice is not of full rank.
    """
    A = B = C = 0
    for x, y in vectors:
        if y != 0:
            if C == 0:
                B, C = x, y
            else:
                g, u, v = _egcd(C, y)
                z = (y // g) * B - (C // g) * x
                B, C = u * B + v * x, g
                A = math.gcd(A, z)
        else:
            A = math.gcd(A, x)
    if C < 0:
        B, C = -B, -C
    A = abs(A)
    if A == 0 or C == 0:
        return None
    return A, B % A, C


class FracIdeal:
    """(1/den) * (Z a + Z (b + c*omega)) in canonical form."""

    __slots__ = ("F", "a", "b", "c", "den", "_hash")

    def __init__(self, F: Field, a: int, b: int, c: int, den: int = 1):
        if a <= 0 or c <= 0 or den <= 0:
            raise InvalidArgument("zero or malformed ideal")
        g = math.gcd(math.gcd(a, b), math.gcd(c, den))
        self.F = F
        self.a, self.b, self.c, self.den = a // g, b // g, c // g, den // g
        self.b %= self.a
        self._hash = None

    @classmethod
    def from_hnf(cls, F: Field, a: int, b: int, c: int, den: int = 1) -> "FracIdeal":
        I = cls(F, a, b, c, den)
        if not I._is_ideal():
            raise InvalidArgument(f"HNF ({a},{b},{c}) is not an ideal of {F}")
        return I

    @classmethod
    def from_generators(cls, F: Field, gens) -> "FracIdeal":
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            raise InvalidArgument("zero ideal")
        elems = []
        for g in gens:
            elems.append(g)
            elems.append(g * F.omega)
        return cls._from_zspan(F, elems)

    @classmethod
    def _from_zspan(cls, F: Field, elems) -> "FracIdeal":
        L = 1
        for e in elems:
            L = _lcm(L, _lcm(e.x.denominator, e.y.denominator))
        vecs = [(int(e.x * L), int(e.y * L)) for e in elems]
        h = hnf_lattice(vecs)
        if h is None:
            raise InvalidArgument("generators do not span a full-rank module")
        return cls(F, h[0], h[1], h[2], L)

    @classmethod
    def principal(cls, x: FieldElement) -> "FracIdeal":
        return cls.from_generators(x.F, [x])

    @classmethod
    def unit(cls, F: Field) -> "FracIdeal":
        return cls(F, 1, 0, 1, 1)

    def _is_ideal(self) -> bool:
        num = FracIdeal(self.F, self.a, self.b, self.c)
        w = self.F.omega
        for v in num.basis():
            if not num.contains(v * w):
                return False
        return self.a % self.c == 0 and self.b % self.c == 0

    @property
    def hnf(self):
        return (self.a, self.b, self.c)

    def key(self):
        return (self.a, self.b, self.c, self.den)

    def __repr__(self):
        if self.den == 1:
            return f"FracIdeal({self.a},{self.b},{self.c}; D={self.F.D})"
        return f"FracIdeal({self.a},{self.b},{self.c})/{self.den}; D={self.F.D}"

    def __eq__(self, other):
        return (isinstance(other, FracIdeal) and self.F == other.F
                and self.key() == other.key())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.F.D,) + self.key())
        return self._hash

    def __lt__(self, other):
        return (self.norm(), self.key()) < (other.norm(), other.key())

    def basis(self):
        d = Fraction(1, self.den)
        F = self.F
        return (FieldElement(F, self.a * d, 0), FieldElement(F, self.b * d, self.c * d))

    def norm(self) -> Fraction:
        return Fraction(self.a * self.c, self.den * self.den)

    def is_integral(self) -> bool:
        return self.den == 1

    def is_unit_ideal(self) -> bool:
        return self.key() == (1, 0, 1, 1)

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            other = FracIdeal.principal(other)
        if not isinstance(other, FracIdeal):
            return NotImplemented
        if other.F != self.F:
            raise InvalidArgument("ideals of different fields")
        u1, u2 = self.basis()
        v1, v2 = other.basis()
        return FracIdeal._from_zspan(self.F, [u1 * v1, u1 * v2, u2 * v1, u2 * v2])

    __rmul__ = __mul__

    def conj(self) -> "FracIdeal":
        return FracIdeal._from_zspan(self.F, [v.conj() for v in self.basis()])

    def inverse(self) -> "FracIdeal":
        nm = self.norm()
        return FracIdeal._from_zspan(self.F, [v.conj() / nm for v in self.basis()])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.F(other)
        if isinstance(other, FieldElement):
            other = FracIdeal.principal(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = FracIdeal.unit(self.F)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def contains(self, x: FieldElement) -> bool:
        X, Y = x.x * self.den, x.y * self.den
        if X.denominator != 1 or Y.denominator != 1:
            return False
        X, Y = X.numerator, Y.numerator
        if Y % self.c:
            return False
        n = Y // self.c
        return (X - n * self.b) % self.a == 0

    def __contains__(self, x):
        return self.contains(x)

    def contains_ideal(self, other: "FracIdeal") -> bool:
        return all(self.contains(v) for v in other.basis())

    def divides(self, other: "FracIdeal") -> bool:
        """self | other, i.e. other = self * (integral ideal)."""
        return self.contains_ideal(other)

    def coordinates(self, x: FieldElement):
        """Integer coordinates (m, n) of x in the Z-basis, or None."""
        X, Y = x.x * self.den, x.y * self.den
        if X.denominator != 1 or Y.denominator != 1:
            return None
        X, Y = X.numerator, Y.numerator
        if Y % self.c:
            return None
        n = Y // self.c
        if (X - n * self.b) % self.a:
            return None
        return ((X - n * self.b) // self.a, n)

    def residues(self):
        """Representatives of O/I for integral I."""
        if self.den != 1:
            raise InvalidArgument("residues of a non-integral ideal")
        F = self.F
        return [FieldElement(F, x, y) for y in range(self.c) for x in range(self.a)]

    def reduce(self, x: FieldElement) -> FieldElement:
        """Canonical representative of x modulo the integral ideal self."""
        if self.den != 1 or not x.is_integral():
            raise InvalidArgument("reduction needs integral data")
        X, Y = int(x.x), int(x.y)
        n = Y // self.c
        Y -= n * self.c
        X -= n * self.b
        X %= self.a
        return FieldElement(self.F, X, Y)


def ideal_algebra(a: FracIdeal, b=None, kind: str = "product", x=None):
    if kind == "product":
        return a * b
    if kind == "inverse":
        return a.inverse()
    if kind == "norm":
        return a.norm()
    if kind == "divides":
        return a.divides(b)
    if kind == "contains_element":
        return a.contains(x)
    raise InvalidArgument(f"unknown ideal operation {kind!r}")


@dataclass(frozen=True)
class PrimeIdeal:
    ideal: FracIdeal
    p: int
    e: int
    f: int

    @property
    def norm(self) -> int:
        return self.p ** self.f

    @property
    def degree_one(self) -> bool:
        return self.e == 1 and self.f == 1


_prime_cache: dict = {}


def primes_above(F: Field, p: int):
    key = (F.D, p)
    if key in _prime_cache:
        return _prime_cache[key]
    roots = [r for r in range(p) if (r * r - F.t * r - F.n) % p == 0] if p < 50 else None
    if roots is None:
        if F.discriminant % p == 0:
            # double root of x^2 - t x - n
            roots = [(F.t * pow(2, -1, p)) % p]
        elif pow(F.discriminant % p, (p - 1) // 2, p) == 1:
            from sympy.ntheory import sqrt_mod
            s = sqrt_mod(F.discriminant % p, p)
            inv2 = pow(2, -1, p)
            roots = sorted({((F.t + s) * inv2) % p, ((F.t - s) * inv2) % p})
        else:
            roots = []
    if F.discriminant % p == 0:
        r = roots[0]
        out = [PrimeIdeal(FracIdeal(F, p, (-r) % p, 1), p, 2, 1)]
    elif len(roots) == 2:
        out = [PrimeIdeal(FracIdeal(F, p, (-r) % p, 1), p, 1, 1) for r in roots]
        out.sort(key=lambda P: P.ideal.key())
    else:
        out = [PrimeIdeal(FracIdeal(F, p, 0, p), p, 1, 2)]
    _prime_cache[key] = out
    return out


def prime_ideal_data(P: FracIdeal):
    """PrimeIdeal record for a prime ideal P, or None if P is not prime."""
    if not P.is_integral():
        return None
    nm = int(P.norm())
    fac = factorint(nm)
    if len(fac) != 1:
        return None
    p = next(iter(fac))
    for Q in primes_above(P.F, p):
        if Q.ideal == P:
            return Q
    return None


def valuation(I: FracIdeal, P: PrimeIdeal) -> int:
    """v_P(I) for a fractional ideal I."""
    num = FracIdeal(I.F, I.a, I.b, I.c)
    v = 0
    Pinv = P.ideal.inverse()
    while P.ideal.divides(num):
        num = num * Pinv
        v += 1
    d = I.den
    dv = 0
    while d % P.p == 0:
        d //= P.p
        dv += 1
    return v - dv * P.e


def factor_small(I: FracIdeal, norm_bound: int | None = None):
    """Prime factorization as a list of (PrimeIdeal, exponent), sorted."""
    num_norm = I.a * I.c
    ps = set(factorint(num_norm)) | set(factorint(I.den))
    ps.discard(1)
    out = []
    for p in sorted(ps):
        if norm_bound is not None and p > norm_bound:
            raise IncompleteFactorization(
                f"rational prime {p} exceeds norm bound {norm_bound}")
        for P in primes_above(I.F, p):
            v = valuation(I, P)
            if v:
                out.append((P, v))
    check = FracIdeal.unit(I.F)
    for P, v in out:
        check = check * P.ideal ** v
    if check != I:
        raise IncompleteFactorization(f"factorization of {I} did not reconstruct it")
    return out


def prime_ideals_up_to(F: Field, X: int):
    out = []
    for p in primerange(2, X + 1):
        for P in primes_above(F, p):
            if P.norm <= X:
                out.append(P)
    out.sort(key=lambda P: (P.norm, P.ideal.key()))
    return out


def ideals_up_to(F: Field, X: int):
    """All integral ideals of norm <= X as (ideal, factorization) pairs."""
    primes = prime_ideals_up_to(F, X)
    results = []

    def dfs(start, ideal, nm, fac):
        results.append((ideal, tuple(fac)))
        for i in range(start, len(primes)):
            P = primes[i]
            if nm * P.norm > X:
                break
            J, n2, e = ideal, nm, 0
            while n2 * P.norm <= X:
                J = J * P.ideal
                n2 *= P.norm
                e += 1
                dfs(i + 1, J, n2, fac + [(P, e)])

    dfs(0, FracIdeal.unit(F), 1, [])
    results.sort(key=lambda t: (t[0].norm(), t[0].key()))
    return results


# -- lattice enumeration in embedding space ---------------------------------

def lattice_points(v1: FieldElement, v2: FieldElement, offset: FieldElement,
                   constraints, bbox, pad: float = 1e-9):
    """Points offset + m v1 + n v2 whose embeddings (X, Y) may satisfy every
    constraint alpha*X + beta*Y <= gamma.  bbox = (xmin, xmax, ymin, ymax)
    must contain the region.  Floating point with padding: callers filter
    exactly."""
    p1, p2 = v1.embed_float()
    q1, q2 = v2.embed_float()
    o1, o2 = offset.embed_float()
    det = p1 * q2 - q1 * p2
    if det == 0:
        raise InvalidArgument("degenerate lattice basis")
    # n = (p1*(Y-o2) - p2*(X-o1)) / det
    xmin, xmax, ymin, ymax = bbox
    ns = [(p1 * (Y - o2) - p2 * (X - o1)) / det
          for X in (xmin, xmax) for Y in (ymin, ymax)]
    scale = max(abs(xmin), abs(xmax), abs(ymin), abs(ymax), 1.0)
    cons = list(constraints) + [(1, 0, xmax), (-1, 0, -xmin), (0, 1, ymax), (0, -1, -ymin)]
    for n in range(math.floor(min(ns) - 1e-9 * scale), math.ceil(max(ns) + 1e-9 * scale) + 1):
        lo, hi = -math.inf, math.inf
        ok = True
        for al, be, ga in cons:
            k = al * p1 + be * p2
            rhs = ga - al * (o1 + n * q1) - be * (o2 + n * q2)
            tol = pad * (abs(ga) + abs(al * (o1 + n * q1)) + abs(be * (o2 + n * q2)) + 1)
            if abs(k) < 1e-300:
                if rhs < -tol:
                    ok = False
                    break
                continue
            bound = (rhs + tol) / k
            if k > 0:
                hi = min(hi, bound)
            else:
                lo = max(lo, (rhs + tol) / k)
        if not ok or lo > hi:
            continue
        for m in range(math.ceil(lo - 1e-12), math.floor(hi + 1e-12) + 1):
            yield offset + v1 * m + v2 * n


def elements_in_box(I: FracIdeal, bound: float):
    """Nonzero elements x of I with |x^(1)|, |x^(2)| <= bound."""
    v1, v2 = I.basis()
    zero = I.F.zero
    for x in lattice_points(v1, v2, zero, [], (-bound, bound, -bound, bound)):
        if not x.is_zero():
            yield x


def generators(I: FracIdeal):
    """Generators of I, up to sign, with both embeddings <= sqrt(N(I) eps1).

    Every generator is a unit multiple of one of these, so an empty list
    means I is not principal.
    """
    nm = I.norm()
    e1 = I.F.eps1.embed_float()[0]
    bound = math.sqrt(float(nm) * e1) * (1 + 1e-9) + 1e-12
    seen = set()
    out = []
    for x in elements_in_box(I, bound):
        if abs(x.norm()) == nm:
            k = (x.x, x.y) if (x.x, x.y) > (-x.x, -x.y) else (-x.x, -x.y)
            if k not in seen:
                seen.add(k)
                out.append(x)
    return out


def canonical_tp_associate(x: FieldElement) -> FieldElement:
    """Minimal-trace element of {x eps1^k}, ties broken by coordinates."""
    F = x.F
    e = F.eps1
    einv = e.inverse()
    x1, x2 = x.embed_float()
    le = math.log(e.embed_float()[0])
    k = round(-math.log(x1 / x2) / (2 * le)) if x1 > 0 and x2 > 0 else 0
    y = x * (e ** k)

    def key(z):
        return (z.trace(), z.x, z.y)

    while True:
        best = min((y, y * e, y * einv), key=key)
        if best is y:
            return y
        y = best


def totally_positive_generator(I: FracIdeal):
    """Canonical totally positive generator of I, or None if none exists."""
    F = I.F
    u = F.fundamental_unit
    cands = []
    for g in generators(I):
        if g.norm() < 0:
            if u.norm() != -1:
                continue
            g = g * u
        if g.trace() < 0:
            g = -g
        cands.append(canonical_tp_associate(g))
    if not cands:
        return None
    return min(cands, key=lambda z: (z.trace(), z.x, z.y))


def principal_generator(I: FracIdeal):
    gens = generators(I)
    if not gens:
        return None
    return min(gens, key=lambda z: (abs(z.trace()), z.x, z.y))


def minkowski_bound(F: Field) -> float:
    return math.sqrt(F.discriminant) / 2


# -- narrow class group ------------------------------------------------------

@dataclass
class NarrowClassData:
    F: Field
    h: int
    wide_h: int
    reps: list
    rep_primes: list
    level: FracIdeal
    pairing: list = field(default_factory=list)
    q: list = field(default_factory=list)
    table: list = field(default_factory=list)
    _class_cache: dict = field(default_factory=dict, repr=False)

    def class_of(self, I: FracIdeal):
        """(lambda, xi) with I = reps[lambda] * (xi), xi totally positive."""
        hit = self._class_cache.get(I)
        if hit is not None:
            return hit
        for lam, T in enumerate(self.reps):
            xi = totally_positive_generator(I / T)
            if xi is not None:
                self._class_cache[I] = (lam, xi)
                return lam, xi
        raise InvalidArgument(f"{I} is not equivalent to any representative")

    def class_index(self, I: FracIdeal) -> int:
        return self.class_of(I)[0]

    def class_from_factorization(self, fac) -> int:
        c = 0
        for P, e in fac:
            pc = self.class_index(P.ideal)
            for _ in range(e % self.h if self.h else 0):
                c = self.table[c][pc]
        return c

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse_class(self, i: int) -> int:
        for j in range(self.h):
            if self.table[i][j] == 0:
                return j
        raise AssertionError("class table is not a group")

    def with_level(self, level: FracIdeal) -> "NarrowClassData":
        data = NarrowClassData(self.F, self.h, self.wide_h, self.reps, self.rep_primes,
                               level, table=self.table)
        data._class_cache = self._class_cache
        data._compute_pairing()
        return data

    def _compute_pairing(self):
        self.pairing, self.q = [], []
        for lam, T in enumerate(self.reps):
            found = None
            for mu, S in enumerate(self.reps):
                g = totally_positive_generator(T * S * self.level)
                if g is not None:
                    found = (mu, g)
                    break
            if found is None:
                raise InvalidArgument("no pairing partner found")
            self.pairing.append(found[0])
            self.q.append(found[1])


def narrow_class_group(F: Field, level: FracIdeal | None = None,
                       search_bound: int = 1000) -> NarrowClassData:
    if level is None:
        level = FracIdeal.unit(F)
    mb = minkowski_bound(F)
    if search_bound < mb:
        raise InvalidArgument("search bound below the Minkowski bound")
    # wide class number from ideals below the Minkowski bound
    small = [I for I, _ in ideals_up_to(F, int(math.floor(mb)))]
    wide = []
    for I in small:
        if not any(generators(I / J) for J in wide):
            wide.append(I)
    wide_h = len(wide)
    h = wide_h if F.fundamental_unit.norm() == -1 else 2 * wide_h

    reps, rep_primes = [], []
    if h == 1:
        reps, rep_primes = [FracIdeal.unit(F)], [None]
    else:
        cands = [P for p in primerange(2, search_bound + 1)
                 for P in primes_above(F, p) if P.degree_one]
        principal = next((P for P in cands
                          if totally_positive_generator(P.ideal) is not None), None)
        if principal is not None:
            reps.append(principal.ideal)
            rep_primes.append(principal)
            for P in cands:
                if len(reps) == h:
                    break
                if any(totally_positive_generator(P.ideal / T) is not None for T in reps):
                    continue
                reps.append(P.ideal)
                rep_primes.append(P)
        if len(reps) < h:
            raise BoundExhausted(
                f"found {len(reps)} of {h} prime representatives below {search_bound}")
    data = NarrowClassData(F, h, wide_h, reps, rep_primes, level)
    data.table = [[data.class_index(reps[i] * reps[j]) for j in range(h)] for i in range(h)]
    data._compute_pairing()
    return data
