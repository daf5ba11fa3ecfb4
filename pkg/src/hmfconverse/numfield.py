"""Exact arithmetic in real quadratic fields Q(sqrt(D))."""
from __future__ import annotations

import os
from fractions import Fraction
from functools import cached_property
from math import isqrt

import mpmath

from .errors import BoundExhausted, InvalidArgument, InvalidField

GUARD_BITS = 16


def default_precision() -> int:
    env = os.environ.get("HC_PREC_BITS")
    if env:
        try:
            bits = int(env)
        except ValueError:
            raise InvalidArgument(f"HC_PREC_BITS must be an integer, got {env!r}")
        if bits < 24:
            raise InvalidArgument("HC_PREC_BITS must be at least 24")
        return bits
    return 128


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    n = abs(n)
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        if n % d == 0:
            n //= d
        d += 1
    return True


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"cannot use {type(v).__name__} as an exact coordinate")


class Field:
    """The real quadratic field Q(sqrt(D)) with integral basis (1, omega).

    omega satisfies omega^2 = t*omega + n with (t, n) = (1, (D-1)/4) when
    D = 1 mod 4 and (0, D) otherwise.  The first embedding sends sqrt(D)
    to the positive square root.
    """

    r = 2

    def __init__(self, D: int, precision_bits: int | None = None,
                 unit_search_bound: int = 10**7):
        if not isinstance(D, int) or D <= 1 or not is_squarefree(D):
            raise InvalidField(f"D must be a squarefree integer > 1, got {D!r}")
        self.D = D
        if D % 4 == 1:
            self.t, self.n = 1, (D - 1) // 4
            self.discriminant = D
        else:
            self.t, self.n = 0, D
            self.discriminant = 4 * D
        self.precision_bits = precision_bits or default_precision()
        self.unit_search_bound = unit_search_bound
        self.zero = FieldElement(self, 0, 0)
        self.one = FieldElement(self, 1, 0)
        self.omega = FieldElement(self, 0, 1)
        self.integral_basis = (self.one, self.omega)
        self.fundamental_unit = self._find_fundamental_unit()
        u = self.fundamental_unit
        self.eps1 = u if u.norm() == 1 else u * u

    def __repr__(self):
        return f"Field(D={self.D})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.D == self.D

    def __hash__(self):
        return hash(("Field", self.D))

    def __call__(self, x=0, y=0) -> "FieldElement":
        return FieldElement(self, x, y)

    @property
    def sqrtD(self) -> "FieldElement":
        if self.t == 1:
            return FieldElement(self, -1, 2)
        return self.omega

    def from_sqrt(self, a, b) -> "FieldElement":
        """The element a + b*sqrt(D)."""
        a, b = _as_fraction(a), _as_fraction(b)
        return self.one * a + self.sqrtD * b

    def _find_fundamental_unit(self) -> "FieldElement":
        # smallest unit > 1, by increasing sqrt(D)-coefficient
        D = self.D
        target = 4 if self.t == 1 else 1
        for b in range(1, self.unit_search_bound + 1):
            db2 = D * b * b
            for sign in (-1, 1):
                a2 = db2 + sign * target
                if a2 <= 0:
                    continue
                a = isqrt(a2)
                if a * a == a2:
                    if self.t == 1:
                        return self.from_sqrt(Fraction(a, 2), Fraction(b, 2))
                    return self.from_sqrt(a, b)
        raise BoundExhausted(f"no unit found with sqrt(D)-coefficient <= {self.unit_search_bound}")

    @cached_property
    def different(self):
        from .ideals import FracIdeal
        gen = self.sqrtD if self.t == 1 else self.sqrtD * 2
        return FracIdeal.principal(gen)

    @cached_property
    def _sqrt_cache(self):
        return {}

    def sqrt_value(self, prec: int):
        cache = self._sqrt_cache
        if prec not in cache:
            with mpmath.workprec(prec):
                cache[prec] = mpmath.sqrt(self.D)
        return cache[prec]

    def omega_embeddings(self, prec: int):
        s = self.sqrt_value(prec)
        with mpmath.workprec(prec):
            if self.t == 1:
                return ((1 + s) / 2, (1 - s) / 2)
            return (+s, -s)


class FieldElement:
    """x + y*omega with exact rational coordinates."""

    __slots__ = ("F", "x", "y")

    def __init__(self, F: Field, x=0, y=0):
        self.F = F
        self.x = _as_fraction(x)
        self.y = _as_fraction(y)

    @property
    def coords(self):
        return (self.x, self.y)

    def __repr__(self):
        return f"FieldElement({self.x}, {self.y}; D={self.F.D})"

    def __str__(self):
        return f"{self.x} + {self.y}*w"

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.F != self.F:
                raise InvalidArgument("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.F, other, 0)
        return NotImplemented

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.x == o.x and self.y == o.y

    def __hash__(self):
        return hash((self.F.D, self.x, self.y))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.F, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.F, -self.x, -self.y)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.F, self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        F = self.F
        yy = self.y * o.y
        return FieldElement(F, self.x * o.x + F.n * yy,
                            self.x * o.y + self.y * o.x + F.t * yy)

    __rmul__ = __mul__

    def conj(self) -> "FieldElement":
        return FieldElement(self.F, self.x + self.F.t * self.y, -self.y)

    def trace(self) -> Fraction:
        return 2 * self.x + self.F.t * self.y

    def norm(self) -> Fraction:
        F = self.F
        return self.x * self.x + F.t * self.x * self.y - F.n * self.y * self.y

    def inverse(self) -> "FieldElement":
        nm = self.norm()
        if nm == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conj()
        return FieldElement(self.F, c.x / nm, c.y / nm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self.F.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def is_rational(self) -> bool:
        return self.y == 0

    def is_unit(self) -> bool:
        return self.is_integral() and abs(self.norm()) == 1

    def is_totally_positive(self) -> bool:
        # both conjugates positive  <=>  trace > 0 and norm > 0
        return self.trace() > 0 and self.norm() > 0

    def embed(self, prec: int | None = None):
        """Both real embeddings, each with relative error about 2^-prec."""
        prec = prec or self.F.precision_bits
        wp = prec + GUARD_BITS
        w1, w2 = self.F.omega_embeddings(wp)
        with mpmath.workprec(wp):
            x = mpmath.mpf(self.x.numerator) / self.x.denominator
            y = mpmath.mpf(self.y.numerator) / self.y.denominator
            e1 = x + y * w1
            e2 = x + y * w2
            if self.y != 0 and self.x != 0:
                # recover the smaller conjugate from the exact norm
                nm = self.norm()
                nm = mpmath.mpf(nm.numerator) / nm.denominator
                if abs(e1) < abs(e2):
                    e1 = nm / e2
                else:
                    e2 = nm / e1
        with mpmath.workprec(prec):
            return (+e1, +e2)

    def embed_float(self):
        e1, e2 = self.embed(64)
        return (float(e1), float(e2))

    def sigma(self, j: int, prec: int | None = None):
        return self.embed(prec)[j]


def embedding_power(x: FieldElement, exps) -> FieldElement:
    """Element w with w^(1) = prod_j (x^(j))^(e_j).

    For r=2, x^(1)^e1 x^(2)^e2 = x^(1)^(e1-e2) N(x)^e2, which is the first
    embedding of the field element x^(e1-e2) N(x)^e2.  This keeps products of
    mixed-embedding powers exact.
    """
    e1, e2 = exps
    return (x ** (e1 - e2)) * (x.norm() ** e2)


def element_data(x: FieldElement, prec: int | None = None):
    return (x.trace(), x.norm(), x.embed(prec), x.is_totally_positive())


def create_field(D: int, precision_bits: int | None = None) -> Field:
    return Field(D, precision_bits)


def log_embedding_matrix(F: Field, prec: int | None = None):
    """Rows (1, log eps1^(j)) and the determinant Delta."""
    prec = prec or F.precision_bits
    e1, e2 = F.eps1.embed(prec)
    with mpmath.workprec(prec):
        l1, l2 = mpmath.log(e1), mpmath.log(e2)
        matrix = [[mpmath.mpf(1), l1], [mpmath.mpf(1), l2]]
        delta = l2 - l1
    return matrix, delta


def unit_log(F: Field, prec: int | None = None):
    """log eps1^(1) at the given precision."""
    prec = prec or F.precision_bits
    e1, _ = F.eps1.embed(prec)
    with mpmath.workprec(prec):
        return mpmath.log(e1)
