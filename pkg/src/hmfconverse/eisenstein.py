"""Level one parallel weight Eisenstein series over Q(sqrt D) and the cusp
form E_2^3 - E_6 built from them.

For Q(sqrt 5) the space of parallel weight 6 cusp forms of level one is a
line, so the normalized form is a Hecke eigenform: genuine level one test
data with q = 1 in the Fricke involution.
"""
from __future__ import annotations

from fractions import Fraction

from sympy import Rational, bernoulli, kronecker_symbol, symbols

from .errors import InvalidArgument
from .ideals import FracIdeal, canonical_tp_associate, factor_small, ideals_up_to, \
    lattice_points, totally_positive_generator
from .lseries import CoefficientSequence, sequence_from_table
from .numfield import Field, FieldElement


def _kronecker(d: int, a: int) -> int:
    return int(kronecker_symbol(d, a))


def generalized_bernoulli(n: int, F: Field) -> Fraction:
    """B_{n, chi} for the quadratic character of F."""
    f = F.discriminant
    x = symbols("x")
    Bn = bernoulli(n, x)
    total = Rational(0)
    for a in range(1, f + 1):
        c = _kronecker(f, a)
        if c:
            total += c * Bn.subs(x, Rational(a, f))
    total *= Rational(f) ** (n - 1)
    return Fraction(int(total.p), int(total.q))


def dedekind_zeta_negative(F: Field, k: int) -> Fraction:
    """zeta_F(1 - k) for even k >= 2, as zeta(1-k) L(1-k, chi)."""
    if k < 2 or k % 2:
        raise InvalidArgument("k must be even and at least 2")
    zeta_q = Fraction(-int(bernoulli(k).p), int(bernoulli(k).q)) / k
    L = -generalized_bernoulli(k, F) / k
    return zeta_q * L


def divisor_power_sum(I: FracIdeal, e: int) -> int:
    total = 1
    for P, v in factor_small(I):
        Nq = P.norm ** e
        total *= sum(Nq ** i for i in range(v + 1))
    return total


class EisensteinSeries:
    """E_k = 1 + (4 / zeta_F(1-k)) sum_{nu in d^-1, nu >> 0} sigma_{k-1}(nu d) q^nu."""

    def __init__(self, F: Field, k: int):
        self.F, self.k = F, k
        self.scale = Fraction(4) / dedekind_zeta_negative(F, k)
        self.dinv = F.different.inverse()

    def coefficient(self, nu: FieldElement) -> Fraction:
        if nu.is_zero():
            return Fraction(1)
        if not nu.is_totally_positive() or not self.dinv.contains(nu):
            return Fraction(0)
        return self.scale * divisor_power_sum(FracIdeal.principal(nu) * self.F.different,
                                              self.k - 1)


def cone_below(dinv: FracIdeal, nu: FieldElement):
    """Elements mu of dinv with mu and nu - mu totally positive or zero."""
    v1, v2 = dinv.basis()
    n1, n2 = nu.embed_float()
    for mu in lattice_points(v1, v2, nu.F.zero, [], (0, n1, 0, n2)):
        rest = nu - mu
        if (mu.is_zero() or mu.is_totally_positive()) and \
                (rest.is_zero() or rest.is_totally_positive()):
            yield mu


class ProductSeries:
    """Coefficients of the product of two q-expansions on d^-1 that are
    invariant under totally positive units."""

    def __init__(self, left, right):
        self.left, self.right = left, right
        self.F = left.F
        self.dinv = self.F.different.inverse()
        self._cache = {}

    def coefficient(self, nu: FieldElement) -> Fraction:
        if nu.is_zero():
            return self.left.coefficient(nu) * self.right.coefficient(nu)
        if not nu.is_totally_positive() or not self.dinv.contains(nu):
            return Fraction(0)
        key = canonical_tp_associate(nu)
        if key not in self._cache:
            total = Fraction(0)
            for mu in cone_below(self.dinv, key):
                a = self.left.coefficient(mu)
                if a:
                    total += a * self.right.coefficient(key - mu)
            self._cache[key] = total
        return self._cache[key]


def level_one_cusp_form_sequence(F: Field, cutoff: int) -> CoefficientSequence:
    """A(a) for the normalized parallel weight 6 cusp form (E_2^3 - E_6)/c.

    Only meaningful when that space is one-dimensional (Q(sqrt 5)); the
    multiplicativity of the result is checked by the caller.
    """
    E2, E6 = EisensteinSeries(F, 2), EisensteinSeries(F, 6)
    cube = ProductSeries(E2, ProductSeries(E2, E2))
    different = F.different
    xi0 = totally_positive_generator(different.inverse())
    if xi0 is None:
        raise InvalidArgument("the inverse different has no totally positive generator")

    def g(nu):
        return cube.coefficient(nu) - E6.coefficient(nu)

    c = g(xi0)
    if c == 0:
        raise InvalidArgument("E_2^3 - E_6 vanishes at the base coefficient")
    table = {}
    for I, _ in ideals_up_to(F, cutoff):
        nu = totally_positive_generator(I * different.inverse())
        if nu is None:
            raise InvalidArgument("narrow class number must be one")
        table[I] = g(nu) / c
    return sequence_from_table(F, 6, table, growth_c=2.5 + 0.01, provenance="explicit",
                               cutoff=cutoff, weight=(6, 6), level=FracIdeal.unit(F))
