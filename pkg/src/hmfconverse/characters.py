"""Class-group characters and the unramified Hecke characters psi_m."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .cyclotomic import CycloElement
from .errors import InvalidArgument
from .ideals import FracIdeal, NarrowClassData, totally_positive_generator
from .numfield import Field, FieldElement, unit_log


# -- finite abelian groups given by a Cayley table ---------------------------

def element_order(table, g: int) -> int:
    n, x = 1, g
    while x != 0:
        x = table[x][g]
        n += 1
    return n


def cyclic_basis(table):
    """Elements g_1..g_k with orders n_i such that (e_i) -> prod g_i^e_i is a
    bijection from prod Z/n_i onto the group.  Returns (gens, orders, coords)
    where coords[x] is the exponent vector of x."""
    h = len(table)
    if h == 1:
        return [], [], {0: ()}
    elems = list(range(1, h))
    for k in range(1, h):
        for gens in itertools.combinations(elems, k):
            orders = [element_order(table, g) for g in gens]
            if math.prod(orders) != h:
                continue
            coords = {}
            for exps in itertools.product(*[range(n) for n in orders]):
                x = 0
                for g, e in zip(gens, exps):
                    for _ in range(e):
                        x = table[x][g]
                coords.setdefault(x, exps)
            if len(coords) == h:
                return list(gens), orders, coords
    raise InvalidArgument("table does not describe a finite abelian group")


@dataclass
class ClassCharacter:
    """chi(x) = exp(2 pi i values[x]), values in [0, 1)."""
    values: tuple
    order: int

    def exponent(self, x: int) -> Fraction:
        return self.values[x]

    def value(self, x: int):
        return mpmath.expjpi(2 * mpmath.mpf(self.values[x].numerator) / self.values[x].denominator)

    def exact(self, x: int, M: int | None = None) -> CycloElement:
        M = M or self.order
        v = self.values[x]
        return CycloElement.root(M, int(v * M))

    def is_trivial(self) -> bool:
        return all(v == 0 for v in self.values)


def group_characters(table):
    """All characters of the group, trivial first, deterministic order."""
    gens, orders, coords = cyclic_basis(table)
    h = len(table)
    chars = []
    for ks in itertools.product(*[range(n) for n in orders]):
        vals = []
        for x in range(h):
            v = sum(Fraction(k * e, n) for k, e, n in zip(ks, coords[x], orders))
            vals.append(v - math.floor(v))
        order = 1
        for v in vals:
            order = math.lcm(order, v.denominator)
        chars.append(ClassCharacter(tuple(vals), order))
    return chars


def check_character(table, chi: ClassCharacter) -> bool:
    h = len(table)
    if chi.values[0] != 0:
        return False
    for x in range(h):
        for y in range(h):
            s = chi.values[x] + chi.values[y]
            if s - math.floor(s) != chi.values[table[x][y]]:
                return False
    return True


def _inverse(table, x):
    for y in range(len(table)):
        if table[x][y] == 0:
            return y
    raise InvalidArgument("no inverse")


def indicator_decomposition(table, C: int, twist_class: int | None = None):
    """alpha_chi with delta_C = sum alpha_chi chi, exactly.

    alpha_chi = conj(chi(C)) / h.  With twist_class = [n d^2] the twisted
    coefficients alpha_chi chi(n d^2) are also returned; they give the
    indicator of C^-1 [n d^2] when paired with conj(chi).
    """
    h = len(table)
    chars = group_characters(table)
    M = 1
    for chi in chars:
        M = math.lcm(M, chi.order)
    alpha = []
    for chi in chars:
        a = CycloElement.root(M, -int(chi.values[C] * M)) * Fraction(1, h)
        alpha.append(a)
    out = {"characters": chars, "alpha": alpha, "modulus": M}
    if twist_class is not None:
        out["twisted"] = [a * chi.exact(twist_class, M) for a, chi in zip(alpha, chars)]
        out["twisted_target"] = table[_inverse(table, C)][twist_class]
    return out


def reconstruct_indicator(decomp, x: int, twisted: bool = False) -> CycloElement:
    """sum_chi alpha_chi chi(x) (or the twisted sum with conj(chi))."""
    M = decomp["modulus"]
    total = CycloElement.rational(M, 0)
    coeffs = decomp["twisted"] if twisted else decomp["alpha"]
    for a, chi in zip(coeffs, decomp["characters"]):
        v = chi.values[x]
        if twisted:
            v = -v
        total = total + a * CycloElement.root(M, int(v * M))
    return total


# -- psi_m ---------------------------------------------------------------------

def nu_vector(F: Field, m: int, prec: int | None = None):
    """(nu_1, nu_2) with nu_1 = pi i m / log eps1^(1) = -nu_2."""
    prec = prec or F.precision_bits
    le = unit_log(F, prec)
    with mpmath.workprec(prec):
        nu1 = mpmath.mpc(0, mpmath.pi * m / le)
        return (nu1, -nu1)


def log_embeddings(xi: FieldElement, prec: int):
    e1, e2 = xi.embed(prec)
    with mpmath.workprec(prec):
        return mpmath.log(e1), mpmath.log(e2)


def power_minus_nu(xi: FieldElement, nu, prec: int):
    """xi^(-nu) = exp(-sum_j nu_j log xi^(j)) for totally positive xi."""
    if not xi.is_totally_positive():
        raise InvalidArgument("psi is only evaluated on totally positive generators")
    l1, l2 = log_embeddings(xi, prec)
    with mpmath.workprec(prec):
        return mpmath.exp(-(nu[0] * l1 + nu[1] * l2))


@dataclass
class PsiCharacter:
    F: Field
    group: NarrowClassData
    m: int
    nu: tuple
    prec: int
    branch: dict = field(default_factory=dict)
    basis: list = field(default_factory=list)
    _prime_cache: dict = field(default_factory=dict, repr=False)

    def linear_residuals(self):
        """|sum nu_j| and |sum nu_j log eps1^(j) - 2 pi i m|."""
        l1, l2 = log_embeddings(self.F.eps1, self.prec)
        with mpmath.workprec(self.prec):
            r1 = abs(self.nu[0] + self.nu[1])
            r2 = abs(self.nu[0] * l1 + self.nu[1] * l2 - 2j * mpmath.pi * self.m)
        return r1, r2


def build_psi_family(F: Field, m: int, group: NarrowClassData | None = None,
                     prec: int | None = None) -> PsiCharacter:
    from .ideals import narrow_class_group
    prec = prec or F.precision_bits
    if group is None:
        group = narrow_class_group(F)
    nu = nu_vector(F, m, prec)
    psi = PsiCharacter(F, group, m, nu, prec)
    gens, orders, coords = cyclic_basis(group.table)
    roots = []
    for g, n in zip(gens, orders):
        # forced value on the totally positive generator of t_g^n, divided
        # through the real logarithms so that the branch is linear in m
        gen = totally_positive_generator(group.reps[g] ** n)
        l1, l2 = log_embeddings(gen, prec)
        with mpmath.workprec(prec):
            root = mpmath.exp(-(nu[0] * l1 + nu[1] * l2) / n)
        roots.append(root)
        psi.basis.append((g, n, gen))
    for lam, T in enumerate(group.reps):
        exps = coords[lam]
        J = T
        with mpmath.workprec(prec):
            val = mpmath.mpc(1)
            for g, e, root in zip(gens, exps, roots):
                J = J / group.reps[g] ** e
                val = val * root ** e
            xi = totally_positive_generator(J)
            if xi is None:
                raise AssertionError("basis decomposition of a representative failed")
            psi.branch[lam] = val * power_minus_nu(xi, nu, prec)
    return psi


def evaluate_psi(psi: PsiCharacter, a: FracIdeal):
    lam, xi = psi.group.class_of(a)
    with mpmath.workprec(psi.prec):
        return psi.branch[lam] * power_minus_nu(xi, psi.nu, psi.prec)


def evaluate_psi_factored(psi: PsiCharacter, fac):
    """psi on an ideal given by its prime factorization."""
    val = mpmath.mpc(1)
    with mpmath.workprec(psi.prec):
        for P, e in fac:
            v = psi._prime_cache.get(P.ideal)
            if v is None:
                v = evaluate_psi(psi, P.ideal)
                psi._prime_cache[P.ideal] = v
            val = val * v ** e
    return val
