"""Coefficient data of a base change of an elliptic curve over Q to F.

Used to produce genuine modular test data: the L-series of E over a real
quadratic field is that of a parallel weight 2 Hilbert newform.
"""
from __future__ import annotations

from sympy import factorint

from .errors import InvalidArgument
from .ideals import FracIdeal, prime_ideals_up_to
from .lseries import CoefficientSequence, sequence_from_euler
from .numfield import Field

# y^2 + y = x^3 - x^2 - 10x - 20, conductor 11
CURVE_11A = (0, -1, 1, -10, -20)


def discriminant(curve) -> int:
    a1, a2, a3, a4, a6 = curve
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def trace_of_frobenius(curve, p: int) -> int:
    """a_p = p - #{affine points mod p}; correct at good and multiplicative primes."""
    a1, a2, a3, a4, a6 = curve
    count = 0
    for x in range(p):
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - rhs) % p == 0:
                count += 1
    return p - count


def base_change_sequence(F: Field, curve, conductor: int, cutoff: int,
                         order: int = 12) -> CoefficientSequence:
    """A(a) for the base change of E to F, all ideals of norm <= cutoff.

    The conductor must be squarefree (multiplicative bad reduction) and
    prime to the discriminant of F.
    """
    bad = factorint(conductor)
    if any(e != 1 for e in bad.values()):
        raise InvalidArgument("only squarefree conductors are supported")
    if any(F.discriminant % p == 0 for p in bad):
        raise InvalidArgument("bad primes must be unramified in F")
    if discriminant(curve) % conductor:
        raise InvalidArgument("conductor does not divide the discriminant")
    local, bad_factors = {}, {}
    level = FracIdeal.unit(F)
    ap_cache = {}
    for P in prime_ideals_up_to(F, cutoff):
        p = P.p
        if p not in ap_cache:
            ap_cache[p] = trace_of_frobenius(curve, p)
        ap = ap_cache[p]
        if p in bad:
            A = ap if P.f == 1 else ap * ap
            bad_factors[P.ideal] = (1, -A)
            level = level * P.ideal
        elif P.f == 1:
            local[P.ideal] = ap
        else:
            local[P.ideal] = ap * ap - 2 * p
    # bad primes beyond the cutoff still belong to the level
    for p in bad:
        from .ideals import primes_above
        for P in primes_above(F, p):
            if P.norm > cutoff:
                level = level * P.ideal
    return sequence_from_euler(F, 2, local, bad_factors, cutoff, order=order,
                               weight=(2, 2), level=level)
