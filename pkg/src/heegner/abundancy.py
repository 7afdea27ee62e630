"""Divisor power sums and the abundancy index, computed exactly.

``divisor_power_sum(z, n)`` adds |x|**n over one divisor x per associate
class; ``abundancy_index(z, n)`` divides by |z|**n.  Values live in the surd
field, so indices can be grouped and compared exactly.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

from .factorization import canonical_divisors, factor
from .rings import RingElement
from .surd import ONE, ZERO, SurdValue, sqrt_pow


def prime_power_divisor_sum(prime: RingElement, alpha: int, n: int) -> SurdValue:
    """sum over j = 0..alpha of |prime**j|**n, i.e. of sqrt(norm(prime))**(j*n).

    The caller is responsible for passing a prime; negative n yields the
    reciprocal-power sum.
    """
    if alpha < 0:
        raise ValueError(f"exponent must be nonnegative, got {alpha}")
    if n == 0:
        raise ValueError("power 0 is excluded; this is not a divisor counter")
    nrm = prime.norm()
    total = ZERO
    for j in range(alpha + 1):
        total = total + sqrt_pow(nrm, j * n)
    return total


def divisor_power_sum(z: RingElement, n: int) -> SurdValue:
    """Multiplicative evaluation: product of prime-power sums over factor(z)."""
    if z.is_zero():
        raise ValueError("undefined for the zero element")
    if n == 0:
        raise ValueError("power 0 is excluded; this is not a divisor counter")
    total = ONE
    for prime, e in factor(z).factors:
        total = total * prime_power_divisor_sum(prime, e, n)
    return total


def divisor_power_sum_direct(z: RingElement, n: int) -> SurdValue:
    """Independent oracle: sum sqrt(norm(x))**n over every canonical divisor x."""
    if z.is_zero():
        raise ValueError("undefined for the zero element")
    if n == 0:
        raise ValueError("power 0 is excluded; this is not a divisor counter")
    total = ZERO
    for x in canonical_divisors(z):
        total = total + sqrt_pow(x.norm(), n)
    return total


@lru_cache(maxsize=1 << 18)
def abundancy_index(z: RingElement, n: int) -> SurdValue:
    """divisor_power_sum(z, n) / |z|**n for n >= 1."""
    if z.is_zero():
        raise ValueError("undefined for the zero element")
    if n < 1:
        raise ValueError(f"the index wants a positive power, got {n}")
    return divisor_power_sum(z, n) * sqrt_pow(z.norm(), n).reciprocal()


def divisor_pair_convolution(
    f: Callable[[RingElement], SurdValue],
    g: Callable[[RingElement], SurdValue],
    z: RingElement,
) -> SurdValue:
    """sum f(x)*g(y) over canonical-sector pairs whose product is associated to z.

    For each canonical divisor x there is exactly one class y with x*y
    associated to z, namely the canonical associate of z/x.  Callers must
    normalize f and g to 1 on units for the multiplicativity guarantee.
    """
    if z.is_zero():
        raise ValueError("undefined for the zero element")
    total = ZERO
    for x in canonical_divisors(z):
        quotient = z.divide_exact(x)
        if quotient is None:
            raise AssertionError(f"divisor {x!r} does not divide {z!r}")
        total = total + f(x) * g(quotient.canonical_associate())
    return total
