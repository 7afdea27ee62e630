"""Certificates that an element has no same-index partner of different modulus.

Each certificate names the structural fact that proves it: units, prime
powers (any n even; for odd n split across the self-conjugate and split
cases), conjugate prime pairs whose exponents are not both odd, and integer
primes to an even power or the first power.  Everything else is left Unknown
on purpose; bounded empirical evidence is the search harness's job.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .factorization import Factorization, factor
from .intarith import is_prime
from .rings import RingElement


class CertificateReason(Enum):
    UNIT = "unit"
    PRIME_POWER_EVEN_N = "prime-power-even-n"
    RAMIFIED_OR_INERT_PRIME_POWER_ODD_N = "ramified-or-inert-prime-power-odd-n"
    SPLIT_PRIME_POWER_ODD_N = "split-prime-power-odd-n"
    CONJUGATE_PAIR_NOT_BOTH_ODD = "conjugate-pair-not-both-odd"
    INTEGER_PRIME_K_EVEN_OR_ONE = "integer-prime-k-even-or-one"


@dataclass(frozen=True, slots=True)
class SolitaryCertificate:
    element: RingElement
    n: int
    certified: bool
    reason: CertificateReason | None
    factorization: Factorization


def _is_self_conjugate_class(prime: RingElement) -> bool:
    """True for canonical primes fixed by conjugation: inert and ramified ones."""
    return prime.conjugate().canonical_associate() == prime


def _conjugate_pair(fz: Factorization) -> tuple[int, int] | None:
    """Exponents (k1, k2) when the factorization is pi**k1 * pibar**k2 with
    pi not associated to pibar; None otherwise."""
    if len(fz.factors) != 2:
        return None
    (p1, k1), (p2, k2) = fz.factors
    if p1.norm() != p2.norm():
        return None
    if p1.conjugate().canonical_associate() != p2:
        return None
    if _is_self_conjugate_class(p1):
        return None
    return k1, k2


def certify_solitary(z: RingElement, n: int) -> SolitaryCertificate:
    """Certify z as having no n-power friends, or return Unknown.

    Unknown is not a refutation; in particular the open cases (split p**k
    with odd k >= 3, and conjugate pairs with both exponents odd, for odd n)
    map to Unknown deliberately.
    """
    if z.is_zero():
        raise ValueError("the zero element cannot be certified")
    if n < 1:
        raise ValueError(f"expected a positive power, got {n}")
    fz = factor(z)

    def certified(reason: CertificateReason) -> SolitaryCertificate:
        return SolitaryCertificate(z, n, True, reason, fz)

    if not fz.factors:
        return certified(CertificateReason.UNIT)

    if len(fz.factors) == 1:
        prime, _ = fz.factors[0]
        if n % 2 == 0:
            return certified(CertificateReason.PRIME_POWER_EVEN_N)
        if _is_self_conjugate_class(prime):
            return certified(CertificateReason.RAMIFIED_OR_INERT_PRIME_POWER_ODD_N)
        return certified(CertificateReason.SPLIT_PRIME_POWER_ODD_N)

    pair = _conjugate_pair(fz)
    if pair is not None and n % 2 == 1:
        k1, k2 = pair
        if k1 % 2 == 0 or k2 % 2 == 0:
            return certified(CertificateReason.CONJUGATE_PAIR_NOT_BOTH_ODD)
        if k1 == k2 == 1:
            # z is associated to the integer prime norm(pi) itself
            return certified(CertificateReason.INTEGER_PRIME_K_EVEN_OR_ONE)
    return SolitaryCertificate(z, n, False, None, fz)


def matches_conjugate_pair_hypothesis(z: RingElement, n: int) -> bool:
    """True when friend_shape_filter may be used with z as the target:
    n odd and z a split conjugate pair with both exponents odd."""
    if n % 2 == 0:
        return False
    pair = _conjugate_pair(factor(z))
    return pair is not None and pair[0] % 2 == 1 and pair[1] % 2 == 1


def friend_shape_filter(target: RingElement, candidate: RingElement, n: int) -> bool:
    """Necessary shape for a friend of pi**k1 * pibar**k2 with k1, k2 odd, n odd.

    Returns False when the candidate provably cannot share the target's
    index with a different modulus: every friend must factor as
    pi**a1 * pibar**a2 times inert integer primes, with a1 and a2 odd.
    Raises when the target (or n) does not satisfy the hypothesis.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError(f"the shape constraint needs an odd positive power, got {n}")
    ft = factor(target)
    pair = _conjugate_pair(ft)
    if pair is None or pair[0] % 2 == 0 or pair[1] % 2 == 0:
        raise ValueError(
            f"target {target!r} is not a split conjugate pair with both exponents odd"
        )
    pi = ft.factors[0][0]
    pibar = ft.factors[1][0]

    a1 = a2 = 0
    for prime, e in factor(candidate).factors:
        if prime == pi:
            a1 = e
        elif prime == pibar:
            a2 = e
        elif is_prime(prime.norm()):
            # ramified or split prime outside the target pair
            return False
        # else inert: any positive exponent is allowed
    return a1 % 2 == 1 and a2 % 2 == 1


@dataclass(frozen=True, slots=True)
class ExponentSymmetryReport:
    """Outcome of the brute-force check that the exponent cross-equation
    (p**m1 + p**m2)(p**(b1+b2+1) + 1) = (p**b1 + p**b2)(p**(m1+m2+1) + 1)
    holds only for {m1, m2} matching {b1, b2} pairwise."""

    p: int
    max_exp: int
    quadruples_checked: int
    solutions: int
    asymmetric_solutions: tuple[tuple[int, int, int, int], ...]
    missing_symmetric: tuple[tuple[int, int, int, int], ...]

    @property
    def holds(self) -> bool:
        return not self.asymmetric_solutions and not self.missing_symmetric


def verify_exponent_symmetry(p: int, max_exp: int) -> ExponentSymmetryReport:
    """Exhaustively test the exponent cross-equation over [0, max_exp]**4."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if max_exp < 0:
        raise ValueError(f"max_exp must be nonnegative, got {max_exp}")
    powers = [p**i for i in range(2 * max_exp + 2)]
    asymmetric: list[tuple[int, int, int, int]] = []
    missing: list[tuple[int, int, int, int]] = []
    checked = 0
    solutions = 0
    rng = range(max_exp + 1)
    for m1 in rng:
        for m2 in rng:
            for b1 in rng:
                for b2 in rng:
                    checked += 1
                    lhs = (powers[m1] + powers[m2]) * (powers[b1 + b2 + 1] + 1)
                    rhs = (powers[b1] + powers[b2]) * (powers[m1 + m2 + 1] + 1)
                    satisfied = lhs == rhs
                    symmetric = (m1 == b1 and m2 == b2) or (m1 == b2 and m2 == b1)
                    if satisfied:
                        solutions += 1
                        if not symmetric:
                            asymmetric.append((m1, m2, b1, b2))
                    elif symmetric:
                        missing.append((m1, m2, b1, b2))
    return ExponentSymmetryReport(
        p=p,
        max_exp=max_exp,
        quadruples_checked=checked,
        solutions=solutions,
        asymmetric_solutions=tuple(asymmetric),
        missing_symmetric=tuple(missing),
    )
