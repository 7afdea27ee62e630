"""Integer-prime splitting behavior and unique factorization over the nine rings.

Every nonzero element is a unit times a product of primes from the canonical
sector.  The factor routine works through the integer factorization of the
norm, so its reach is bounded by the trial-division ceiling.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import isqrt

from .intarith import DEFAULT_FACTOR_CEILING, factor_integer, is_prime
from .rings import Ring, RingElement


class PrimeKind(Enum):
    INERT = "inert"
    RAMIFIED = "ramified"
    SPLIT = "split"


@dataclass(frozen=True, slots=True)
class PrimeClassification:
    """How an integer prime behaves in a ring, with sector witnesses.

    ``witness`` is a norm-p prime for the ramified and split cases;
    ``conjugate_witness`` is the non-associated conjugate class for the split
    case only.
    """

    p: int
    ring: Ring
    kind: PrimeKind
    witness: RingElement | None = None
    conjugate_witness: RingElement | None = None


_CLASSIFY_CACHE: dict[tuple[int, int], PrimeClassification] = {}


def classify_integer_prime(p: int, ring: Ring) -> PrimeClassification:
    """Decide inert / ramified / split for an integer prime p.

    Ramified exactly when p divides the field discriminant.  For odd p not
    dividing it, split when d is a nonzero quadratic residue mod p (Euler's
    criterion), inert otherwise.  For p = 2 in the half-integral rings,
    split when d = 1 (mod 8) and inert when d = 5 (mod 8).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    key = (p, ring.d)
    cached = _CLASSIFY_CACHE.get(key)
    if cached is not None:
        return cached

    if ring.discriminant % p == 0:
        kind = PrimeKind.RAMIFIED
    elif p == 2:
        # only reachable for the half-integral rings (else 2 divides 4d)
        kind = PrimeKind.SPLIT if ring.d % 8 == 1 else PrimeKind.INERT
    else:
        euler = pow(ring.d % p, (p - 1) // 2, p)
        kind = PrimeKind.SPLIT if euler == 1 else PrimeKind.INERT

    if kind is PrimeKind.INERT:
        result = PrimeClassification(p, ring, kind)
    else:
        pi = solve_norm_equation(p, ring)
        if pi is None:
            raise AssertionError(f"no norm-{p} element in {ring} despite {kind}")
        pibar = pi.conjugate().canonical_associate()
        if kind is PrimeKind.RAMIFIED:
            if pibar != pi:
                raise AssertionError(f"ramified witness {pi!r} not self-conjugate")
            result = PrimeClassification(p, ring, kind, witness=pi)
        else:
            if pibar == pi:
                raise AssertionError(f"split witness {pi!r} is self-conjugate")
            result = PrimeClassification(p, ring, kind, witness=pi, conjugate_witness=pibar)
    _CLASSIFY_CACHE[key] = result
    return result


def solve_norm_equation(p: int, ring: Ring) -> RingElement | None:
    """The (b, a)-lexicographically least sector element of norm p, or None.

    Bounded enumeration: |b| <= sqrt(4p/|disc|), with a solved per b.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    d = ring.d
    sols: set[tuple[int, int]] = set()
    if ring.half_integral:
        # 4*norm = (2a + b)**2 - d*b**2
        bmax = isqrt(4 * p // -d)
        for b in range(-bmax, bmax + 1):
            rem = 4 * p + d * b * b
            if rem < 0:
                continue
            s = isqrt(rem)
            if s * s != rem:
                continue
            for t in {s, -s}:
                if (t - b) % 2 == 0:
                    sols.add(((t - b) // 2, b))
    else:
        bmax = isqrt(p // -d)
        for b in range(-bmax, bmax + 1):
            rem = p + d * b * b
            a = isqrt(rem)
            if a * a == rem:
                sols.add((a, b))
                sols.add((-a, b))
    best: RingElement | None = None
    best_key: tuple[int, int] | None = None
    for a, b in sols:
        z = RingElement(ring, a, b)
        if z.norm() != p or not z.in_canonical_sector():
            continue
        key = (b, a)
        if best_key is None or key < best_key:
            best, best_key = z, key
    return best


@dataclass(frozen=True, slots=True)
class Factorization:
    """unit * product(prime**exponent) with primes from the canonical sector,
    pairwise non-associated, sorted by (norm, a, b)."""

    unit: RingElement
    factors: tuple[tuple[RingElement, int], ...]

    def product(self) -> RingElement:
        acc = self.unit
        for prime, e in self.factors:
            acc = acc * prime**e
        return acc

    def __str__(self) -> str:
        if not self.factors:
            return f"({self.unit})"
        parts = [f"({prime})^{e}" if e > 1 else f"({prime})" for prime, e in self.factors]
        return f"({self.unit}) · " + " · ".join(parts)


def factor(z: RingElement, *, ceiling: int = DEFAULT_FACTOR_CEILING) -> Factorization:
    """Canonical factorization of a nonzero element.

    Factors norm(z) over the integers, classifies each integer prime, then
    strips the matching sector primes off z by exact ring division; whatever
    remains is the unit.
    """
    if z.is_zero():
        raise ValueError("cannot factor the zero element")
    ring = z.ring
    n = z.norm()
    if n == 1:
        return Factorization(unit=z, factors=())
    rest = z
    out: list[tuple[RingElement, int]] = []
    for p, e in factor_integer(n, ceiling):
        cls = classify_integer_prime(p, ring)
        if cls.kind is PrimeKind.INERT:
            if e % 2:
                raise AssertionError(f"odd inert exponent for p={p} in norm {n}")
            k = e // 2
            prime = RingElement(ring, p, 0)
            for _ in range(k):
                rest = _divide_or_die(rest, prime)
            out.append((prime, k))
        elif cls.kind is PrimeKind.RAMIFIED:
            assert cls.witness is not None
            for _ in range(e):
                rest = _divide_or_die(rest, cls.witness)
            out.append((cls.witness, e))
        else:
            assert cls.witness is not None and cls.conjugate_witness is not None
            e1 = 0
            while e1 < e:
                nxt = rest.divide_exact(cls.witness)
                if nxt is None:
                    break
                rest = nxt
                e1 += 1
            e2 = e - e1
            for _ in range(e2):
                rest = _divide_or_die(rest, cls.conjugate_witness)
            if e1:
                out.append((cls.witness, e1))
            if e2:
                out.append((cls.conjugate_witness, e2))
    if not rest.is_unit():
        raise AssertionError(f"non-unit residue {rest!r} after factoring {z!r}")
    out.sort(key=lambda t: (t[0].norm(), t[0].a, t[0].b))
    return Factorization(unit=rest, factors=tuple(out))


def _divide_or_die(z: RingElement, divisor: RingElement) -> RingElement:
    q = z.divide_exact(divisor)
    if q is None:
        raise AssertionError(f"expected {divisor!r} to divide {z!r}")
    return q


def canonical_divisors(z: RingElement, *, ceiling: int = DEFAULT_FACTOR_CEILING) -> list[RingElement]:
    """All divisors of z inside the canonical sector, one per associate class.

    Built as canonical associates of the sub-products of the factorization;
    sorted by (norm, a, b).
    """
    fz = factor(z, ceiling=ceiling)
    divs = [z.ring.one]
    for prime, e in fz.factors:
        powers = [z.ring.one]
        for _ in range(e):
            powers.append(powers[-1] * prime)
        divs = [x * q for x in divs for q in powers]
    canon = {x.canonical_associate() for x in divs}
    if len(canon) != len(divs):
        raise AssertionError(f"divisor classes of {z!r} collide")
    return sorted(canon, key=lambda x: (x.norm(), x.a, x.b))


def is_coprime(x: RingElement, y: RingElement, *, ceiling: int = DEFAULT_FACTOR_CEILING) -> bool:
    """True when the factorizations share no associated prime.

    Computed from the factorizations, not by a Euclidean algorithm: four of
    the nine rings are not norm-Euclidean.
    """
    if x.is_zero() or y.is_zero():
        raise ValueError("coprimality requires nonzero elements")
    if x.ring.d != y.ring.d:
        raise ValueError(f"ring mismatch: d={x.ring.d} vs d={y.ring.d}")
    primes_x = {prime for prime, _ in factor(x, ceiling=ceiling).factors}
    primes_y = {prime for prime, _ in factor(y, ceiling=ceiling).factors}
    return not (primes_x & primes_y)
