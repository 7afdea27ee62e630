"""Exact arithmetic in the field of rational combinations of real quadratic surds.

Values are finite sums ``sum c_i * sqrt(w_i)`` with rational ``c_i`` and
square-free positive ``w_i``.  The coefficients of such a sum are unique, so
keeping terms sorted by ``w`` with zero coefficients dropped gives a canonical
form: equal values always have identical term tuples, and instances can serve
as exact dictionary keys.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import gcd, isqrt
from typing import Iterable, Mapping, Union

from .intarith import is_prime

Rational = Union[int, Fraction]


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write ``n >= 1`` as ``s*s*m`` with ``m`` square-free; return ``(s, m)``."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    s = 1
    m = 1
    x = n
    f = 2
    while f * f <= x:
        if x % f == 0:
            e = 0
            while x % f == 0:
                x //= f
                e += 1
            s *= f ** (e // 2)
            if e % 2:
                m *= f
        f += 1 if f == 2 else 2
    if x > 1:
        m *= x
    return s, m


def is_squarefree(n: int) -> bool:
    return n >= 1 and squarefree_decompose(n)[0] == 1


@total_ordering
@dataclass(frozen=True, slots=True, eq=False)
class SurdValue:
    """Canonical ``sum c*sqrt(w)`` over square-free ``w``, exact and hashable.

    Equality and ordering accept plain ints and Fractions on the other side;
    rational-valued instances hash like the number they equal.
    """

    terms: tuple[tuple[int, Fraction], ...] = ()

    # -- construction -------------------------------------------------------

    @staticmethod
    def from_rational(c: Rational) -> SurdValue:
        c = Fraction(c)
        return SurdValue(((1, c),)) if c else ZERO

    @staticmethod
    def _from_map(coeffs: Mapping[int, Fraction]) -> SurdValue:
        terms = tuple((w, c) for w, c in sorted(coeffs.items()) if c)
        return SurdValue(terms)

    # -- ring structure ------------------------------------------------------

    def __add__(self, other: SurdValue | Rational) -> SurdValue:
        other = _coerce(other)
        acc = dict(self.terms)
        for w, c in other.terms:
            s = acc.get(w, _F0) + c
            if s:
                acc[w] = s
            else:
                acc.pop(w, None)
        return SurdValue._from_map(acc)

    __radd__ = __add__

    def __neg__(self) -> SurdValue:
        return SurdValue(tuple((w, -c) for w, c in self.terms))

    def __sub__(self, other: SurdValue | Rational) -> SurdValue:
        return self + (-_coerce(other))

    def __rsub__(self, other: SurdValue | Rational) -> SurdValue:
        return _coerce(other) + (-self)

    def __mul__(self, other: SurdValue | Rational) -> SurdValue:
        other = _coerce(other)
        acc: dict[int, Fraction] = {}
        for w1, c1 in self.terms:
            for w2, c2 in other.terms:
                # sqrt(w1)*sqrt(w2) = g*sqrt(m) with g = gcd(w1, w2): the
                # product of two square-free numbers has square part gcd**2
                g = gcd(w1, w2)
                m = (w1 // g) * (w2 // g)
                c = c1 * c2 * g
                s = acc.get(m, _F0) + c
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        return SurdValue._from_map(acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> SurdValue:
        if exponent < 0:
            raise ValueError("use reciprocal() for monomial inverses")
        result = ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def reciprocal(self) -> SurdValue:
        """Inverse of a one-term value c*sqrt(w); rejects anything else."""
        if len(self.terms) != 1:
            raise ValueError(f"only monomials are invertible here, got {self}")
        w, c = self.terms[0]
        return SurdValue(((w, 1 / (c * w)),))

    # -- inspection ----------------------------------------------------------

    def coefficient(self, w: int) -> Fraction:
        """The unique rational coefficient of sqrt(w); zero when absent."""
        if not is_squarefree(w):
            raise ValueError(f"{w} is not square-free")
        for wi, c in self.terms:
            if wi == w:
                return c
            if wi > w:
                break
        return _F0

    def has_sqrt_part(self, p: int) -> bool:
        """True when some term carries sqrt(w) with the prime p dividing w."""
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        return any(w % p == 0 for w, _ in self.terms if w > 1)

    def is_rational(self) -> bool:
        return all(w == 1 for w, _ in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SurdValue.from_rational(other)
        if not isinstance(other, SurdValue):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if not self.terms:
            return hash(0)
        if self.is_rational():
            return hash(self.terms[0][1])
        return hash(self.terms)

    def __lt__(self, other: SurdValue | Rational) -> bool:
        try:
            rhs = _coerce(other)
        except TypeError:
            return NotImplemented
        return sign_of(self - rhs) < 0

    def __str__(self) -> str:
        return format_surd(self)


_F0 = Fraction(0)
ZERO = SurdValue()
ONE = SurdValue(((1, Fraction(1)),))


def _coerce(x: SurdValue | Rational) -> SurdValue:
    if isinstance(x, SurdValue):
        return x
    if isinstance(x, (int, Fraction)):
        return SurdValue.from_rational(x)
    raise TypeError(f"cannot interpret {x!r} as a surd value")


def sqrt_of_int(n: int) -> SurdValue:
    """sqrt(n) in canonical form s*sqrt(m) for n >= 1."""
    s, m = squarefree_decompose(n)
    if m == 1:
        return SurdValue.from_rational(s)
    return SurdValue(((m, Fraction(s)),))


def sqrt_pow(n: int, e: int) -> SurdValue:
    """(sqrt(n))**e as an exact one-term value, for n >= 1 and any integer e."""
    if n < 1:
        raise ValueError(f"expected a positive radicand, got {n}")
    s, m = squarefree_decompose(n)
    if e >= 0:
        c = Fraction(s**e * m ** (e // 2))
        w = m if (e % 2 and m > 1) else 1
    else:
        k = -e
        if k % 2 and m > 1:
            # 1/(s*sqrt(m))**k = sqrt(m) / (s**k * m**((k+1)/2))
            c = Fraction(1, s**k * m ** ((k + 1) // 2))
            w = m
        else:
            c = Fraction(1, s**k * m ** (k // 2))
            w = 1
    return SurdValue(((w, c),))


# -- certified sign ----------------------------------------------------------

_SIGN_START_BITS = 32
_SIGN_MAX_BITS = 1 << 16


def sign_of(r: SurdValue) -> int:
    """Certified sign of r as a real number: -1, 0 or +1.

    Canonical nonzero forms never evaluate to zero (their coefficients are
    unique), so: the empty sum is 0, one- and two-term values are decided by
    exact squaring, and longer sums use interval bounds at doubling precision
    until the interval clears zero.
    """
    terms = r.terms
    if not terms:
        return 0
    if len(terms) == 1:
        return 1 if terms[0][1] > 0 else -1
    if len(terms) == 2:
        (w1, c1), (w2, c2) = terms
        if c1 > 0 and c2 > 0:
            return 1
        if c1 < 0 and c2 < 0:
            return -1
        # opposite signs: compare |c1|*sqrt(w1) against |c2|*sqrt(w2) by squaring
        lhs = c1 * c1 * w1
        rhs = c2 * c2 * w2
        if lhs == rhs:
            raise AssertionError(f"non-canonical surd form {r!r}")
        bigger_first = lhs > rhs
        return (1 if c1 > 0 else -1) if bigger_first else (1 if c2 > 0 else -1)
    bits = _SIGN_START_BITS
    while bits <= _SIGN_MAX_BITS:
        lo, hi = _bounds(r, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2
    raise ArithmeticError(f"sign of {r!r} not certified at {_SIGN_MAX_BITS} bits")


def _bounds(r: SurdValue, bits: int) -> tuple[Fraction, Fraction]:
    """Rational interval enclosing r, with sqrt() bounded to ~bits bits."""
    scale = 1 << bits
    lo = _F0
    hi = _F0
    for w, c in r.terms:
        if w == 1:
            lo += c
            hi += c
            continue
        root = isqrt(w * scale * scale)
        r_lo = Fraction(root, scale)
        r_hi = Fraction(root + 1, scale)
        if c > 0:
            lo += c * r_lo
            hi += c * r_hi
        else:
            lo += c * r_hi
            hi += c * r_lo
    return lo, hi


# -- display / parsing ---------------------------------------------------------

_TERM_RE = re.compile(r"^([+-]?\d+(?:/\d+)?)(?:\*sqrt\((\d+)\))?$")


def format_surd(r: SurdValue) -> str:
    """Canonical text like ``"1 + 1/5*sqrt(5)"``; parse_surd inverts it."""
    if not r.terms:
        return "0"
    parts: list[str] = []
    for i, (w, c) in enumerate(r.terms):
        mag = abs(c)
        body = str(mag) if w == 1 else f"{mag}*sqrt({w})"
        if i == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts)


def parse_surd(text: str) -> SurdValue:
    """Parse the display syntax back into a canonical value."""
    compact = text.replace(" ", "")
    if not compact:
        raise ValueError("empty surd literal")
    if compact == "0":
        return ZERO
    acc: dict[int, Fraction] = {}
    for token in re.findall(r"[+-]?[^+-]+", compact):
        m = _TERM_RE.match(token)
        if m is None:
            raise ValueError(f"bad surd term {token!r} in {text!r}")
        c = Fraction(m.group(1))
        w = int(m.group(2)) if m.group(2) else 1
        if w < 1:
            raise ValueError(f"bad radicand in {token!r}")
        s, m_sf = squarefree_decompose(w)
        c *= s
        acc[m_sf] = acc.get(m_sf, _F0) + c
    return SurdValue._from_map(acc)
