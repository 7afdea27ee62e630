"""Exact arithmetic in the nine imaginary quadratic integer rings with unique factorization.

Elements are stored in integral-basis coordinates a + b*omega, where
omega = sqrt(d) for d in {-1, -2} and omega = (1 + sqrt(d))/2 for the seven
rings with d = 1 (mod 4).  No floating point is used anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass

#: The square-free d < 0 whose rings of integers have unique factorization.
HEEGNER_DS = (-163, -67, -43, -19, -11, -7, -3, -2, -1)


class RingError(ValueError):
    """Unsupported ring, or an operation mixing elements of different rings."""


@dataclass(frozen=True, slots=True)
class Ring:
    """One of the nine imaginary quadratic unique-factorization rings."""

    d: int

    def __post_init__(self) -> None:
        if self.d not in HEEGNER_DS:
            raise RingError(f"d must be one of {HEEGNER_DS}, got {self.d}")

    @property
    def half_integral(self) -> bool:
        """True when omega = (1 + sqrt(d))/2, i.e. d = 1 (mod 4)."""
        return self.d % 4 == 1

    @property
    def discriminant(self) -> int:
        return self.d if self.half_integral else 4 * self.d

    def element(self, a: int, b: int = 0) -> RingElement:
        return RingElement(self, a, b)

    @property
    def zero(self) -> RingElement:
        return RingElement(self, 0, 0)

    @property
    def one(self) -> RingElement:
        return RingElement(self, 1, 0)

    def units(self) -> tuple[RingElement, ...]:
        """All units: four for d=-1, six for d=-3, otherwise just +-1."""
        cached = _UNITS_CACHE.get(self.d)
        if cached is None:
            coords = _UNIT_COORDS.get(self.d, ((1, 0), (-1, 0)))
            cached = tuple(RingElement(self, a, b) for a, b in coords)
            _UNITS_CACHE[self.d] = cached
        return cached

    def __str__(self) -> str:
        return f"O(sqrt({self.d}))"


# d=-1: powers of i; d=-3: powers of the primitive sixth root of unity omega.
_UNIT_COORDS: dict[int, tuple[tuple[int, int], ...]] = {
    -1: ((1, 0), (-1, 0), (0, 1), (0, -1)),
    -3: ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)),
}
_UNITS_CACHE: dict[int, tuple[RingElement, ...]] = {}


@dataclass(frozen=True, slots=True)
class RingElement:
    """An element a + b*omega of a :class:`Ring`, with exact integer coordinates."""

    ring: Ring
    a: int
    b: int

    # -- basic arithmetic ---------------------------------------------------

    def _check_same_ring(self, other: RingElement) -> None:
        if self.ring.d != other.ring.d:
            raise RingError(
                f"ring mismatch: d={self.ring.d} vs d={other.ring.d}"
            )

    def __add__(self, other: RingElement | int) -> RingElement:
        if isinstance(other, int):
            return RingElement(self.ring, self.a + other, self.b)
        self._check_same_ring(other)
        return RingElement(self.ring, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other: RingElement | int) -> RingElement:
        return self + (-other)

    def __neg__(self) -> RingElement:
        return RingElement(self.ring, -self.a, -self.b)

    def __mul__(self, other: RingElement | int) -> RingElement:
        if isinstance(other, int):
            return RingElement(self.ring, self.a * other, self.b * other)
        self._check_same_ring(other)
        d = self.ring.d
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        if self.ring.half_integral:
            # omega**2 = omega + (d - 1)/4
            c = (d - 1) // 4
            return RingElement(self.ring, a1 * a2 + b1 * b2 * c, a1 * b2 + a2 * b1 + b1 * b2)
        # omega**2 = d
        return RingElement(self.ring, a1 * a2 + d * b1 * b2, a1 * b2 + a2 * b1)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> RingElement:
        if exponent < 0:
            raise ValueError("negative powers are not ring elements in general")
        result = self.ring.one
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- conjugation, norm, units -------------------------------------------

    def conjugate(self) -> RingElement:
        """Image under sqrt(d) -> -sqrt(d); for half-integral omega this is 1 - omega."""
        if self.ring.half_integral:
            return RingElement(self.ring, self.a + self.b, -self.b)
        return RingElement(self.ring, self.a, -self.b)

    def norm(self) -> int:
        """z * conjugate(z) as a nonnegative rational integer."""
        a, b, d = self.a, self.b, self.ring.d
        if self.ring.half_integral:
            return a * a + a * b + b * b * (1 - d) // 4
        return a * a - d * b * b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    # -- canonical associates -----------------------------------------------

    def in_canonical_sector(self) -> bool:
        """Exact test for the angular sector holding one associate per class.

        The sector is [0, pi/2) for d=-1, [0, pi/3) for d=-3 and [0, pi)
        otherwise; the positive real axis is inside, the upper boundary is
        not.  Each test below is an integer rewrite of the corresponding
        tangent comparison.
        """
        if self.is_zero():
            raise ValueError("the zero element belongs to no sector")
        a, b, d = self.a, self.b, self.ring.d
        if d in (-1, -3):
            return a > 0 and b >= 0
        # remaining rings: upper half-plane plus the positive real axis;
        # sign of the imaginary part equals sign(b) in both coordinate systems
        return b > 0 or (b == 0 and a > 0)

    def canonical_associate(self) -> RingElement:
        """The unique associate of this element inside the canonical sector."""
        if self.is_zero():
            raise ValueError("zero has no canonical associate")
        for u in self.ring.units():
            w = u * self
            if w.in_canonical_sector():
                return w
        raise AssertionError(f"unit orbit of {self!r} misses the canonical sector")

    def is_associate_of(self, other: RingElement) -> bool:
        self._check_same_ring(other)
        if self.is_zero() or other.is_zero():
            raise ValueError("associate test requires nonzero elements")
        return self.canonical_associate() == other.canonical_associate()

    def divide_exact(self, divisor: RingElement) -> RingElement | None:
        """Quotient self/divisor when it lies in the ring, else None.

        Valid in every ring, including the non-Euclidean ones: the quotient
        is z * conjugate(x) / norm(x), which is integral exactly when both
        coordinates are divisible by norm(x).
        """
        self._check_same_ring(divisor)
        den = divisor.norm()
        if den == 0:
            raise ZeroDivisionError("division by the zero element")
        num = self * divisor.conjugate()
        if num.a % den or num.b % den:
            return None
        return RingElement(self.ring, num.a // den, num.b // den)

    # -- text forms -----------------------------------------------------------

    def coord_str(self) -> str:
        """Machine form ``"a,b"`` used by the CLI and report files."""
        return f"{self.a},{self.b}"

    def __str__(self) -> str:
        if self.b < 0:
            return f"{self.a} - {-self.b}·ω[{self.ring.d}]"
        return f"{self.a} + {self.b}·ω[{self.ring.d}]"

    def __repr__(self) -> str:
        return f"RingElement(d={self.ring.d}, a={self.a}, b={self.b})"


def parse_coords(ring: Ring, text: str) -> RingElement:
    """Parse the ``"a,b"`` coordinate form (``"a"`` alone means b = 0)."""
    parts = text.strip().split(",")
    if len(parts) not in (1, 2):
        raise ValueError(f"bad element {text!r}; expected 'a,b'")
    try:
        a = int(parts[0])
        b = int(parts[1]) if len(parts) == 2 else 0
    except ValueError as exc:
        raise ValueError(f"bad element {text!r}; expected integers 'a,b'") from exc
    return RingElement(ring, a, b)
