"""Integer primality testing and bounded trial-division factorization."""

from __future__ import annotations

from functools import lru_cache
from math import isqrt

#: Largest integer the trial-division factorizer will accept by default.
DEFAULT_FACTOR_CEILING = 10**8


class FactorizationOverflowError(ArithmeticError):
    """Raised when an integer exceeds the trial-division ceiling."""


# Deterministic Miller-Rabin witness set, exact for n < 3.3 * 10**24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with a fixed witness set)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=1 << 16)
def factor_integer(n: int, ceiling: int = DEFAULT_FACTOR_CEILING) -> tuple[tuple[int, int], ...]:
    """Factor ``n >= 1`` by trial division into sorted (prime, exponent) pairs.

    Deliberately refuses inputs above ``ceiling`` instead of degrading to a
    slow or probabilistic path.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}; expected a positive integer")
    if n > ceiling:
        raise FactorizationOverflowError(
            f"factorization overflow: {n} exceeds ceiling {ceiling}"
        )
    out: list[tuple[int, int]] = []
    x = n
    for p in _trial_divisors(x):
        if p * p > x:
            break
        if x % p == 0:
            e = 0
            while x % p == 0:
                x //= p
                e += 1
            out.append((p, e))
    if x > 1:
        out.append((x, 1))
    return tuple(out)


def _trial_divisors(n: int):
    yield 2
    yield 3
    f = 5
    while f * f <= n:
        yield f
        yield f + 2
        f += 6
