"""Exact integer/rational helpers and small prime utilities.

Rationals are :class:`fractions.Fraction`, which already keeps values reduced
with a positive denominator. Nothing in this package touches floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable

ExactRational = Fraction

# Deterministic Miller-Rabin witnesses; correct for every n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
PRIME_LIMIT = 1 << 64


def rat(n: int, d: int = 1) -> Fraction:
    """Build the reduced fraction n/d. Only integers are accepted."""
    if not isinstance(n, int) or not isinstance(d, int) or isinstance(n, bool) or isinstance(d, bool):
        raise TypeError(f"rat() needs integers, got {n!r}/{d!r}")
    if d == 0:
        raise ZeroDivisionError(f"zero denominator in {n}/0")
    return Fraction(n, d)


def rat_sum(terms: Iterable[Fraction]) -> Fraction:
    return sum(terms, Fraction(0))


def format_rat(x: Fraction) -> str:
    """Machine form: always "n/d", even for integers ("3/1", "0/1")."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def pretty_rat(x: Fraction) -> str:
    """Human form: integers print without the "/1"."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(text: str) -> Fraction:
    """Parse "n/d" or "n" into an exact rational. Decimal points are rejected."""
    s = text.strip()
    if "/" in s:
        num, _, den = s.partition("/")
    else:
        num, den = s, "1"
    try:
        n, d = int(num.strip()), int(den.strip())
    except ValueError:
        raise ValueError(f"not an exact rational: {text!r}") from None
    return rat(n, d)


def lcm_all(values: Iterable[int]) -> int:
    values = list(values)
    if not values:
        raise ValueError("lcm of an empty list")
    for v in values:
        if v < 1:
            raise ValueError(f"lcm_all expects positive integers, got {v}")
    return reduce(lambda a, b: a // math.gcd(a, b) * b, values, 1)


def is_prime(n: int) -> bool:
    """Deterministic primality for 0 <= n < 2**64; larger inputs are refused."""
    if n < 0:
        raise ValueError("is_prime expects n >= 0")
    if n >= PRIME_LIMIT:
        raise ValueError(f"{n} exceeds the deterministic primality range (< 2**64)")
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    k = max(n + 1, 2)
    while not is_prime(k):
        k += 1
    return k


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def prime_power_decompose(n: int) -> tuple[int, int] | None:
    """Return (p, e) with n == p**e and p prime, or None if n is not a prime power."""
    if n < 2:
        return None
    for e in range(n.bit_length(), 0, -1):
        p = integer_root(n, e)
        if p is not None and is_prime(p):
            return p, e
    return None


def integer_root(n: int, e: int) -> int | None:
    """Exact e-th root of n, or None."""
    if n < 0 or e < 1:
        return None
    if e == 1:
        return n
    lo, hi = 0, 1 << (n.bit_length() // e + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        v = mid**e
        if v == n:
            return mid
        if v < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    if n == 0:
        raise ValueError("p_part(0) is undefined")
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_power_of(d: int, p: int) -> bool:
    if d < 1:
        return False
    while d % p == 0:
        d //= p
    return d == 1


@dataclass(frozen=True, order=True)
class PrimePower:
    prime: int
    exponent: int = 1

    def __post_init__(self):
        if self.exponent < 1:
            raise ValueError(f"exponent must be >= 1, got {self.exponent} for prime {self.prime}")
        if not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")

    @property
    def value(self) -> int:
        return self.prime**self.exponent

    def __str__(self):
        return str(self.prime) if self.exponent == 1 else f"{self.prime}^{self.exponent}"
