"""Exact integer and rational helpers used by every other module.

All arithmetic in this package is arbitrary precision: integers are Python
ints, rationals are ``fractions.Fraction`` (always in lowest terms with a
positive denominator).  No floating point appears anywhere.

The one non-obvious object here is :data:`INFINITY`, the valuation of zero.
It is a distinct sentinel rather than a number; comparisons place it above
every rational, which is exactly what the even/odd case splits downstream
rely on when a valuation sum happens to vanish.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

__all__ = [
    "INFINITY",
    "Rat",
    "denom",
    "divisors",
    "euler_phi",
    "factorize",
    "gcd_inf",
    "is_prime",
    "lcm_all",
    "legendre",
    "prime_to_p_part",
    "v_q",
]

Rat = Union[int, Fraction]


class _Infinity:
    """Sentinel for v(0); compares strictly above every rational."""

    __slots__ = ()

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is INFINITY

    def __gt__(self, other):
        return other is not INFINITY

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is INFINITY

    def __hash__(self):
        return hash("clusterpic-infinity")

    def __repr__(self):
        return "+inf"


INFINITY = _Infinity()


def denom(x: Rat) -> int:
    """Denominator of ``x`` in lowest terms (1 for integers)."""
    return Fraction(x).denominator


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # This witness set is deterministic for n < 3.3 * 10^24.
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
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


def v_q(q: int, x: Rat) -> Union[int, _Infinity]:
    """q-adic valuation of a rational; ``v_q(0)`` is :data:`INFINITY`."""
    if not is_prime(q):
        raise ValueError(f"q = {q} is not prime")
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return _int_valuation(q, x.numerator) - _int_valuation(q, x.denominator)


def _int_valuation(q: int, n: int) -> int:
    n = abs(n)
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


def gcd_inf(n: int, d: int) -> int:
    """gcd of ``n`` with arbitrarily high powers of ``d``.

    Equivalently the minimal positive divisor g of n with gcd(n/g, d) = 1:
    g keeps the full n-multiplicity of every prime shared with d.
    """
    if n < 1 or d < 1:
        raise ValueError("gcd_inf needs positive arguments")
    g = 1
    c = math.gcd(n, d)
    while c > 1:
        g *= c
        n //= c
        c = math.gcd(n, c)
    return g


def factorize(n: int) -> dict[int, int]:
    """Prime factorization as an ordered {prime: exponent} dict."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(d: int) -> int:
    """Euler totient."""
    if d < 1:
        raise ValueError("euler_phi needs a positive integer")
    out = 1
    for q, k in factorize(d).items():
        out *= (q - 1) * q ** (k - 1)
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n``, sorted."""
    out = [1]
    for q, k in factorize(n).items():
        out = [d * q**j for d in out for j in range(k + 1)]
    return sorted(out)


def legendre(a: int, q: int) -> int:
    """Legendre symbol (a/q) for an odd prime q."""
    if q == 2 or not is_prime(q):
        raise ValueError(f"q = {q} is not an odd prime")
    a %= q
    if a == 0:
        return 0
    s = pow(a, (q - 1) // 2, q)
    return 1 if s == 1 else -1


def lcm_all(values: Iterable[int]) -> int:
    """Least common multiple of a nonempty collection of positive integers."""
    values = list(values)
    if not values:
        raise ValueError("lcm_all needs at least one value")
    return math.lcm(*values)


def prime_to_p_part(n: int, p: int | None) -> int:
    """Largest divisor of ``n`` coprime to ``p`` (identity when p is None)."""
    if p is None:
        return n
    while n % p == 0:
        n //= p
    return n
