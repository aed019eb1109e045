"""Exact ring arithmetic for witness synthesis.

Three layers, all over plain Python integers:

* dense integer polynomials (tuples, constant term first) with exact
  division by monic divisors, enough to build cyclotomic polynomials;
* the ring Z[zeta_e], elements reduced modulo the e-th cyclotomic
  polynomial;
* F_p[x] arithmetic with an equal-degree splitter that extracts one
  irreducible factor of the e-th cyclotomic polynomial mod p, fixing a
  prime above p at which residues are tested.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import IntegrityError

IntPoly = tuple[int, ...]


def poly_trim(a) -> IntPoly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_add(a: IntPoly, b: IntPoly) -> IntPoly:
    n = max(len(a), len(b))
    return poly_trim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def poly_neg(a: IntPoly) -> IntPoly:
    return tuple(-c for c in a)


def poly_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return poly_trim(out)


def poly_divmod_monic(a: IntPoly, b: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Exact division by a monic integer polynomial."""
    if not b or b[-1] != 1:
        raise ValueError("divisor must be monic")
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        if c:
            q[i] = c
            for j, cb in enumerate(b):
                a[i + j] -= c * cb
    return poly_trim(q), poly_trim(a)


@lru_cache(maxsize=None)
def cyclotomic(e: int) -> IntPoly:
    """The e-th cyclotomic polynomial."""
    if e < 1:
        raise ValueError("e must be positive")
    if e == 1:
        return (-1, 1)
    num = tuple([-1] + [0] * (e - 1) + [1])  # x^e - 1
    for d in range(1, e):
        if e % d == 0:
            num, rem = poly_divmod_monic(num, cyclotomic(d))
            assert rem == ()
    return num


@dataclass(frozen=True)
class CyclotomicInt:
    """An element of Z[zeta_e], reduced modulo the cyclotomic polynomial."""

    e: int
    coeffs: IntPoly

    @classmethod
    def make(cls, e: int, coeffs) -> "CyclotomicInt":
        _, rem = poly_divmod_monic(poly_trim(coeffs), cyclotomic(e))
        return cls(e, rem)

    @classmethod
    def integer(cls, e: int, n: int) -> "CyclotomicInt":
        return cls.make(e, (n,))

    @classmethod
    def zeta_power(cls, e: int, k: int) -> "CyclotomicInt":
        k %= e
        return cls.make(e, (0,) * k + (1,))

    def _match(self, other: "CyclotomicInt") -> None:
        if self.e != other.e:
            raise ValueError("mixed cyclotomic orders")

    def __add__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        self._match(other)
        return CyclotomicInt(self.e, poly_add(self.coeffs, other.coeffs))

    def __sub__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        self._match(other)
        return CyclotomicInt(self.e, poly_add(self.coeffs, poly_neg(other.coeffs)))

    def __neg__(self) -> "CyclotomicInt":
        return CyclotomicInt(self.e, poly_neg(self.coeffs))

    def __mul__(self, other) -> "CyclotomicInt":
        if isinstance(other, int):
            return CyclotomicInt(self.e, poly_trim(c * other for c in self.coeffs))
        self._match(other)
        return CyclotomicInt.make(self.e, poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.coeffs

    def as_integer(self) -> int:
        """The rational-integer value, or raise if not in Z."""
        if not self.coeffs:
            return 0
        if len(self.coeffs) == 1:
            return self.coeffs[0]
        raise IntegrityError(f"cyclotomic element {self.coeffs} is not a rational integer")

    def galois_image(self, a: int) -> "CyclotomicInt":
        """Image under zeta -> zeta^a for gcd(a, e) = 1."""
        if math.gcd(a, self.e) != 1:
            raise ValueError("a must be prime to e")
        out: IntPoly = ()
        for i, c in enumerate(self.coeffs):
            if c:
                term = CyclotomicInt.zeta_power(self.e, a * i).coeffs
                out = poly_add(out, tuple(c * x for x in term))
        return CyclotomicInt.make(self.e, out)


# -- F_p[x] -------------------------------------------------------------------

FpPoly = tuple[int, ...]


def fp_trim(a, p: int) -> FpPoly:
    a = [c % p for c in a]
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def fp_add(a: FpPoly, b: FpPoly, p: int) -> FpPoly:
    n = max(len(a), len(b))
    return fp_trim(
        [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], p
    )


def fp_sub(a: FpPoly, b: FpPoly, p: int) -> FpPoly:
    n = max(len(a), len(b))
    return fp_trim(
        [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], p
    )


def fp_mul(a: FpPoly, b: FpPoly, p: int) -> FpPoly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return fp_trim(out, p)


def fp_rem(a: FpPoly, b: FpPoly, p: int) -> FpPoly:
    if not b:
        raise ZeroDivisionError
    a = list(a)
    inv = pow(b[-1], -1, p)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv % p
        if c:
            for j, cb in enumerate(b):
                a[i + j] = (a[i + j] - c * cb) % p
    return fp_trim(a, p)


def fp_gcd(a: FpPoly, b: FpPoly, p: int) -> FpPoly:
    while b:
        a, b = b, fp_rem(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = fp_trim([c * inv for c in a], p)
    return a


def fp_powmod(a: FpPoly, k: int, mod: FpPoly, p: int) -> FpPoly:
    out: FpPoly = (1,)
    a = fp_rem(a, mod, p)
    while k:
        if k & 1:
            out = fp_rem(fp_mul(out, a, p), mod, p)
        a = fp_rem(fp_mul(a, a, p), mod, p)
        k >>= 1
    return out


def fp_from_int_poly(a: IntPoly, p: int) -> FpPoly:
    return fp_trim(a, p)


def multiplicative_order(p: int, e: int) -> int:
    if e == 1:
        return 1
    if math.gcd(p, e) != 1:
        raise ValueError("p must be prime to e")
    f, x = 1, p % e
    while x != 1:
        x = x * p % e
        f += 1
    return f


def cyclotomic_factor_mod_p(e: int, p: int, seed: int | None = None) -> FpPoly:
    """One monic irreducible factor of the e-th cyclotomic polynomial mod p.

    All factors share the degree f = ord of p modulo e; equal-degree
    splitting with a seeded generator keeps the choice reproducible.
    """
    f = multiplicative_order(p, e)
    h = fp_from_int_poly(cyclotomic(e), p)
    rng = random.Random(seed if seed is not None else e * 1_000_003 + p)
    exponent = (p**f - 1) // 2
    while len(h) - 1 > f:
        r = fp_trim([rng.randrange(p) for _ in range(len(h) - 1)], p)
        if not r:
            continue
        s = fp_powmod(r, exponent, h, p)
        g = fp_gcd(fp_sub(s, (1,), p), h, p)
        if 0 < len(g) - 1 < len(h) - 1:
            other, rem = _fp_div_exact(h, g, p)
            assert rem == ()
            h = g if len(g) <= len(other) else other
    inv = pow(h[-1], -1, p)
    return fp_trim([c * inv for c in h], p)


def _fp_div_exact(a: FpPoly, b: FpPoly, p: int) -> tuple[FpPoly, FpPoly]:
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv % p
        q[i] = c
        if c:
            for j, cb in enumerate(b):
                a[i + j] = (a[i + j] - c * cb) % p
    return fp_trim(q, p), fp_trim(a, p)


@dataclass(frozen=True)
class ResidueField:
    """F_p[x]/(g) for a fixed irreducible factor g of the e-th cyclotomic
    polynomial: the residue field at a chosen prime above p."""

    p: int
    e: int
    modulus: FpPoly

    @classmethod
    def for_prime(cls, e: int, p: int, seed: int | None = None) -> "ResidueField":
        if e % p == 0:
            raise ValueError("p must not divide e")
        return cls(p, e, cyclotomic_factor_mod_p(e, p, seed))

    def reduce(self, c: CyclotomicInt) -> FpPoly:
        if c.e != self.e:
            raise ValueError("mixed cyclotomic orders")
        return fp_rem(fp_from_int_poly(c.coeffs, self.p), self.modulus, self.p)

    def is_unit(self, c: CyclotomicInt) -> bool:
        return bool(self.reduce(c))
