"""The computable part of the local root number.

The sign of the functional equation factors over the character orders e
appearing in the cohomology: each inverse-pair of order-e characters in
the abelian part contributes a factor W_{q,e} depending only on e and the
residue cardinality q, and the quadratic count of the toric part
contributes W_{q,2}^{m_T}.  One factor -- the parity of the trivial
multiplicity in the toric part -- depends on Frobenius, which depth data
cannot see; it is surfaced as an explicit ambiguity flag, never guessed.

The pairing convention: within the abelian part, characters pair with
their inverses, so a block a * rho_d contributes a*phi(d)/2 pairs for
d >= 3; the self-inverse orders 1 and 2 must pair among themselves, an
odd count being an integrity error (it would contradict the symplectic
self-duality of the cohomology).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .cluster import ClusterPicture
from .errors import IntegrityError
from .inertia import TameAction
from .numbers import euler_phi, factorize, is_prime, legendre, v_q
from .repn import InertiaRep, RhoSum

__all__ = ["RootNumberResult", "m_T", "root_number", "w_factor"]


def w_factor(q: int, e: int) -> int:
    """The order-e root number factor at residue cardinality q (odd prime)."""
    if q == 2 or not is_prime(q):
        raise ValueError(f"q = {q} must be an odd prime")
    if e < 1:
        raise ValueError("e must be positive")
    fac = factorize(e)
    if len(fac) == 1:
        (l, k), = fac.items()
        if l == 2:
            if k == 1:
                return legendre(-1, q)
            if k == 2:
                return legendre(-2, q)
            return legendre(2, q)
        return legendre(q, l)
    if len(fac) == 2 and fac.get(2) == 1:
        l = next(prime for prime in fac if prime != 2)
        if l % 4 == 3:
            return legendre(-1, q)
    return 1


@dataclass(frozen=True)
class RootNumberResult:
    """Product of the computable factors plus the Frobenius ambiguity flag.

    ``factors`` traces (order e, value W_{q,e}, exponent m_e), the toric
    quadratic count included as an order-2 entry.
    """

    computable_sign: int
    frobenius_ambiguous: bool
    factors: tuple[tuple[int, int, int], ...]

    def to_json(self) -> str:
        return json.dumps(
            {
                "sign": self.computable_sign,
                "ambiguous": self.frobenius_ambiguous,
                "factors": [
                    {"e": e, "value": value, "mult": mult}
                    for e, value, mult in self.factors
                ],
            },
            sort_keys=True,
        )


def pair_counts(h1_ab: RhoSum) -> dict[int, int]:
    """Inverse-pair counts m_e per character order within the abelian part."""
    out: dict[int, int] = {}
    for d, a in h1_ab.items():
        if a.denominator != 1 or a < 0:
            raise IntegrityError(f"abelian part is not effective at rho_{d}")
        chars = int(a * euler_phi(d))
        if d <= 2:
            if chars % 2 != 0:
                raise IntegrityError(
                    f"odd count {chars} of self-inverse order-{d} characters "
                    "violates the symplectic pairing"
                )
            m = chars // 2
        else:
            m = chars // 2  # phi(d) is even for d >= 3
        if m:
            out[d] = m
    return out


def root_number(rep: InertiaRep, q: int, m_T_value: int) -> RootNumberResult:
    """Evaluate the computable sign; ambiguity tracks a nonzero toric part."""
    if q == 2 or not is_prime(q):
        raise ValueError(f"q = {q} must be an odd prime")
    if m_T_value not in (0, 1):
        raise ValueError("m_T is a mod-2 class")
    sign = 1
    trace = []
    for e, m in sorted(pair_counts(rep.h1_ab).items()):
        value = w_factor(q, e)
        sign *= value**m
        trace.append((e, value, m))
    if m_T_value:
        value = w_factor(q, 2)
        sign *= value
        trace.append((2, value, 1))
    return RootNumberResult(
        computable_sign=sign,
        frobenius_ambiguous=bool(rep.h1_t),
        factors=tuple(trace),
    )


def m_T(pic: ClusterPicture, action: TameAction) -> int:
    """Parity of the quadratic-character count of the toric part.

    Over orbit representatives of proper even non-ubereven clusters:
    the number with even n_s * mu_s, plus the sum of the n_s, mod 2.
    Assumes a monic model (the top cluster contributes nothing).
    """
    even_reps = action.orbit_representatives(
        [
            s
            for s in pic.proper_clusters
            if len(s) % 2 == 0 and not pic.is_ubereven(s)
        ]
    )
    count = 0
    for s in even_reps:
        n_s = action.n[s]
        if v_q(2, Fraction(n_s) * pic.mu(s)) >= 1:
            count += 1
        count += n_s
    return count % 2
