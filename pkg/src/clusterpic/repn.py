"""Inertia representations from cluster pictures.

The currency here is the *rho-sum*: a formal rational combination of the
atoms rho_d, where rho_d stands for the direct sum of all phi(d) characters
of exact order d of a (large enough) cyclic group.  Intermediate virtual
sums may carry negative or fractional multiplicities; any fully assembled
representation must come out effective with integer multiplicities.

Two independent routes compute the induced cluster representation Ind V_s:

* :func:`ind_V` evaluates the closed formula built from the twist and
  induction rules below;
* :mod:`clusterpic.oracle` recomputes it by explicit character arithmetic.

The per-cluster data feeding both is:

    n_s      index of the stabilizer of s in the cyclic group,
    n'_s     denom(d_s * n_s), the orbit length of non-orphan children,
    mu_s     sum over outside roots of the depth of their meet with s,
    lambda_s n_s * (mu_s + d_s * #odd children) / 2,
    gamma_s  a character of order t = prime-to-p part of denom(lambda_s),
    eps_s    zero for odd s; for even s trivial or of order two according
             to whether v_2(n_s * mu_s) >= 1.

The total representation splits as an abelian part plus a toric part
tensored with a formal 2-dimensional special factor, written sp(2): the
abelian part sums Ind V_s over orbit representatives of proper
non-ubereven clusters, the toric part sums Ind eps_s and removes eps of
the top cluster.  Defining polynomials are assumed monic, which forces
mu of the top cluster to vanish.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product

from .cluster import Cluster, ClusterPicture
from .errors import IntegrityError
from .inertia import TameAction
from .numbers import (
    denom,
    divisors,
    euler_phi,
    factorize,
    gcd_inf,
    lcm_all,
    prime_to_p_part,
    v_q,
)

__all__ = [
    "ClusterRepData",
    "EpsilonKind",
    "InertiaRep",
    "RhoSum",
    "assemble_H1",
    "cluster_rep_data",
    "genus",
    "ind_V",
    "ind_epsilon",
    "induce",
    "twist",
]


class RhoSum:
    """Formal sum of rho_d atoms with rational multiplicities.

    Immutable; zero multiplicities are dropped on construction.  Supports
    +, -, and scalar multiplication.
    """

    __slots__ = ("_mult",)

    def __init__(self, mult: dict[int, Fraction] | None = None):
        clean: dict[int, Fraction] = {}
        for d, a in (mult or {}).items():
            a = Fraction(a)
            if a != 0:
                if d < 1:
                    raise ValueError(f"rho order must be positive, got {d}")
                clean[d] = a
        object.__setattr__(self, "_mult", dict(sorted(clean.items())))

    @classmethod
    def zero(cls) -> "RhoSum":
        return cls({})

    @classmethod
    def rho(cls, d: int, mult: Fraction | int = 1) -> "RhoSum":
        return cls({d: Fraction(mult)})

    def items(self) -> tuple[tuple[int, Fraction], ...]:
        return tuple(self._mult.items())

    def multiplicity(self, d: int) -> Fraction:
        return self._mult.get(d, Fraction(0))

    def __add__(self, other: "RhoSum") -> "RhoSum":
        out = dict(self._mult)
        for d, a in other._mult.items():
            out[d] = out.get(d, Fraction(0)) + a
        return RhoSum(out)

    def __sub__(self, other: "RhoSum") -> "RhoSum":
        out = dict(self._mult)
        for d, a in other._mult.items():
            out[d] = out.get(d, Fraction(0)) - a
        return RhoSum(out)

    def __mul__(self, scalar) -> "RhoSum":
        s = Fraction(scalar)
        return RhoSum({d: a * s for d, a in self._mult.items()})

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self._mult)

    def __eq__(self, other) -> bool:
        return isinstance(other, RhoSum) and self._mult == other._mult

    def __hash__(self) -> int:
        return hash(tuple(self._mult.items()))

    def dimension(self) -> Fraction:
        return sum((a * euler_phi(d) for d, a in self._mult.items()), Fraction(0))

    def is_effective(self) -> bool:
        """All multiplicities nonnegative integers."""
        return all(a.denominator == 1 and a >= 0 for a in self._mult.values())

    def character_counts_integral(self) -> bool:
        """Each multiplicity times phi(d) is a nonnegative integer."""
        return all(
            (a * euler_phi(d)).denominator == 1 and a >= 0 for d, a in self._mult.items()
        )

    def __str__(self) -> str:
        if not self._mult:
            return "0"
        parts = []
        for d, a in self._mult.items():
            coeff = "" if a == 1 else f"{a}"
            parts.append(f"{coeff}p{d}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json_obj(self) -> dict:
        return {"rho": {str(d): str(a) for d, a in self._mult.items()}}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RhoSum":
        return cls({int(d): Fraction(a) for d, a in obj["rho"].items()})

    @classmethod
    def parse(cls, text: str) -> "RhoSum":
        """Parse the compact text form, e.g. ``2p2 + p9`` or ``0``."""
        text = text.strip()
        if text == "0":
            return cls.zero()
        mult: dict[int, Fraction] = {}
        for part in text.replace("+", " ").split():
            if "p" not in part:
                raise ValueError(f"bad rho-sum term {part!r}")
            coeff, _, order = part.partition("p")
            d = int(order)
            a = Fraction(coeff) if coeff else Fraction(1)
            mult[d] = mult.get(d, Fraction(0)) + a
        return cls(mult)


# -- twist and induction rules -------------------------------------------------


def twist(t: int, d: int) -> RhoSum:
    """Tensor a fixed order-t character against all order-d characters.

    The orders that appear divide lcm(d, t) with shared-prime exponents
    knocked down; at a shared prime q the full-exponent stratum picks up
    the factor (q-2)/(q-1), everything else passes through untouched.
    """
    if t < 1 or d < 1:
        raise ValueError("character orders must be positive")
    shared = [q for q in factorize(d) if factorize(t).get(q) == factorize(d)[q]]
    vt = {q: factorize(t)[q] for q in shared}
    lcm_dt = lcm_all([d, t])
    base = Fraction(euler_phi(d), euler_phi(lcm_dt))
    out: dict[int, Fraction] = {}
    ranges = [range(vt[q] + 1) for q in shared]
    for exps in product(*ranges):
        s = lcm_dt
        for q, m in zip(shared, exps):
            s //= q**m
        alpha = base
        for q in shared:
            if _valuation(q, s) == vt[q]:
                alpha *= Fraction(q - 2, q - 1)
        out[s] = out.get(s, Fraction(0)) + alpha
    return RhoSum(out)


def _valuation(q: int, n: int) -> int:
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


def induce(r: RhoSum, n: int) -> RhoSum:
    """Induce a rho-sum from a subgroup of index ``n`` in a cyclic group.

    Componentwise: rho_d induces to the sum of rho_{d*g*n1} over divisors
    n1 of n/g with weight g*phi(d)/phi(g*d), where g = gcd_inf(n, d).
    """
    if n < 1:
        raise ValueError("index must be positive")
    out = RhoSum.zero()
    for d, a in r.items():
        g = gcd_inf(n, d)
        beta = Fraction(g * euler_phi(d), euler_phi(g * d))
        for n1 in divisors(n // g):
            out = out + RhoSum.rho(d * g * n1, a * beta)
    return out


# -- per-cluster data ------------------------------------------------------------


class EpsilonKind(Enum):
    ZERO = "zero"
    TRIVIAL = "trivial"
    ORDER_TWO = "order2"


@dataclass(frozen=True)
class ClusterRepData:
    """Everything the representation formula needs to know about one cluster."""

    cluster: Cluster
    n: int
    nprime: int
    odd_count: int
    has_odd_orphan: bool
    mu: Fraction
    lam: Fraction
    gamma_order: int
    epsilon: EpsilonKind
    ubereven: bool


def cluster_rep_data(
    pic: ClusterPicture, action: TameAction, s: Cluster, p: int | None = None
) -> ClusterRepData:
    """Compute the invariant package of a proper cluster under an action."""
    n_s = action.n[s]
    nprime = denom(pic.depths[s] * n_s)
    odd = pic.odd_children(s)
    orphan = action.orphan[s]
    has_odd_orphan = orphan is not None and len(orphan) % 2 == 1
    mu = pic.mu(s)
    lam = Fraction(n_s, 2) * (mu + pic.depths[s] * len(odd))
    t = 1 if lam == 0 else prime_to_p_part(denom(lam), p)
    if len(s) % 2 == 1:
        eps = EpsilonKind.ZERO
    elif v_q(2, n_s * mu) >= 1:
        eps = EpsilonKind.TRIVIAL
    else:
        eps = EpsilonKind.ORDER_TWO
    return ClusterRepData(
        cluster=s,
        n=n_s,
        nprime=nprime,
        odd_count=len(odd),
        has_odd_orphan=has_odd_orphan,
        mu=mu,
        lam=lam,
        gamma_order=t,
        epsilon=eps,
        ubereven=pic.is_ubereven(s),
    )


def ind_epsilon(data: ClusterRepData) -> RhoSum:
    """Induction of the sign character of a cluster to the full group."""
    n = data.n
    if data.epsilon is EpsilonKind.ZERO:
        return RhoSum.zero()
    if data.epsilon is EpsilonKind.TRIVIAL:
        return RhoSum({m: Fraction(1) for m in divisors(n)})
    return RhoSum({m: Fraction(1) for m in divisors(2 * n) if n % m != 0})


def ind_V(data: ClusterRepData) -> RhoSum:
    """Closed form of the induced cluster representation.

    Assembly: floor(odd/n') copies of the twisted regular part, a defect
    term when the odd children fill their orbits exactly (no odd orphan),
    minus the induced sign character.  The result must be effective.
    """
    if data.ubereven:
        raise IntegrityError("ind_V is not defined for ubereven clusters")
    n, nprime, t = data.n, data.nprime, data.gamma_order
    floor_count = data.odd_count // nprime
    out = RhoSum.zero()
    if floor_count:
        for d in divisors(nprime):
            out = out + floor_count * induce(twist(t, d), n)
    defect = data.odd_count - nprime * floor_count - 1
    if defect:
        out = out + induce(RhoSum.rho(t, Fraction(defect, euler_phi(t))), n)
    out = out - ind_epsilon(data)
    if not out.is_effective():
        raise IntegrityError(
            f"ind_V produced a non-effective sum {out} for cluster "
            f"{sorted(data.cluster)}; the formula was misapplied"
        )
    return out


# -- assembly ---------------------------------------------------------------------


def genus(n_roots: int) -> int:
    return (n_roots - 1) // 2


@dataclass(frozen=True)
class InertiaRep:
    """First cohomology as an inertia representation.

    ``h1_t`` is implicitly tensored with the formal 2-dimensional factor
    sp(2), so dim h1_ab + 2 dim h1_t = 2g.
    """

    h1_ab: RhoSum
    h1_t: RhoSum
    group_order: int

    def dimension_check(self, n_roots: int) -> bool:
        return self.h1_ab.dimension() + 2 * self.h1_t.dimension() == 2 * genus(n_roots)

    def to_json(self) -> str:
        return json.dumps(
            {
                "h1_ab": self.h1_ab.to_json_obj(),
                "h1_t": self.h1_t.to_json_obj(),
                "sp2_factor": True,
                "group_order": self.group_order,
            },
            sort_keys=True,
        )

    def __str__(self) -> str:
        return f"H1_ab = {self.h1_ab}; H1_t = {self.h1_t}"


def assemble_H1(pic: ClusterPicture, action: TameAction, p: int | None = None) -> InertiaRep:
    """Assemble the full inertia representation from per-cluster pieces.

    Sums run over orbit representatives (canonically smallest member) of
    proper non-ubereven clusters; the top-cluster sign character is removed
    from the toric part.  Requires at least three roots.
    """
    if pic.size < 3:
        raise IntegrityError("the representation needs at least 3 roots")
    non_uber = [s for s in pic.proper_clusters if not pic.is_ubereven(s)]
    reps = action.orbit_representatives(non_uber)
    h1_ab = RhoSum.zero()
    h1_t = RhoSum.zero()
    for s in reps:
        data = cluster_rep_data(pic, action, s, p)
        h1_ab = h1_ab + ind_V(data)
        h1_t = h1_t + ind_epsilon(data)
    root_data = cluster_rep_data(pic, action, pic.root, p)
    if root_data.n != 1 or root_data.mu != 0:
        raise IntegrityError("top cluster must be fixed with vanishing mu")
    if root_data.epsilon is EpsilonKind.TRIVIAL:
        h1_t = h1_t - RhoSum.rho(1)
    elif root_data.epsilon is EpsilonKind.ORDER_TWO:  # pragma: no cover - mu_R = 0
        h1_t = h1_t - RhoSum.rho(2)
    if not (h1_ab.is_effective() and h1_t.is_effective()):
        raise IntegrityError(
            f"assembled representation is not effective: ab={h1_ab}, t={h1_t}"
        )
    rep = InertiaRep(h1_ab, h1_t, action.order)
    if not rep.dimension_check(pic.size):
        raise IntegrityError(
            f"dimension check failed: dim ab={h1_ab.dimension()}, "
            f"dim t={h1_t.dimension()}, 2g={2 * genus(pic.size)}"
        )
    return rep
