"""Witness polynomial synthesis.

Given a picture with a cyclic action, build an explicit integer polynomial
over Q_p whose root configuration reproduces the picture exactly.  Roots
are finite sums sum_s a(r,s) * u^(e*d_s) where u^e = p, with coefficients
a(r,s) in Z[zeta_e] chosen so that

* a(r,s) = 0 exactly when r is outside s or the child of s containing r
  is the orphan of s;
* representatives agree above the meet of any two of them;
* the coefficient difference at the meet of any two roots is a unit at a
  fixed prime above p.

The last condition makes every pairwise valuation of root differences
equal to the depth of the meet, so the recovered picture is isomorphic to
the input; the round trip is checked, not assumed.  Construction requires
all depths nonnegative; ``shift_depths`` records the integer shift m and
the caller compensates (the witness for the shifted picture corresponds
to substituting p^-m x and clearing denominators).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cluster import Cluster, ClusterPicture, isomorphic
from .errors import IntegrityError, PictureError, PrimeTooSmallError, UnitViolationError
from .inertia import TameAction, require_action
from .numbers import is_prime
from .ring import CyclotomicInt, IntPoly, ResidueField, poly_mul, poly_trim

__all__ = [
    "PiAdicElement",
    "WitnessPolynomial",
    "assign_coefficients",
    "build_roots",
    "choose_representatives",
    "construct_witness",
    "expand_polynomial",
    "recover_picture",
    "round_trip",
    "shift_depths",
    "valuation_of_difference",
]


@dataclass(frozen=True)
class PiAdicElement:
    """Finite sum of c_m * u^m with c_m in Z[zeta_e] and u^e = p.

    Exponents are kept unreduced (m ranges over nonnegative integers), so
    the leading term of a difference of roots is visible directly.
    """

    e: int
    terms: tuple[tuple[int, CyclotomicInt], ...]

    @classmethod
    def make(cls, e: int, terms: dict[int, CyclotomicInt]) -> "PiAdicElement":
        clean = {m: c for m, c in terms.items() if not c.is_zero()}
        if any(m < 0 for m in clean):
            raise ValueError("negative u-exponent")
        return cls(e, tuple(sorted(clean.items())))

    @classmethod
    def zero(cls, e: int) -> "PiAdicElement":
        return cls(e, ())

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "PiAdicElement") -> "PiAdicElement":
        if self.e != other.e:
            raise ValueError("mixed extensions")
        out = {m: c for m, c in self.terms}
        for m, c in other.terms:
            out[m] = (out[m] + c) if m in out else c
        return PiAdicElement.make(self.e, out)

    def __neg__(self) -> "PiAdicElement":
        return PiAdicElement(self.e, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: "PiAdicElement") -> "PiAdicElement":
        return self + (-other)

    def conjugate(self, k: int) -> "PiAdicElement":
        """Image under u -> zeta_e^k u."""
        return PiAdicElement.make(
            self.e,
            {m: c * CyclotomicInt.zeta_power(self.e, k * m) for m, c in self.terms},
        )

    def leading(self) -> tuple[int, CyclotomicInt]:
        if not self.terms:
            raise ValueError("zero element has no leading term")
        return self.terms[0]

    def to_json_obj(self) -> list:
        return [[m, list(c.coeffs)] for m, c in self.terms]


def valuation_of_difference(
    a: PiAdicElement, b: PiAdicElement, field: ResidueField
) -> Fraction:
    """Valuation of a - b, provided the leading coefficient is a unit.

    A non-unit leading coefficient signals that the coefficient assignment
    must be retried; no deeper p-adic expansion is attempted.
    """
    diff = a - b
    if diff.is_zero():
        raise PictureError("elements are equal; valuation of zero requested")
    m, c = diff.leading()
    if not field.is_unit(c):
        raise UnitViolationError(
            f"leading coefficient at u^{m} is not a unit at the chosen prime"
        )
    return Fraction(m, a.e)


# -- representatives and coefficients -----------------------------------------


def choose_representatives(pic: ClusterPicture, action: TameAction) -> list[int]:
    """One leaf per orbit, all drawn from one marked member per cluster orbit.

    Marking one child per orbit and recursing only into marked children
    guarantees that whenever a cluster meets the set, its proper conjugates
    do not.
    """
    reps: list[int] = []

    def walk(s: Cluster) -> None:
        if len(s) == 1:
            reps.append(min(s))
            return
        stab = action.stab_power(s)
        seen: set[Cluster] = set()
        for c in pic.children[s]:
            if c in seen:
                continue
            orbit = [c]
            cur = frozenset(stab[i] for i in c)
            while cur != c:
                orbit.append(cur)
                cur = frozenset(stab[i] for i in cur)
            seen.update(orbit)
            walk(min(orbit, key=min))

    walk(pic.root)
    return sorted(reps)


def _leaf_decomposition(action: TameAction, reps: list[int]) -> dict[int, tuple[int, int]]:
    """leaf -> (representative, k) with leaf = c^k(representative)."""
    out: dict[int, tuple[int, int]] = {}
    for y in reps:
        r, k = y, 0
        while True:
            if r in out:
                break
            out[r] = (y, k)
            r = action.perm[r]
            k += 1
    return out


class _Assignment:
    """Slot bookkeeping for the coefficient search.

    A slot is a pair (cluster s of a representative, child of s containing
    the representative); all representatives inside the same child share
    its value, and every other table entry is a root of unity times a slot
    value (or a forced zero).
    """

    def __init__(self, pic: ClusterPicture, action: TameAction, reps: list[int]):
        self.pic = pic
        self.action = action
        self.reps = reps
        self.e = action.order
        self.decomp = _leaf_decomposition(action, reps)
        inverse = [0] * pic.size
        for i, j in enumerate(action.perm):
            inverse[j] = i
        self.inverse = tuple(inverse)
        slots: list[tuple[Cluster, Cluster]] = []
        for y in reps:
            leaf = frozenset([y])
            below = leaf
            for s in pic.ancestors(leaf):
                if action.orphan[s] != below:
                    slot = (s, below)
                    if slot not in slots:
                        slots.append(slot)
                below = s
        slots.sort(key=lambda sc: (-len(sc[0]), min(sc[0]), min(sc[1])))
        self.slots = slots
        self.values: dict[tuple[Cluster, Cluster], int] = {}

    def _child_toward(self, s: Cluster, leaf: int) -> Cluster:
        for c in self.pic.children[s]:
            if leaf in c:
                return c
        raise AssertionError

    def slot_for(self, r: int, S: Cluster) -> Optional[tuple[tuple[Cluster, Cluster], int]]:
        """Generating slot and zeta exponent for table entry (r, S).

        Returns None for a forced zero entry.
        """
        if r not in S:
            return None
        y, k = self.decomp[r]
        s0 = S
        for _ in range(k):
            s0 = frozenset(self.inverse[i] for i in s0)
        child = self._child_toward(s0, y)
        if self.action.orphan[s0] == child:
            return None
        exponent = (k * int(self.e * self.pic.depths[S])) % self.e
        return (s0, child), exponent

    def coefficient(self, r: int, S: Cluster) -> Optional[CyclotomicInt]:
        """Table entry, or None when its slot is still unassigned."""
        located = self.slot_for(r, S)
        if located is None:
            return CyclotomicInt.integer(self.e, 0)
        slot, exponent = located
        if slot not in self.values:
            return None
        return self.values[slot] * CyclotomicInt.zeta_power(self.e, exponent)


def assign_coefficients(
    pic: ClusterPicture,
    action: TameAction,
    reps: list[int],
    p: int,
    field: ResidueField | None = None,
) -> dict[tuple[int, Cluster], CyclotomicInt]:
    """Search the smallest coefficient table passing all unit checks.

    Slot values are tried lexicographically over 1..p-1 (nonzero residues),
    outermost clusters first; the unit conditions are checked pairwise at
    the meet of every two leaves as soon as both generating slots are
    known.  Exhausting the residues raises :class:`PrimeTooSmallError`.
    """
    if field is None:
        field = ResidueField.for_prime(action.order, p)
    asg = _Assignment(pic, action, reps)
    pairs = []
    for r1 in range(pic.size):
        for r2 in range(r1 + 1, pic.size):
            pairs.append((r1, r2, pic.wedge(r1, r2)))

    def pair_ok(r1: int, r2: int, w: Cluster) -> Optional[bool]:
        c1 = asg.coefficient(r1, w)
        c2 = asg.coefficient(r2, w)
        if c1 is None or c2 is None:
            return None
        return field.is_unit(c1 - c2)

    def search(i: int) -> bool:
        if i == len(asg.slots):
            return True
        slot = asg.slots[i]
        for v in range(1, p):
            asg.values[slot] = v
            if all(pair_ok(*pr) is not False for pr in pairs) and search(i + 1):
                return True
            del asg.values[slot]
        return False

    if not search(0):
        raise PrimeTooSmallError(
            f"no coefficient assignment exists with residues below p = {p}; "
            f"a prime larger than the leaf count {pic.size} always works",
            needed=pic.size + 1,
        )
    table: dict[tuple[int, Cluster], CyclotomicInt] = {}
    for r in range(pic.size):
        for S in pic.proper_clusters:
            c = asg.coefficient(r, S)
            assert c is not None
            if not c.is_zero():
                table[(r, S)] = c
    _verify_table(pic, action, table, field)
    return table


def _verify_table(pic, action, table, field) -> None:
    """Cross-check the generated table against every stated constraint."""
    e = action.order
    zero = CyclotomicInt.integer(e, 0)

    def at(r, S):
        return table.get((r, S), zero)

    for r in range(pic.size):
        for S in pic.proper_clusters:
            entry = at(r, S)
            if r not in S:
                if not entry.is_zero():
                    raise IntegrityError("support leaks outside the cluster")
                continue
            child = next(c for c in pic.children[S] if r in c)
            if (action.orphan[S] == child) != entry.is_zero():
                raise IntegrityError("orphan-step zero pattern violated")
            image = at(action.perm[r], frozenset(action.perm[i] for i in S))
            rotated = entry * CyclotomicInt.zeta_power(e, int(e * pic.depths[S]))
            if image != rotated:
                raise IntegrityError("conjugation rule violated by the table")
    for r1 in range(pic.size):
        for r2 in range(r1 + 1, pic.size):
            w = pic.wedge(r1, r2)
            if not field.is_unit(at(r1, w) - at(r2, w)):
                raise IntegrityError("non-unit difference at a meet")
            for S in pic.proper_clusters:
                if w < S and at(r1, S) != at(r2, S):
                    raise IntegrityError("coefficients disagree above a meet")


# -- roots and expansion ---------------------------------------------------------


def build_roots(
    pic: ClusterPicture,
    action: TameAction,
    table: dict[tuple[int, Cluster], CyclotomicInt],
) -> list[PiAdicElement]:
    """All root expansions, in leaf order."""
    e = action.order
    roots = []
    for r in range(pic.size):
        terms: dict[int, CyclotomicInt] = {}
        leaf = frozenset([r])
        for S in [*pic.ancestors(leaf)]:
            d = pic.depths[S]
            if d < 0:
                raise IntegrityError("depths must be shifted nonnegative first")
            exponent = e * d
            if exponent.denominator != 1:
                raise IntegrityError(
                    f"depth {d} has denominator not dividing the group order {e}"
                )
            c = table.get((r, S))
            if c is not None:
                terms[int(exponent)] = c
        roots.append(PiAdicElement.make(e, terms))
    return roots


@dataclass(frozen=True)
class WitnessPolynomial:
    """An integer polynomial realizing a picture at an odd prime."""

    p: int
    e: int
    shift: int
    roots: tuple[PiAdicElement, ...]
    factors: tuple[IntPoly, ...]
    f: IntPoly

    def degree(self) -> int:
        return len(self.f) - 1

    def to_json(self) -> str:
        return json.dumps(
            {
                "p": self.p,
                "e": self.e,
                "shift": self.shift,
                "coefficients": [str(c) for c in self.f],
                "factors": [[str(c) for c in fac] for fac in self.factors],
                "roots": [r.to_json_obj() for r in self.roots],
            },
            sort_keys=True,
        )


def expand_polynomial(
    roots: list[PiAdicElement],
    p: int,
    e: int,
    orbits: list[list[int]],
) -> tuple[tuple[IntPoly, ...], IntPoly]:
    """Multiply out (x - root) per orbit and descend to integer coefficients.

    Every coefficient must involve only u-exponents divisible by e and a
    rational-integer cyclotomic part; u^e collapses to p.
    """
    factors = []
    for orbit in orbits:
        poly = [PiAdicElement.make(e, {0: CyclotomicInt.integer(e, 1)})]
        for leaf in orbit:
            alpha = roots[leaf]
            new = [PiAdicElement.zero(e) for _ in range(len(poly) + 1)]
            for i, c in enumerate(poly):
                new[i + 1] = new[i + 1] + c
                new[i] = new[i] - _piadic_mul(c, alpha)
            poly = new
        factors.append(tuple(_descend(c, p, e) for c in poly))
    f: IntPoly = (1,)
    for fac in factors:
        f = poly_mul(f, fac)
    return tuple(tuple(fac) for fac in factors), poly_trim(f)


def _piadic_mul(a: PiAdicElement, b: PiAdicElement) -> PiAdicElement:
    out: dict[int, CyclotomicInt] = {}
    for m1, c1 in a.terms:
        for m2, c2 in b.terms:
            m = m1 + m2
            prod = c1 * c2
            out[m] = (out[m] + prod) if m in out else prod
    return PiAdicElement.make(a.e, out)


def _descend(c: PiAdicElement, p: int, e: int) -> int:
    total = 0
    for m, coeff in c.terms:
        if m % e != 0:
            raise IntegrityError(
                f"coefficient has u-exponent {m} not divisible by {e}: "
                "the expansion does not descend to the base field"
            )
        total += coeff.as_integer() * p ** (m // e)
    return total


# -- recovery ----------------------------------------------------------------------


def recover_picture(
    roots: list[PiAdicElement], field: ResidueField
) -> ClusterPicture:
    """Picture of an explicit root list, clusters read off as valuation balls."""
    n = len(roots)
    e = roots[0].e
    val: dict[tuple[int, int], Fraction] = {}
    for i in range(n):
        for j in range(i + 1, n):
            val[(i, j)] = val[(j, i)] = valuation_of_difference(roots[i], roots[j], field)
    depths: dict[Cluster, Fraction] = {}
    for i in range(n):
        row = {val[(i, j)] for j in range(n) if j != i}
        for theta in row:
            ball = frozenset([i] + [j for j in range(n) if j != i and val[(i, j)] >= theta])
            if len(ball) > 1:
                depth = min(val[(a, b)] for a in ball for b in ball if a < b)
                depths[ball] = depth
    return ClusterPicture(n, depths)


def shift_depths(pic: ClusterPicture) -> tuple[ClusterPicture, int]:
    """Minimal integer shift making all depths nonnegative."""
    if not pic.proper_clusters:
        return pic, 0
    low = min(pic.depths.values())
    m = max(0, -math.floor(low))
    if m == 0:
        return pic, 0
    shifted = ClusterPicture(
        pic.size, {c: d + m for c, d in pic.depths.items()}, pic.labels
    )
    return shifted, m


def round_trip(pic: ClusterPicture, witness: WitnessPolynomial) -> bool:
    """Does the witness recover a picture isomorphic to ``pic``?"""
    field = ResidueField.for_prime(witness.e, witness.p)
    recovered = recover_picture(list(witness.roots), field)
    unshifted = ClusterPicture(
        recovered.size,
        {c: d - witness.shift for c, d in recovered.depths.items()},
    )
    return isomorphic(pic, unshifted) is not None


def construct_witness(pic: ClusterPicture, p: int) -> WitnessPolynomial:
    """End-to-end synthesis with the round trip verified before returning."""
    if not is_prime(p) or p == 2:
        raise PictureError(f"p = {p} must be an odd prime")
    shifted, m = shift_depths(pic)
    action, _ = require_action(shifted, p)
    field = ResidueField.for_prime(action.order, p)
    reps = choose_representatives(shifted, action)
    table = assign_coefficients(shifted, action, reps, p, field)
    roots = build_roots(shifted, action, table)
    orbits = []
    for y in reps:
        orbit = [y]
        cur = action.perm[y]
        while cur != y:
            orbit.append(cur)
            cur = action.perm[cur]
        orbits.append(orbit)
    factors, f = expand_polynomial(roots, p, action.order, orbits)
    witness = WitnessPolynomial(
        p=p, e=action.order, shift=m, roots=tuple(roots), factors=factors, f=f
    )
    if not round_trip(pic, witness):
        raise IntegrityError("witness failed the round-trip isomorphism check")
    return witness
