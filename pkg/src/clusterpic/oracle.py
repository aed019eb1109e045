"""Brute-force character arithmetic used to cross-check the closed formulas.

Characters of a cyclic group C_N are indexed by residues j mod N; the
character of index j has order N / gcd(N, j).  On this indexing every
operation the representation formulas perform is elementary:

* permutation representation of an orbit of length L: all indices whose
  order divides L, each once;
* tensoring with a fixed character: an index shift;
* induction from the index-n subgroup of C_{nN}: an index j lifts to all
  residues congruent to j mod N.

Everything is exact integer bookkeeping over explicit index multisets,
entirely independent of the twist/induction coefficient formulas it is
used to verify.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction

from .cluster import Cluster, ClusterPicture
from .errors import IntegrityError
from .inertia import TameAction
from .numbers import euler_phi, lcm_all
from .repn import ClusterRepData, EpsilonKind, RhoSum, cluster_rep_data

__all__ = [
    "counts_to_rho_sum",
    "oracle_ind_V",
    "oracle_induce",
    "oracle_twist",
]


def _char_order(N: int, j: int) -> int:
    import math

    return N // math.gcd(N, j % N)


def _indices_of_order(N: int, d: int) -> list[int]:
    if N % d != 0:
        raise ValueError(f"C_{N} has no characters of order {d}")
    return [j for j in range(N) if _char_order(N, j) == d]


def counts_to_rho_sum(N: int, counts: Counter, require_full: bool = False) -> RhoSum:
    """Regroup an index multiset into rho atoms.

    Characters of a given order must all carry the same multiplicity; a
    multiplicity m on k of the phi(d) characters reads as the formal sum
    (m*k/phi(d)) rho_d.  With ``require_full`` every character of each
    occurring order must be present -- true of any honestly assembled
    representation, since Galois conjugation permutes same-order
    characters transitively.
    """
    by_order: dict[int, dict[int, int]] = {}
    for j, c in counts.items():
        if c:
            by_order.setdefault(_char_order(N, j), {})[j % N] = c
    mult: dict[int, Fraction] = {}
    for d, seen in by_order.items():
        values = set(seen.values())
        if len(values) != 1:
            raise IntegrityError(
                f"character multiset is not uniform at order {d}: {seen}"
            )
        if require_full and len(seen) != euler_phi(d):
            raise IntegrityError(
                f"only {len(seen)} of the {euler_phi(d)} characters of order "
                f"{d} appear: {seen}"
            )
        mult[d] = Fraction(values.pop() * len(seen), euler_phi(d))
    return RhoSum(mult)


def oracle_twist(t: int, d: int, generator_unit: int = 1) -> RhoSum:
    """gamma_t tensor rho_d by explicit index shifts in C_lcm(d,t)."""
    N = lcm_all([d, t])
    if generator_unit % t == 0 and t > 1:
        raise ValueError("generator unit must define an order-t character")
    shift = (N // t) * generator_unit
    if _char_order(N, shift) != t:
        raise ValueError("generator unit must define an order-t character")
    counts = Counter((j + shift) % N for j in _indices_of_order(N, d))
    return counts_to_rho_sum(N, counts)


def oracle_induce(r: RhoSum, n: int) -> RhoSum:
    """Induction computed by lifting index classes, component by component."""
    out = RhoSum.zero()
    for d, a in r.items():
        B = d
        M = B * n
        counts: Counter = Counter()
        for j in _indices_of_order(B, d):
            for k in range(j, M, B):
                counts[k] += 1
        out = out + a * counts_to_rho_sum(M, counts)
    return out


def oracle_ind_V(
    pic: ClusterPicture,
    action: TameAction,
    s: Cluster,
    p: int | None = None,
    generator_unit: int = 1,
    data: ClusterRepData | None = None,
) -> RhoSum:
    """Recompute the induced cluster representation from first principles.

    Builds the permutation character of the stabilizer on the odd children
    from the raw orbit structure, subtracts the trivial character, shifts
    by an explicit order-t character, subtracts the sign character, and
    induces by lifting indices.  ``generator_unit`` selects which primitive
    order-t character plays gamma; the result must not depend on it.
    """
    if data is None:
        data = cluster_rep_data(pic, action, s, p)
    n, t = data.n, data.gamma_order
    # Group large enough for the subgroup index, the twisting character,
    # the child orbits, and an order-2 sign character.
    N = lcm_all([data.nprime, t, 2])
    M = n * N
    stab = action.stab_power(s)
    odd_orbit_lengths = []
    seen: set[Cluster] = set()
    for c in pic.odd_children(s):
        if c in seen:
            continue
        orbit = [c]
        cur = frozenset(stab[i] for i in c)
        while cur != c:
            orbit.append(cur)
            cur = frozenset(stab[i] for i in cur)
        seen.update(orbit)
        odd_orbit_lengths.append(len(orbit))
    # Virtual character of Stab(s) as signed index counts.
    counts: Counter = Counter()
    for L in odd_orbit_lengths:
        if N % L != 0:
            raise IntegrityError("orbit length does not divide the stabilizer order")
        for j in range(0, N, N // L):
            counts[j] += 1
    counts[0] -= 1
    shift = (N // t) * generator_unit
    if _char_order(N, shift) != t:
        raise ValueError("generator unit must define an order-t character")
    counts = Counter({(j + shift) % N: c for j, c in counts.items() if c})
    if data.epsilon is EpsilonKind.TRIVIAL:
        counts[0] -= 1
    elif data.epsilon is EpsilonKind.ORDER_TWO:
        counts[N // 2] -= 1
    induced: Counter = Counter()
    for j, c in counts.items():
        if c:
            for k in range(j, M, N):
                induced[k] += c
    return counts_to_rho_sum(M, induced, require_full=True)
