"""Cyclic symmetry of a cluster picture: existence, checking, denominators.

A picture is realizable by a polynomial over a p-adic field (for large p)
exactly when it carries a cyclic leaf permutation whose orbit lengths and
stabilizer indices are pinned down by the depth denominators:

* the group order is the lcm of all depth denominators;
* inside each proper cluster s, the non-orphan children form orbits of the
  stabilizer of s, all of length denom(d_s * n_s) where n_s is the index
  of that stabilizer;
* n_s is the lcm of the relevant ancestor denominators, where an ancestor
  whose child toward s is an orphan contributes 1 instead.

An *orphan* of s is the unique child fixed by the stabilizer of s, when a
unique fixed child exists.  Given the depths, the whole structure is
forced top-down: each cluster's child-orbit length is determined, and the
orphan (if any) is the unique class member left over.  ``find_action``
exploits this to construct a witness permutation or report impossibility.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cluster import Cluster, ClusterPicture
from .errors import IntegrityError, NotPolynomialTypeError, PictureError, WildInertiaError
from .numbers import denom, divisors, gcd_inf, is_prime, lcm_all

__all__ = [
    "ActionReport",
    "OrphanPicture",
    "TameAction",
    "analyze_permutation",
    "candidate_denominators",
    "check_action",
    "enumerate_denominators",
    "find_action",
    "perm_order",
    "prime_warnings",
    "required_order",
]


def required_order(pic: ClusterPicture) -> int:
    """lcm of the depth denominators over all proper clusters."""
    if not pic.proper_clusters:
        return 1
    return lcm_all(denom(pic.depths[c]) for c in pic.proper_clusters)


def perm_order(perm: tuple[int, ...]) -> int:
    seen = [False] * len(perm)
    lengths = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        n, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            n += 1
        lengths.append(n)
    return lcm_all(lengths) if lengths else 1


def apply_to_cluster(perm: tuple[int, ...], c: Cluster) -> Cluster:
    return frozenset(perm[i] for i in c)


def _cluster_orbit(perm: tuple[int, ...], c: Cluster) -> list[Cluster]:
    orbit = [c]
    cur = apply_to_cluster(perm, c)
    while cur != c:
        orbit.append(cur)
        cur = apply_to_cluster(perm, cur)
    return orbit


def _perm_power(perm: tuple[int, ...], k: int) -> tuple[int, ...]:
    out = list(range(len(perm)))
    base = list(perm)
    while k:
        if k & 1:
            out = [base[i] for i in out]
        base = [base[i] for i in base]
        k >>= 1
    return tuple(out)


@dataclass(frozen=True)
class TameAction:
    """A cyclic generator acting on a picture, with derived per-cluster data.

    ``n``: stabilizer index [C : Stab(s)] per cluster; ``orphan``: the
    designated fixed child per proper cluster or None; ``child_orbit_len``:
    the common orbit length of non-orphan children under Stab(s).
    """

    picture: ClusterPicture
    perm: tuple[int, ...]
    order: int
    n: dict[Cluster, int] = field(compare=False)
    orphan: dict[Cluster, Optional[Cluster]] = field(compare=False)
    child_orbit_len: dict[Cluster, int] = field(compare=False)

    def nprime(self, s: Cluster) -> int:
        """denom(d_s * n_s): the forced orbit length of non-orphan children."""
        return denom(self.picture.depths[s] * self.n[s])

    def stab_power(self, s: Cluster) -> tuple[int, ...]:
        """The generator of Stab(s) as a leaf permutation (c^{n_s})."""
        return _perm_power(self.perm, self.n[s])

    def cluster_orbit(self, s: Cluster) -> tuple[Cluster, ...]:
        return tuple(_cluster_orbit(self.perm, s))

    def orbit_representatives(self, clusters) -> list[Cluster]:
        """Canonically smallest member of each orbit among ``clusters``."""
        seen: set[Cluster] = set()
        reps = []
        for c in sorted(clusters, key=lambda c: (len(c), sorted(c))):
            if c in seen:
                continue
            reps.append(c)
            seen.update(_cluster_orbit(self.perm, c))
        return reps

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self.perm)
        out = []
        for i in range(len(self.perm)):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.perm[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.perm[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))


@dataclass(frozen=True)
class OrphanPicture:
    """A picture together with its orphan markings."""

    picture: ClusterPicture
    orphans: frozenset[Cluster]

    def format(self) -> str:
        return self.picture.format(orphans=self.orphans)

    def __str__(self) -> str:
        return self.format()


def _is_automorphism(pic: ClusterPicture, perm: tuple[int, ...]) -> Optional[str]:
    """None if perm induces a depth-preserving automorphism, else a reason."""
    if sorted(perm) != list(range(pic.size)):
        return "not a permutation of the leaves"
    for c in pic.proper_clusters:
        img = apply_to_cluster(perm, c)
        if img not in pic.depths:
            return f"image of {sorted(c)} is not a cluster"
        if pic.depths[img] != pic.depths[c]:
            return f"depth changes along the orbit of {sorted(c)}"
    return None


def analyze_permutation(pic: ClusterPicture, perm: tuple[int, ...]) -> TameAction:
    """Derive orbit/stabilizer/orphan data; requires a picture automorphism."""
    reason = _is_automorphism(pic, perm)
    if reason is not None:
        raise PictureError(f"permutation is not a picture automorphism: {reason}")
    order = perm_order(perm)
    n: dict[Cluster, int] = {}
    orphan: dict[Cluster, Optional[Cluster]] = {}
    child_len: dict[Cluster, int] = {}
    for s in pic.clusters:
        n[s] = len(_cluster_orbit(perm, s))
    for s in pic.proper_clusters:
        stab = _perm_power(perm, n[s])
        fixed = [c for c in pic.children[s] if apply_to_cluster(stab, c) == c]
        orphan[s] = fixed[0] if len(fixed) == 1 else None
        lengths = {
            len(_cluster_orbit(stab, c)) for c in pic.children[s] if c != orphan[s]
        }
        child_len[s] = max(lengths) if lengths else 1
    return TameAction(pic, tuple(perm), order, n, orphan, child_len)


# -- checking ---------------------------------------------------------------


@dataclass
class CheckEntry:
    condition: str
    cluster: Optional[Cluster]
    ok: bool
    expected: object = None
    actual: object = None

    def to_dict(self) -> dict:
        out = {"condition": self.condition, "ok": self.ok}
        if self.cluster is not None:
            out["cluster"] = sorted(self.cluster)
        if self.expected is not None:
            out["expected"] = str(self.expected)
        if self.actual is not None:
            out["actual"] = str(self.actual)
        return out


@dataclass
class ActionReport:
    entries: list[CheckEntry]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def to_json(self) -> str:
        return json.dumps(
            {"ok": self.ok, "checks": [e.to_dict() for e in self.entries]}, sort_keys=True
        )


def check_action(
    pic: ClusterPicture, perm: tuple[int, ...], relative_depths: bool = False
) -> ActionReport:
    """Verdict per realizability condition; all-pass means the action works.

    With ``relative_depths=True`` the orbit-length condition is evaluated
    against relative instead of absolute depths -- a deliberately wrong
    variant kept for regression tests, since it must reject pictures the
    standard check accepts.
    """
    entries: list[CheckEntry] = []
    reason = _is_automorphism(pic, perm)
    entries.append(CheckEntry("automorphism", None, reason is None, None, reason))
    if reason is not None:
        return ActionReport(entries)
    action = analyze_permutation(pic, perm)
    entries.append(
        CheckEntry(
            "group-order", None, action.order == required_order(pic),
            required_order(pic), action.order,
        )
    )
    depth_of = pic.relative_depth if relative_depths else (lambda s: pic.depths[s])
    for s in pic.proper_clusters:
        stab = action.stab_power(s)
        expected = denom(depth_of(s) * action.n[s])
        lengths = sorted(
            len(_cluster_orbit(stab, c))
            for c in pic.children[s]
            if c != action.orphan[s]
        )
        ok = all(l == expected for l in lengths)
        entries.append(CheckEntry("orbit-length", s, ok, expected, lengths))
    for s in pic.clusters:
        expected_n = 1
        below = s
        for a in pic.ancestors(s):
            d_star = 1 if action.orphan[a] == below else denom(depth_of(a))
            expected_n = lcm_all([expected_n, d_star])
            below = a
        entries.append(
            CheckEntry("stabilizer-index", s, action.n[s] == expected_n, expected_n, action.n[s])
        )
    return ActionReport(entries)


# -- construction -----------------------------------------------------------


def _subtree_bijection(pic: ClusterPicture, src: Cluster, dst: Cluster) -> dict[int, int]:
    """Canonical leaf bijection between two isomorphic subtrees."""
    out: dict[int, int] = {}

    def walk(a: Cluster, b: Cluster) -> None:
        if len(a) == 1:
            (i,) = a
            (j,) = b
            out[i] = j
            return
        ka = sorted(pic.children[a], key=lambda k: (pic._canon_key(k), min(k)))
        kb = sorted(pic.children[b], key=lambda k: (pic._canon_key(k), min(k)))
        for x, y in zip(ka, kb):
            walk(x, y)

    walk(src, dst)
    return out


def _force_structure(pic: ClusterPicture, s: Cluster, n_s: int):
    """Forced (orbit length, orphan, grouped orbits) at ``s``, or an error string.

    Children are grouped by isomorphism class; non-orphan classes split into
    orbits of the forced length L = denom(d_s * n_s).  With L > 1 exactly one
    class member may be left over as the orphan; ties go to the rightmost
    member, matching the usual drawing convention.
    """
    L = denom(pic.depths[s] * n_s)
    classes: dict[object, list[Cluster]] = {}
    for c in pic.children[s]:
        classes.setdefault(pic._canon_key(c) if len(c) > 1 else "r", []).append(c)
    for members in classes.values():
        members.sort(key=min)
    orphan: Optional[Cluster] = None
    if L > 1:
        bad = [key for key, members in classes.items() if len(members) % L != 0]
        if len(bad) > 1:
            return f"children of {sorted(s)} cannot split into orbits of length {L}"
        if len(bad) == 1:
            members = classes[bad[0]]
            if len(members) % L != 1:
                return (
                    f"children of {sorted(s)} leave {len(members) % L} of an "
                    f"isomorphism class outside orbits of length {L}"
                )
            orphan = members[-1]
    orbits: list[list[Cluster]] = []
    for members in classes.values():
        members = [c for c in members if c != orphan]
        for i in range(0, len(members), L):
            orbits.append(members[i : i + L])
    return L, orphan, orbits


def _realize(pic: ClusterPicture, s: Cluster, n_s: int, sigma: dict[int, int]) -> Optional[str]:
    """Fill ``sigma`` with the action of c^{n_s} on the leaves of ``s``."""
    if len(s) == 1:
        (i,) = s
        sigma[i] = i
        return None
    forced = _force_structure(pic, s, n_s)
    if isinstance(forced, str):
        return forced
    L, orphan, orbits = forced
    if orphan is not None:
        err = _realize(pic, orphan, n_s, sigma)
        if err:
            return err
    for orbit in orbits:
        rep = orbit[0]
        tau: dict[int, int] = {}
        err = _realize(pic, rep, n_s * L, sigma=tau)
        if err:
            return err
        maps = [_subtree_bijection(pic, rep, member) for member in orbit]
        for i, member in enumerate(orbit):
            back = {v: k for k, v in maps[i].items()}
            nxt = maps[(i + 1) % L]
            for leaf in member:
                origin = back[leaf]
                if i + 1 < L:
                    sigma[leaf] = nxt[origin]
                else:
                    sigma[leaf] = nxt[tau[origin]]
    return None


def find_action(
    pic: ClusterPicture, p: int | str | None = None
) -> Optional[tuple[TameAction, OrphanPicture]]:
    """A cyclic action realizing the picture, or None when none exists.

    ``p`` may be a concrete odd prime or ``None``/"generic"; a concrete p
    must not divide the required group order (tameness), which otherwise
    raises :class:`WildInertiaError`.
    """
    e = required_order(pic)
    if p is not None and p != "generic":
        if not is_prime(p) or p == 2:
            raise PictureError(f"p = {p} is not an odd prime")
        if e % p == 0:
            raise WildInertiaError(
                f"p = {p} divides the required group order {e}; the action is wild"
            )
    sigma: dict[int, int] = {}
    err = _realize(pic, pic.root, 1, sigma)
    if err is not None:
        return None
    perm = tuple(sigma[i] for i in range(pic.size))
    action = analyze_permutation(pic, perm)
    report = check_action(pic, perm)
    if not report.ok or action.order != e:
        raise IntegrityError(
            f"constructed action fails its own checks: {report.to_json()}"
        )
    orphans = frozenset(o for o in action.orphan.values() if o is not None)
    return action, OrphanPicture(pic, orphans)


def require_action(pic: ClusterPicture, p=None) -> tuple[TameAction, OrphanPicture]:
    found = find_action(pic, p)
    if found is None:
        raise NotPolynomialTypeError(
            "no cyclic action matches the depth denominators; "
            "the picture is not of polynomial type for large p"
        )
    return found


def prime_warnings(pic: ClusterPicture, p: int | None) -> list[str]:
    """Non-fatal caveats when a concrete prime is small."""
    out = []
    if p is not None and p <= pic.size:
        out.append(
            f"p = {p} <= {pic.size} leaves: realizability over this prime is "
            "not guaranteed (the residue field may be too small)"
        )
    return out


# -- denominator recovery -----------------------------------------------------


def candidate_denominators(n_s: int, orbit_len: int) -> list[int]:
    """All denominators b with b / gcd(b, n_s) = orbit_len.

    Closed form: L * gcd_inf(n_s, L) * m over divisors m of the L-free part
    of n_s.  The brute-force scan over b <= (L*n_s)^2 is kept in tests.
    """
    g = gcd_inf(n_s, orbit_len)
    return sorted(orbit_len * g * m for m in divisors(n_s // g))


def enumerate_denominators(
    pic: ClusterPicture, action: TameAction
) -> tuple[dict[Cluster, list[int]], list[tuple[int, ...]]]:
    """Per-orbit-representative candidate sets plus consistent global tuples.

    Depths of ``pic`` are ignored except through the action's structure; the
    result describes every denominator assignment the same action supports.
    Tuples are ordered by the representative order (outside in) and filtered
    by the group-order condition lcm(tuple) = order of the action.
    """
    reps = action.orbit_representatives(pic.proper_clusters)
    reps.sort(key=lambda c: (-len(c), min(c)))
    candidates: dict[Cluster, list[int]] = {}
    for s in reps:
        stab = action.stab_power(s)
        lengths = {
            len(_cluster_orbit(stab, c))
            for c in pic.children[s]
            if c != action.orphan[s]
        }
        L = max(lengths) if lengths else 1
        candidates[s] = candidate_denominators(action.n[s], L)
    tuples: list[tuple[int, ...]] = []

    def extend(i: int, chosen: list[int]):
        if i == len(reps):
            achieved = lcm_all(chosen) if chosen else 1
            if achieved == action.order:
                tuples.append(tuple(chosen))
            return
        for b in candidates[reps[i]]:
            extend(i + 1, chosen + [b])

    extend(0, [])
    return candidates, tuples
