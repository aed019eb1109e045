"""Seeded generation of random realizable pictures for self-tests.

The generator works top-down like the realizability check itself: at each
cluster it picks a child-orbit length compatible with the isomorphism
classes of the children, a denominator from the matching candidate set,
and a numerator of random parity, so every emitted picture carries a
cyclic action by construction.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .cluster import Cluster, ClusterPicture
from .inertia import candidate_denominators
from .numbers import lcm_all
from .shapes import Shape, shape_clusters

__all__ = ["random_picture", "random_shape"]


def random_shape(rng: random.Random, n: int) -> Shape:
    if n == 1:
        return 1
    while True:
        parts: list[int] = []
        remaining = n
        while remaining:
            part = rng.randint(1, remaining)
            parts.append(part)
            remaining -= part
        if len(parts) >= 2:
            return tuple(random_shape(rng, p) for p in parts)


def _pick_numerator(rng: random.Random, b: int, lower: Fraction) -> Fraction:
    """A random value N/b > lower with gcd(N, b) = 1, small and parity-mixed."""
    base = math.floor(lower * b) + 1
    options = [N for N in range(base, base + 4 * b) if math.gcd(N, b) == 1]
    return Fraction(rng.choice(options), b)


def random_picture(
    rng: random.Random,
    max_roots: int = 12,
    max_order: int = 60,
    max_denominator: int = 24,
) -> ClusterPicture:
    """A random picture admitting a cyclic action, with bounded group order."""
    while True:
        n = rng.randint(2, max_roots)
        shape = random_shape(rng, n)
        if shape == 1:
            continue
        clusters, _ = shape_clusters(shape)
        pic = _assign_depths(rng, shape, clusters, max_denominator)
        if pic is None:
            continue
        denoms = [pic.depths[c].denominator for c in pic.proper_clusters]
        if lcm_all(denoms) <= max_order:
            return pic


def _assign_depths(
    rng: random.Random,
    shape: Shape,
    clusters: dict[Cluster, Shape],
    max_denominator: int,
) -> ClusterPicture | None:
    by_members: dict[Cluster, Shape] = clusters
    root = max(by_members, key=len)
    depths: dict[Cluster, Fraction] = {}

    def children_of(c: Cluster) -> list[Cluster]:
        kids = [
            k
            for k in by_members
            if k < c and not any(k < m < c for m in by_members)
        ]
        singles = set(c) - set().union(*[set(k) for k in kids]) if kids else set(c)
        return sorted(kids, key=min) + [frozenset([i]) for i in sorted(singles)]

    def subtree_shape_key(c: Cluster):
        if len(c) == 1:
            return (1,)
        from .shapes import shape_key

        return shape_key(by_members[c])

    def copy_depths(src: Cluster, dst: Cluster) -> None:
        # transport a generated assignment onto an isomorphic sibling
        if len(src) == 1:
            return
        depths[dst] = depths[src]
        src_kids = sorted(children_of(src), key=lambda k: (subtree_shape_key(k), min(k)))
        dst_kids = sorted(children_of(dst), key=lambda k: (subtree_shape_key(k), min(k)))
        for a, b in zip(src_kids, dst_kids):
            copy_depths(a, b)

    def assign(c: Cluster, n_s: int, lower: Fraction) -> bool:
        if len(c) == 1:
            return True
        kids = children_of(c)
        classes: dict[object, list[Cluster]] = {}
        for k in kids:
            classes.setdefault(subtree_shape_key(k), []).append(k)
        feasible: list[tuple[int, Cluster | None]] = []
        for L in range(1, max(len(m) for m in classes.values()) + 1):
            bad = [m for m in classes.values() if len(m) % L != 0]
            if L == 1:
                feasible.append((1, None))
            elif not bad:
                feasible.append((L, None))
            elif len(bad) == 1 and len(bad[0]) % L == 1:
                feasible.append((L, bad[0][-1]))
        L, orphan = rng.choice(feasible)
        bs = [b for b in candidate_denominators(n_s, L) if b <= max_denominator]
        if not bs:
            return False
        b = rng.choice(bs)
        depths[c] = _pick_numerator(rng, b, lower)
        if orphan is not None and not assign(orphan, n_s, depths[c]):
            return False
        for members in classes.values():
            members = [m for m in members if m != orphan]
            for i in range(0, len(members), L):
                rep = members[i]
                if not assign(rep, n_s * L, depths[c]):
                    return False
                for mate in members[i + 1 : i + L]:
                    copy_depths(rep, mate)
        return True

    if not assign(root, 1, Fraction(-1)):
        return None
    return ClusterPicture(len(root), depths)
