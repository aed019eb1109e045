"""Rooted-tree skeletons of cluster pictures.

A *shape* is a cluster picture with the depths forgotten: a rooted tree on
n leaves in which every internal node has at least two children.  Shapes
are represented as nested tuples, a leaf being the integer 1 and an
internal node the tuple of its children sorted canonically, so equal
tuples mean isomorphic shapes.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .cluster import Cluster, ClusterPicture

Shape = object  # 1 | tuple[Shape, ...]


def shape_size(shape: Shape) -> int:
    if shape == 1:
        return 1
    return sum(shape_size(c) for c in shape)


def shape_key(shape: Shape):
    """Total order making tuple representations canonical."""
    if shape == 1:
        return (1,)
    return (shape_size(shape), tuple(shape_key(c) for c in shape))


def canonical_shape(children: list[Shape]) -> Shape:
    return tuple(sorted(children, key=shape_key))


@lru_cache(maxsize=None)
def enumerate_shapes(n: int) -> tuple[Shape, ...]:
    """All shapes on ``n`` leaves up to isomorphism.

    Counts go 1, 1, 2, 5, 12, 33, ... (each internal node has >= 2
    children, children unordered).
    """
    if n < 1:
        raise ValueError("need at least one leaf")
    if n == 1:
        return (1,)
    out: list[Shape] = []

    def choose(remaining: int, max_key, chosen: list[Shape]):
        # children picked in weakly decreasing key order to avoid duplicates
        if remaining == 0:
            if len(chosen) >= 2:
                out.append(tuple(reversed(chosen)))
            return
        for size in range(remaining, 0, -1):
            for sub in enumerate_shapes(size):
                key = shape_key(sub)
                if key <= max_key:
                    choose(remaining - size, key, chosen + [sub])

    choose(n, (n + 1, ()), [])
    return tuple(sorted(out, key=shape_key))


def shape_of_picture(pic: ClusterPicture) -> Shape:
    def walk(c: Cluster) -> Shape:
        if len(c) == 1:
            return 1
        return canonical_shape([walk(k) for k in pic.children[c]])

    return walk(pic.root)


def shape_clusters(shape: Shape, start: int = 0) -> tuple[dict[Cluster, Shape], int]:
    """Concrete clusters of a shape with leaves numbered from ``start``.

    Returns the proper clusters (as leaf frozensets, children laid out left
    to right in canonical order) mapped to their sub-shape, and the next
    free leaf index.
    """
    out: dict[Cluster, Shape] = {}

    def walk(s: Shape, lo: int) -> tuple[Cluster, int]:
        if s == 1:
            return frozenset([lo]), lo + 1
        members: set[int] = set()
        cur = lo
        for child in s:
            c, cur = walk(child, cur)
            members |= c
        cluster = frozenset(members)
        out[cluster] = s
        return cluster, cur

    _, end = walk(shape, start)
    return out, end


def picture_from_depths(shape: Shape, depths: dict[Cluster, Fraction]) -> ClusterPicture:
    return ClusterPicture(shape_size(shape), depths)
