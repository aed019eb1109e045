"""Exact-arithmetic toolkit for cluster pictures.

Cluster pictures encode the p-adic distances between the roots of a
squarefree polynomial as a nested family of sets with rational depths.
This package decides when an abstract picture is realizable by a
polynomial, synthesizes explicit witness polynomials, and computes the
invariants the picture determines: the cyclic symmetry on roots, the
first-cohomology representation of a hyperelliptic curve with that root
configuration, the computable part of its local root number, and Kodaira
types in the three-root case.
"""

from .cluster import ClusterPicture, isomorphic, parse, parse_with_orphans
from .errors import (
    ClusterError,
    IntegrityError,
    NotPolynomialTypeError,
    PictureError,
    PrimeTooSmallError,
    WildInertiaError,
)
from .inertia import OrphanPicture, TameAction, check_action, find_action, required_order

__all__ = [
    "ClusterError",
    "ClusterPicture",
    "IntegrityError",
    "NotPolynomialTypeError",
    "OrphanPicture",
    "PictureError",
    "PrimeTooSmallError",
    "TameAction",
    "WildInertiaError",
    "check_action",
    "find_action",
    "isomorphic",
    "parse",
    "parse_with_orphans",
    "required_order",
]
