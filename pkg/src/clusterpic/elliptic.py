"""Three-root pictures: reduction type, Kodaira type, and root number.

A cubic has exactly two root configurations: all three roots equidistant
(one proper cluster -- potentially good reduction) or two roots closer to
each other than to the third (potentially multiplicative).  In the good
case everything is a function of the top depth mod 2; in the
multiplicative case the top depth is forced integral, reduction is
multiplicative exactly when it is even, and the fibre index is twice the
relative depth of the close pair.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .cluster import ClusterPicture
from .errors import PictureError
from .inertia import require_action
from .numbers import denom
from .repn import InertiaRep, assemble_H1
from .rootnum import RootNumberResult, m_T, root_number

__all__ = [
    "KodairaType",
    "classify",
    "kodaira_from_weierstrass",
    "potential_reduction",
]


@dataclass(frozen=True)
class KodairaType:
    """A fibre type tag: I0, II, III, IV, I0*, IV*, III*, II*, In, In*."""

    tag: str
    index: int = 0

    def __post_init__(self):
        if self.tag not in {"I0", "II", "III", "IV", "I0*", "IV*", "III*", "II*", "In", "In*"}:
            raise ValueError(f"unknown Kodaira tag {self.tag}")
        if self.tag in ("In", "In*") and self.index < 1:
            raise ValueError("In/In* need a positive index")

    def __str__(self) -> str:
        if self.tag == "In":
            return f"I{self.index}"
        if self.tag == "In*":
            return f"I{self.index}*"
        return self.tag


def potential_reduction(pic: ClusterPicture) -> str:
    """'potentially_good' iff the three roots are equidistant."""
    if pic.size != 3:
        raise PictureError("reduction type is defined for 3-root pictures")
    if len(pic.proper_clusters) == 1:
        return "potentially_good"
    return "potentially_multiplicative"


# Fibre data for the eight residues of the top depth mod 2 in the
# equidistant case: tag and the least extension degree killing inertia.
_GOOD_ROWS = {
    Fraction(0): "I0",
    Fraction(1, 3): "II",
    Fraction(1, 2): "III",
    Fraction(2, 3): "IV",
    Fraction(1): "I0*",
    Fraction(4, 3): "IV*",
    Fraction(3, 2): "III*",
    Fraction(5, 3): "II*",
}


def classify(
    pic: ClusterPicture, q: int
) -> tuple[KodairaType, InertiaRep, RootNumberResult]:
    """Kodaira type, inertia representation, and root number of a cubic.

    The representation comes from the generic assembly machinery, not from
    a table; q is the residue cardinality used for the sign factors.
    """
    kind = potential_reduction(pic)
    if kind == "potentially_good":
        if q < 5:
            raise PictureError("equidistant classification needs q >= 5")
        d = pic.depths[pic.root]
        if denom(d) > 3:
            raise PictureError(
                f"top depth denominator {denom(d)} exceeds 3; no cubic realizes it"
            )
        kod = KodairaType(_GOOD_ROWS[d % 2])
        action, _ = require_action(pic, q)
        rep = assemble_H1(pic, action, q)
        w = root_number(rep, q, m_T(pic, action))
        return kod, rep, w
    if q < 3:
        raise PictureError("odd residue characteristic required")
    d_top = pic.depths[pic.root]
    if denom(d_top) != 1:
        raise PictureError(
            "a two-cluster cubic picture forces an integral top depth; "
            f"{d_top} admits no action"
        )
    pair = next(c for c in pic.proper_clusters if c != pic.root)
    delta = pic.relative_depth(pair)
    index = 2 * delta
    if index.denominator != 1 or index <= 0:
        raise PictureError(f"relative depth {delta} is not half-integral positive")
    reduced = d_top % 2
    kod = KodairaType("In" if reduced == 0 else "In*", int(index))
    action, _ = require_action(pic, q)
    rep = assemble_H1(pic, action, q)
    w = root_number(rep, q, m_T(pic, action))
    return kod, rep, w


def classify_json(pic: ClusterPicture, q: int) -> str:
    kod, rep, w = classify(pic, q)
    return json.dumps(
        {
            "kodaira": str(kod),
            "reduction": potential_reduction(pic),
            "multiplicative": kod.tag == "In",
            "h1_ab": rep.h1_ab.to_json_obj(),
            "h1_t": rep.h1_t.to_json_obj(),
            "root_number": json.loads(w.to_json()),
        },
        sort_keys=True,
    )


# -- independent oracle: fibre type from a Weierstrass model ---------------------


def _vp(n: int, p: int) -> int:
    if n == 0:
        return 10**9
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def kodaira_from_weierstrass(a: int, b: int, c: int, p: int) -> KodairaType:
    """Fibre type of y^2 = x^3 + a x^2 + b x + c at p >= 5, by the standard
    valuation dictionary on (c4, Delta) after minimalization."""
    if p < 5:
        raise ValueError("the shortcut dictionary needs p >= 5")
    c4 = 16 * (a * a - 3 * b)
    c6 = -32 * (2 * a**3 - 9 * a * b + 27 * c)
    disc = 16 * (
        a * a * b * b - 4 * b**3 - 4 * a**3 * c + 18 * a * b * c - 27 * c * c
    )
    if disc == 0:
        raise ValueError("singular cubic")
    vc4, vc6, vd = _vp(c4, p), _vp(c6, p), _vp(disc, p)
    while vc4 >= 4 and vc6 >= 6 and vd >= 12:
        vc4, vc6, vd = vc4 - 4, vc6 - 6, vd - 12
    if vd == 0:
        return KodairaType("I0")
    if vc4 == 0:
        return KodairaType("In", vd)
    if vd == 2:
        return KodairaType("II")
    if vd == 3:
        return KodairaType("III")
    if vd == 4:
        return KodairaType("IV")
    if vd == 6:
        return KodairaType("I0*")
    if vc4 == 2:
        return KodairaType("In*", vd - 6)
    if vd == 8:
        return KodairaType("IV*")
    if vd == 9:
        return KodairaType("III*")
    if vd == 10:
        return KodairaType("II*")
    raise ValueError(f"unclassified valuations vc4={vc4}, vd={vd}")
