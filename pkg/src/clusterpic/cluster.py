"""The cluster-picture data model.

A cluster picture is a nested family of subsets ("clusters") of a finite
root set, every proper cluster carrying an exact rational depth, with
depths strictly increasing inward.  Leaves are indexed 0..n-1 left to
right; user-supplied labels are kept for display only.

Text grammar (authoritative for all CLI surfaces)::

    picture  := cluster
    cluster  := "(" item (" " item)* ")" rational
    item     := "r" | "r" label | cluster
    rational := int | int "/" posint

Every parenthesised cluster carries exactly one depth annotation and must
contain at least two items; singletons are bare ``r`` items.  An extension
used for orphan pictures marks an item with a leading ``*``.

JSON form: ``{"leaves": n, "clusters": [{"members": [...], "depth": "a/b"}]}``
with 0-based members and proper clusters only.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterator, Optional

from .errors import PictureError

Cluster = frozenset  # of leaf indices

_LABEL_RE = re.compile(r"[A-Za-z0-9_]*")
_RATIONAL_RE = re.compile(r"-?\d+(/\d+)?")


def _fmt_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class ClusterPicture:
    """Immutable validated cluster picture.

    Clusters are represented as frozensets of leaf indices.  The instance
    precomputes the parent/children tree; it must never be mutated after
    construction.
    """

    def __init__(
        self,
        size: int,
        depths: dict[Cluster, Fraction],
        labels: tuple[str, ...] | None = None,
    ):
        if size < 1:
            raise PictureError("a picture needs at least one leaf")
        self.size = size
        self.labels = labels if labels is not None else tuple("" for _ in range(size))
        self.root: Cluster = frozenset(range(size))
        self.depths = {c: Fraction(d) for c, d in depths.items()}
        self._validate()
        # All clusters, singletons included, ordered outside-in then left-right.
        proper = sorted(self.depths, key=lambda c: (-len(c), min(c)))
        singles = [frozenset([i]) for i in range(size)]
        self.proper_clusters: tuple[Cluster, ...] = tuple(proper)
        self.clusters: tuple[Cluster, ...] = tuple(proper) + tuple(singles)
        self.parent: dict[Cluster, Cluster] = {}
        self.children: dict[Cluster, tuple[Cluster, ...]] = {}
        for c in self.clusters:
            if c != self.root:
                candidates = [d for d in self.proper_clusters if c < d]
                self.parent[c] = min(candidates, key=len)
        for c in self.proper_clusters:
            kids = [d for d in self.clusters if self.parent.get(d) == c]
            self.children[c] = tuple(sorted(kids, key=min))
        self._canon: str | None = None

    def _validate(self) -> None:
        n = self.size
        for c, d in self.depths.items():
            if not c or len(c) < 2:
                raise PictureError(f"depth attached to non-proper cluster {sorted(c)}")
            if not c <= self.root:
                raise PictureError(f"cluster {sorted(c)} exceeds the leaf range 0..{n - 1}")
        if self.root not in self.depths and n > 1:
            raise PictureError("the top cluster must be present and carry a depth")
        cl = list(self.depths)
        for i, a in enumerate(cl):
            for b in cl[i + 1 :]:
                if a & b and not (a <= b or b <= a):
                    raise PictureError(
                        f"clusters {sorted(a)} and {sorted(b)} overlap without nesting"
                    )
        for a in cl:
            for b in cl:
                if a < b and not self.depths[a] > self.depths[b]:
                    raise PictureError(
                        f"depth {self.depths[a]} of {sorted(a)} is not greater than "
                        f"depth {self.depths[b]} of enclosing {sorted(b)}"
                    )

    # -- basic queries ----------------------------------------------------

    def depth(self, c: Cluster) -> Fraction:
        try:
            return self.depths[c]
        except KeyError:
            raise PictureError(f"{sorted(c)} is not a proper cluster of this picture") from None

    def is_proper(self, c: Cluster) -> bool:
        return c in self.depths

    def cluster_of(self, leaf: int) -> Cluster:
        return frozenset([leaf])

    def ancestors(self, c: Cluster) -> Iterator[Cluster]:
        """Proper clusters strictly containing ``c``, inside out."""
        while c != self.root:
            c = self.parent[c]
            yield c

    def wedge(self, a: Cluster | int, b: Cluster | int) -> Cluster:
        """Smallest cluster containing both arguments."""
        a = frozenset([a]) if isinstance(a, int) else a
        b = frozenset([b]) if isinstance(b, int) else b
        self._check_member(a)
        self._check_member(b)
        c = a
        while not b <= c:
            c = self.parent[c]
        return c

    def _check_member(self, c: Cluster) -> None:
        if c not in self.depths and not (len(c) == 1 and c <= self.root):
            raise PictureError(f"{sorted(c)} is not a cluster of this picture")

    def mu(self, s: Cluster) -> Fraction:
        """Sum over outside roots of the depth of their meet with ``s``.

        Computed by walking the ancestor chain; the naive double loop over
        outside roots is kept in the tests as an independent check.
        """
        if not self.is_proper(s):
            raise PictureError("mu is only defined for proper clusters")
        total = Fraction(0)
        below = s
        for a in self.ancestors(s):
            total += (len(a) - len(below)) * self.depths[a]
            below = a
        return total

    def relative_depth(self, s: Cluster) -> Fraction:
        """Depth gain over the parent; the top cluster returns its own depth."""
        if not self.is_proper(s):
            raise PictureError("relative depth is only defined for proper clusters")
        if s == self.root:
            return self.depths[s]
        return self.depths[s] - self.depths[self.parent[s]]

    def odd_children(self, s: Cluster) -> tuple[Cluster, ...]:
        if not self.is_proper(s):
            raise PictureError("odd_children is only defined for proper clusters")
        return tuple(c for c in self.children[s] if len(c) % 2 == 1)

    def is_ubereven(self, s: Cluster) -> bool:
        if not self.is_proper(s):
            raise PictureError("is_ubereven is only defined for proper clusters")
        return all(len(c) % 2 == 0 for c in self.children[s])

    def parity(self, s: Cluster) -> str:
        self._check_member(s)
        return "odd" if len(s) % 2 == 1 else "even"

    # -- canonical form and isomorphism -----------------------------------

    def _canon_key(self, c: Cluster):
        if len(c) == 1:
            return (1, Fraction(0), "r")
        subkeys = sorted(self._canon_key(k) for k in self.children[c])
        body = "(" + " ".join(k[2] for k in subkeys) + ")" + _fmt_rational(self.depths[c])
        return (len(c), self.depths[c], body)

    def canonical_form(self) -> str:
        """Unique string per isomorphism class (children sorted recursively)."""
        if self._canon is None:
            if self.size == 1:
                self._canon = "r"
            else:
                self._canon = self._canon_key(self.root)[2]
        return self._canon

    def shape_form(self) -> str:
        """Canonical form of the depth-free skeleton."""
        return _shape_key(self, self.root)[1]

    # -- formatting --------------------------------------------------------

    def format(self, orphans: frozenset[Cluster] = frozenset()) -> str:
        """Text form in left-to-right leaf order; ``orphans`` get a ``*`` mark."""

        def fmt(c: Cluster) -> str:
            star = "*" if c in orphans else ""
            if len(c) == 1:
                (i,) = c
                return star + "r" + self.labels[i]
            inner = " ".join(fmt(k) for k in self.children[c])
            return f"{star}({inner}){_fmt_rational(self.depths[c])}"

        return fmt(self.root)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"ClusterPicture({self.format()!r})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ClusterPicture)
            and self.size == other.size
            and self.depths == other.depths
        )

    def __hash__(self) -> int:
        return hash((self.size, tuple(sorted((tuple(sorted(c)), d) for c, d in self.depths.items()))))

    def to_json(self) -> str:
        rows = [
            {"members": sorted(c), "depth": _fmt_rational(d)}
            for c, d in sorted(self.depths.items(), key=lambda cd: (-len(cd[0]), min(cd[0])))
        ]
        return json.dumps({"leaves": self.size, "clusters": rows}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ClusterPicture":
        try:
            obj = json.loads(text)
            n = obj["leaves"]
            depths = {
                frozenset(row["members"]): Fraction(row["depth"]) for row in obj["clusters"]
            }
        except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
            raise PictureError(f"bad JSON picture: {exc}") from None
        return cls(n, depths)


def _shape_key(pic: ClusterPicture, c: Cluster):
    if len(c) == 1:
        return (1, "r")
    subkeys = sorted(_shape_key(pic, k) for k in pic.children[c])
    return (len(c), "(" + " ".join(k[1] for k in subkeys) + ")")


# -- parser -----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, allow_orphans: bool):
        self.text = text
        self.pos = 0
        self.allow_orphans = allow_orphans
        self.leaf_labels: list[str] = []
        self.depths: dict[Cluster, Fraction] = {}
        self.orphans: set[Cluster] = set()

    def error(self, message: str):
        raise PictureError(message, position=self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def parse(self) -> tuple[ClusterPicture, frozenset[Cluster]]:
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != "(":
            self.error("expected '(' opening the top cluster")
        top = self.parse_cluster()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing input after the top cluster")
        n = len(self.leaf_labels)
        if top != frozenset(range(n)):  # pragma: no cover - structurally impossible
            self.error("top cluster does not cover all leaves")
        pic = ClusterPicture(n, self.depths, tuple(self.leaf_labels))
        orphans = frozenset(self.orphans)
        _validate_orphan_marks(pic, orphans)
        return pic, orphans

    def parse_cluster(self) -> Cluster:
        assert self.text[self.pos] == "("
        self.pos += 1
        members: set[int] = set()
        items = 0
        while True:
            self.skip_ws()
            if self.pos >= len(self.text):
                self.error("unclosed '('")
            if self.text[self.pos] == ")":
                self.pos += 1
                break
            members |= self.parse_item()
            items += 1
        if items < 2:
            self.error("a cluster needs at least two items")
        depth = self.parse_rational()
        c = frozenset(members)
        if c in self.depths:
            self.error(f"cluster {sorted(c)} appears twice")
        self.depths[c] = depth
        return c

    def parse_item(self) -> set[int]:
        starred = False
        if self.text[self.pos] == "*":
            if not self.allow_orphans:
                self.error("orphan marks '*' are not allowed here")
            starred = True
            self.pos += 1
            if self.pos >= len(self.text):
                self.error("dangling '*'")
        ch = self.text[self.pos]
        if ch == "(":
            c = self.parse_cluster()
        elif ch == "r":
            self.pos += 1
            m = _LABEL_RE.match(self.text, self.pos)
            label = m.group(0)
            self.pos = m.end()
            idx = len(self.leaf_labels)
            self.leaf_labels.append(label)
            c = frozenset([idx])
        else:
            self.error(f"expected 'r' or '(', found {ch!r}")
        if starred:
            self.orphans.add(c)
        return set(c)

    def parse_rational(self) -> Fraction:
        m = _RATIONAL_RE.match(self.text, self.pos)
        if not m:
            self.error("expected a rational depth after ')'")
        self.pos = m.end()
        return Fraction(m.group(0))


def _validate_orphan_marks(pic: ClusterPicture, orphans: frozenset[Cluster]) -> None:
    by_parent: dict[Cluster, int] = {}
    for c in orphans:
        if c == pic.root:
            raise PictureError("the top cluster cannot be an orphan")
        p = pic.parent[c]
        by_parent[p] = by_parent.get(p, 0) + 1
    for p, count in by_parent.items():
        if count > 1:
            raise PictureError(f"cluster {sorted(p)} has more than one orphan mark")


def parse(text: str) -> ClusterPicture:
    """Parse picture text; raises :class:`PictureError` with a position."""
    pic, orphans = _Parser(text, allow_orphans=False).parse()
    return pic


def parse_with_orphans(text: str) -> tuple[ClusterPicture, frozenset[Cluster]]:
    """Parse picture text allowing ``*`` orphan marks."""
    return _Parser(text, allow_orphans=True).parse()


def isomorphic(p1: ClusterPicture, p2: ClusterPicture) -> Optional[dict[int, int]]:
    """A depth-preserving leaf bijection inducing a cluster bijection, or None."""
    if p1.size != p2.size:
        return None
    if p1.canonical_form() != p2.canonical_form():
        return None
    mapping: dict[int, int] = {}

    def match(c1: Cluster, c2: Cluster) -> None:
        if len(c1) == 1:
            (i,) = c1
            (j,) = c2
            mapping[i] = j
            return
        k1 = sorted(p1.children[c1], key=lambda k: (p1._canon_key(k), min(k)))
        k2 = sorted(p2.children[c2], key=lambda k: (p2._canon_key(k), min(k)))
        for a, b in zip(k1, k2):
            match(a, b)

    match(p1.root, p2.root)
    return mapping


def shape_isomorphism(p1: ClusterPicture, p2: ClusterPicture) -> Optional[dict[int, int]]:
    """Leaf bijection matching the depth-free skeletons, or None."""
    if p1.size != p2.size or p1.shape_form() != p2.shape_form():
        return None
    mapping: dict[int, int] = {}

    def match(c1: Cluster, c2: Cluster) -> None:
        if len(c1) == 1:
            (i,) = c1
            (j,) = c2
            mapping[i] = j
            return
        k1 = sorted(p1.children[c1], key=lambda k: (_shape_key(p1, k), min(k)))
        k2 = sorted(p2.children[c2], key=lambda k: (_shape_key(p2, k), min(k)))
        for a, b in zip(k1, k2):
            match(a, b)

    match(p1.root, p2.root)
    return mapping
