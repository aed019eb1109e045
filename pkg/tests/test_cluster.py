from fractions import Fraction

import pytest

from clusterpic import cluster
from clusterpic.cluster import ClusterPicture, isomorphic, parse, parse_with_orphans
from clusterpic.errors import PictureError

from conftest import BIG_EXAMPLE, big_clusters


def naive_mu(pic, s):
    total = Fraction(0)
    for r in range(pic.size):
        if r not in s:
            total += pic.depths[pic.wedge(r, s)]
    return total


def test_parse_big_example(big_picture):
    pic = big_picture
    assert pic.size == 16
    assert len(pic.proper_clusters) == 5
    s = big_clusters(pic)
    assert pic.depths[s["R"]] == Fraction(1, 3)
    assert pic.depths[s["s1"]] == Fraction(4, 9)
    assert pic.depths[s["s4"]] == Fraction(1, 2)
    assert s["s1"] == frozenset(range(4))


def test_parse_minimal():
    pic = parse("(r r r)1/2")
    assert pic.size == 3
    assert pic.proper_clusters == (pic.root,)
    assert pic.depths[pic.root] == Fraction(1, 2)


def test_parse_monotonicity_violation():
    with pytest.raises(PictureError, match="not greater"):
        parse("((r r)1/4 r)1/2")


def test_parse_errors_carry_position():
    with pytest.raises(PictureError) as info:
        parse("((r r)1/2 r]1/4")
    assert info.value.position is not None
    with pytest.raises(PictureError):
        parse("(r)1")  # a cluster needs two items
    with pytest.raises(PictureError):
        parse("(r r)1/2 junk")
    with pytest.raises(PictureError):
        parse("(r r")
    with pytest.raises(PictureError):
        parse("(r r)")


def test_parse_rejects_orphan_marks_by_default():
    with pytest.raises(PictureError):
        parse("(*r r r)1")
    pic, orphans = parse_with_orphans("(*r r r)1")
    assert orphans == frozenset({frozenset([0])})


def test_format_parse_round_trip(big_picture):
    text = big_picture.format()
    again = parse(text)
    assert again == big_picture
    assert again.format() == text


def test_labels_preserved():
    pic = parse("(ra rb (r r)3)0")
    assert pic.labels == ("a", "b", "", "")
    assert pic.format() == "(ra rb (r r)3)0"


def test_negative_and_zero_depths_allowed():
    pic = parse("((r r)1/3 r)-2")
    assert pic.depths[pic.root] == -2


def test_json_round_trip(big_picture):
    text = big_picture.to_json()
    again = ClusterPicture.from_json(text)
    assert again == big_picture


def test_wedge(big_picture):
    pic = big_picture
    s = big_clusters(pic)
    assert pic.wedge(0, 4) == s["R"]  # r1 in s1, r5 in s2
    assert pic.wedge(s["s1"], s["s1"]) == s["s1"]
    assert pic.wedge(0, 3) == s["s1"]
    assert pic.wedge(12, 15) == s["s4"]


def test_wedge_associativity(big_picture):
    pic = big_picture
    for a in (0, 3, 7):
        for b in (4, 12):
            for c in (15, 2):
                ab = pic.wedge(a, b)
                bc = pic.wedge(b, c)
                assert pic.wedge(ab, frozenset([c])) == pic.wedge(frozenset([a]), bc)


def test_mu_big_example(big_picture):
    pic = big_picture
    s = big_clusters(pic)
    # 12 outside roots each meeting s1 at the top cluster of depth 1/3
    assert pic.mu(s["s1"]) == 4
    assert pic.mu(s["s4"]) == 4
    assert pic.mu(s["R"]) == 0
    with pytest.raises(PictureError):
        pic.mu(frozenset([0]))


def test_mu_matches_naive_double_loop():
    texts = [
        BIG_EXAMPLE,
        "(r r (r r r)2/3)1/2",
        "(((r r)5/2 r)2 (r r)3/2 r)1",
        "((r r)4 (r r)4 (r r)4)3",
    ]
    for text in texts:
        pic = parse(text)
        for s in pic.proper_clusters:
            assert pic.mu(s) == naive_mu(pic, s)


def test_relative_depth(big_picture):
    pic = big_picture
    s = big_clusters(pic)
    assert pic.relative_depth(s["s4"]) == Fraction(1, 6)
    assert pic.relative_depth(s["R"]) == Fraction(1, 3)
    for c in pic.proper_clusters:
        if c != pic.root:
            assert pic.relative_depth(c) > 0


def test_parity_helpers(big_picture):
    pic = big_picture
    s = big_clusters(pic)
    assert len(pic.odd_children(s["s1"])) == 4
    assert not pic.is_ubereven(s["s1"])
    assert pic.is_ubereven(s["R"])
    two = parse("(r r)1")
    assert pic.parity(s["s1"]) == "even"
    assert len(two.odd_children(two.root)) == 2
    assert not two.is_ubereven(two.root)


def test_isomorphic_identity_and_relabelling(big_picture):
    assert isomorphic(big_picture, big_picture) == {i: i for i in range(16)}
    shuffled = parse("((r r r r)1/2 (r r r r)4/9 (r r r r)4/9 (r r r r)4/9)1/3")
    phi = isomorphic(big_picture, shuffled)
    assert phi is not None
    # the bijection must preserve depths of induced clusters
    for c in big_picture.proper_clusters:
        image = frozenset(phi[i] for i in c)
        assert shuffled.depths[image] == big_picture.depths[c]


def test_isomorphic_depth_mismatch():
    assert isomorphic(parse("(r r)1/2"), parse("(r r)1/3")) is None
    assert isomorphic(parse("(r r)1/2"), parse("(r r r)1/2")) is None


def test_canonical_form_equality_iff_isomorphic():
    a = parse("((r r)2 (r r)3 r)1")
    b = parse("((r r)3 r (r r)2)1")
    c = parse("((r r)3 r (r r)3)1")
    assert a.canonical_form() == b.canonical_form()
    assert isomorphic(a, b) is not None
    assert a.canonical_form() != c.canonical_form()
    assert isomorphic(a, c) is None
