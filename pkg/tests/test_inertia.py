from fractions import Fraction

import pytest

from clusterpic import cluster
from clusterpic.cluster import parse
from clusterpic.errors import PictureError, WildInertiaError
from clusterpic.inertia import (
    analyze_permutation,
    candidate_denominators,
    check_action,
    enumerate_denominators,
    find_action,
    perm_order,
    required_order,
)

from conftest import RELDEPTH_COUNTEREXAMPLE, big_clusters


def cycles_to_perm(n, cycles):
    perm = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a] = b
    return tuple(perm)


# The worked 16-leaf action: one 9-cycle, one 3-cycle, two 2-cycles
BIG_PERM = cycles_to_perm(
    16,
    [
        (0, 4, 8, 1, 5, 9, 2, 6, 10),
        (3, 7, 11),
        (12, 13),
        (14, 15),
    ],
)


def test_required_order(big_picture):
    assert required_order(big_picture) == 18
    assert required_order(parse("((r r)1 r)0")) == 1
    assert required_order(parse("(((r r)9/4 (r r)9/4)9/8 ((r r)9/4 (r r)9/4)9/8)1/2")) == 8


# The group-of-order-12 recovery example: two towers of two triples, with
# depth denominators 2, 4, 3 going inward.
C12_TEXT = "(((r r r)4/3 (r r r)4/3)3/4 ((r r r)4/3 (r r r)4/3)3/4)1/2"


def test_required_order_c12_example():
    assert required_order(parse(C12_TEXT)) == 12


def test_find_action_big_example(big_picture):
    found = find_action(big_picture)
    assert found is not None
    action, orphan_pic = found
    assert action.order == 18
    assert action.cycle_type() == (9, 3, 2, 2)
    # the exact published action is reproduced
    assert action.perm == BIG_PERM
    s = big_clusters(big_picture)
    assert orphan_pic.orphans == frozenset(
        [s["s4"], frozenset([3]), frozenset([7]), frozenset([11])]
    )
    # stabilizer indices for r1 (non-orphan), r4 (orphan), r13
    assert action.n[frozenset([0])] == 9
    assert action.n[frozenset([3])] == 3
    assert action.n[frozenset([12])] == 2


def test_find_action_three_cycle():
    pic = parse("(r r r)2/3")
    action, orphan_pic = find_action(pic)
    assert action.cycle_type() == (3,)
    assert orphan_pic.orphans == frozenset()


def test_find_action_impossible():
    # two non-isomorphic children but a depth forcing orbit length 2
    pic = parse("((r r)1 (r r r)1 r)1/2")
    assert find_action(pic) is None


def test_find_action_wild_prime(big_picture):
    with pytest.raises(WildInertiaError):
        find_action(big_picture, p=3)
    assert find_action(big_picture, p=19) is not None
    with pytest.raises(PictureError):
        find_action(big_picture, p=4)


def test_check_action_accepts_published_action(big_picture):
    report = check_action(big_picture, BIG_PERM)
    assert report.ok, report.to_json()


def test_check_action_identity_fails_orbit_lengths(big_picture):
    report = check_action(big_picture, tuple(range(16)))
    assert not report.ok
    failing = [e.condition for e in report.entries if not e.ok]
    assert "orbit-length" in failing


def test_check_action_broken_automorphism(big_picture):
    perm = list(BIG_PERM)
    perm[0], perm[12] = perm[12], perm[0]
    report = check_action(big_picture, tuple(perm))
    assert not report.ok
    assert not report.entries[0].ok  # automorphism check is first


def test_conjugate_clusters_need_equal_depths():
    # same shapes, different depths: the top denominator forces a swap
    pic = parse("((r r)1 (r r)3/2)1/2")
    assert find_action(pic) is None
    ok = parse("((r r)3/2 (r r)3/2)1/2")
    assert find_action(ok) is not None


def test_reldepth_counterexample_regression():
    pic = parse(RELDEPTH_COUNTEREXAMPLE)
    found = find_action(pic)
    assert found is not None
    action, orphan_pic = found
    triple = frozenset([2, 3, 4])
    assert orphan_pic.orphans == frozenset([triple])
    assert check_action(pic, action.perm).ok
    rel = check_action(pic, action.perm, relative_depths=True)
    assert not rel.ok
    bad = [e for e in rel.entries if not e.ok and e.condition == "orbit-length"]
    assert any(e.cluster == triple for e in bad)


def test_perm_order():
    assert perm_order(BIG_PERM) == 18
    assert perm_order(tuple(range(5))) == 1


def test_candidate_denominators_examples():
    assert candidate_denominators(4, 3) == [3, 6, 12]
    assert candidate_denominators(4, 2) == [8]
    assert candidate_denominators(1, 1) == [1]


def test_candidate_denominators_brute_force():
    import math

    for n in range(1, 13):
        for L in range(1, 13):
            e = n * L
            brute = [b for b in range(1, e * e + 1) if b // math.gcd(b, n) == L]
            assert candidate_denominators(n, L) == brute


def test_enumerate_denominators_c12_example():
    pic = parse(C12_TEXT)
    c12 = cycles_to_perm(12, [(0, 6, 3, 9, 1, 7, 4, 10, 2, 8, 5, 11)])
    assert perm_order(c12) == 12
    action = analyze_permutation(pic, c12)
    candidates, tuples = enumerate_denominators(pic, action)
    reps = action.orbit_representatives(pic.proper_clusters)
    sets = {len(r): candidates[r] for r in reps}
    assert sets[12] == [2]
    assert sets[6] == [4]
    assert sets[3] == [3, 6, 12]
    # tuples run outside-in over orbit representatives: (R, s3-level, s1-level)
    assert sorted(tuples) == [(2, 4, 3), (2, 4, 6), (2, 4, 12)]


def test_orbit_length_equals_lcm_over_full_group(big_picture):
    # full-group orbit of a non-orphan child is lcm(denom d_s, n_s)
    action, _ = find_action(big_picture)
    pic = big_picture
    from clusterpic.numbers import denom, lcm_all

    for s in pic.proper_clusters:
        for c in pic.children[s]:
            if c == action.orphan[s]:
                continue
            assert action.n[c] == lcm_all([denom(pic.depths[s]), action.n[s]])
