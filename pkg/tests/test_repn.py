import random
from fractions import Fraction

import pytest

from clusterpic.cluster import parse
from clusterpic.errors import IntegrityError
from clusterpic.inertia import find_action
from clusterpic.numbers import euler_phi
from clusterpic.oracle import oracle_ind_V, oracle_induce, oracle_twist
from clusterpic.randgen import random_picture
from clusterpic.repn import (
    EpsilonKind,
    RhoSum,
    assemble_H1,
    cluster_rep_data,
    genus,
    ind_V,
    ind_epsilon,
    induce,
    twist,
)

from conftest import big_clusters

F = Fraction


def rho(*pairs):
    return RhoSum({d: F(a) for d, a in pairs})


# -- rho-sum algebra ---------------------------------------------------------


def test_rhosum_basics():
    a = rho((2, 2), (9, 1))
    assert a.dimension() == 2 * 1 + 6
    assert str(a) == "2p2 + p9"
    assert RhoSum.parse("2p2 + p9") == a
    assert RhoSum.parse("0") == RhoSum.zero()
    assert a - a == RhoSum.zero()
    assert (a - rho((2, 3))).multiplicity(2) == -1
    assert not (a - a)
    assert 2 * rho((3, F(1, 2))) == rho((3, 1))


def test_rhosum_json_round_trip():
    a = rho((1, 1), (3, 1))
    assert RhoSum.from_json_obj(a.to_json_obj()) == a
    assert a.to_json_obj() == {"rho": {"1": "1", "3": "1"}}


# -- twist -------------------------------------------------------------------


def test_twist_examples():
    assert twist(3, 1) == rho((3, F(1, 2)))
    assert twist(1, 7) == rho((7, 1))
    assert twist(3, 3) == rho((1, 1), (3, F(1, 2)))
    assert twist(2, 2) == rho((1, 1))


def test_twist_prime_power_bookkeeping():
    # gamma_{q^r} (x) rho_{q^r}: (q-2)q^{r-1} characters of top order plus
    # phi(q^j) of each lower order q^j
    for q, r in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (5, 2), (3, 3)]:
        n = q**r
        got = twist(n, n)
        assert got.multiplicity(n) * euler_phi(n) == (q - 2) * q ** (r - 1)
        for j in range(r):
            assert got.multiplicity(q**j) == 1
        assert got.dimension() == euler_phi(n)


@pytest.mark.parametrize("t", range(1, 16))
@pytest.mark.parametrize("d", range(1, 16))
def test_twist_preserves_character_count_and_matches_oracle(t, d):
    got = twist(t, d)
    assert got.dimension() == euler_phi(d)
    assert got == oracle_twist(t, d)


def test_twist_oracle_generator_independence():
    for unit in (1, 2):
        assert oracle_twist(3, 3, generator_unit=unit) == twist(3, 3)


# -- induction -----------------------------------------------------------------


def test_induce_examples():
    assert induce(rho((2, 1)), 2) == rho((4, 1))
    assert induce(rho((3, 1)), 3) == rho((9, 1))
    a = rho((2, 2), (9, 1))
    assert induce(a, 1) == a
    # Ind of the trivial character from the index-4 subgroup is C[C_4]
    assert induce(rho((1, 1)), 4) == rho((1, 1), (2, 1), (4, 1))


@pytest.mark.parametrize("n", range(1, 13))
@pytest.mark.parametrize("d", range(1, 13))
def test_induce_matches_oracle_and_scales_dimension(n, d):
    got = induce(rho((d, 1)), n)
    assert got.dimension() == n * euler_phi(d)
    assert got == oracle_induce(rho((d, 1)), n)


# -- the worked 16-leaf example -------------------------------------------------


@pytest.fixture(scope="module")
def big_action(big_picture):
    action, _ = find_action(big_picture)
    return action


def test_big_example_cluster_table(big_picture, big_action):
    s = big_clusters(big_picture)
    d1 = cluster_rep_data(big_picture, big_action, s["s1"])
    assert (d1.n, d1.nprime, d1.odd_count) == (3, 3, 4)
    assert d1.odd_count // d1.nprime == 1
    assert d1.has_odd_orphan
    assert d1.mu == 4
    assert d1.lam == F(26, 3)
    assert d1.gamma_order == 3
    assert d1.epsilon is EpsilonKind.TRIVIAL
    d4 = cluster_rep_data(big_picture, big_action, s["s4"])
    assert (d4.n, d4.nprime, d4.odd_count) == (1, 2, 4)
    assert d4.odd_count // d4.nprime == 2
    assert not d4.has_odd_orphan
    assert d4.lam == 3
    assert d4.gamma_order == 1
    assert d4.epsilon is EpsilonKind.TRIVIAL


def test_big_example_ind_epsilon(big_picture, big_action):
    s = big_clusters(big_picture)
    d1 = cluster_rep_data(big_picture, big_action, s["s1"])
    d4 = cluster_rep_data(big_picture, big_action, s["s4"])
    assert ind_epsilon(d1) == rho((1, 1), (3, 1))
    assert ind_epsilon(d4) == rho((1, 1))


def test_ind_epsilon_order_two():
    pic = parse("((r r)3 r)1")
    action, _ = find_action(pic)
    s1 = frozenset([0, 1])
    data = cluster_rep_data(pic, action, s1)
    assert data.epsilon is EpsilonKind.ORDER_TWO
    assert ind_epsilon(data) == rho((2, 1))


def test_big_example_ind_V(big_picture, big_action):
    s = big_clusters(big_picture)
    d1 = cluster_rep_data(big_picture, big_action, s["s1"])
    d4 = cluster_rep_data(big_picture, big_action, s["s4"])
    assert ind_V(d1) == rho((9, 1))
    assert ind_V(d4) == rho((2, 2))
    assert oracle_ind_V(big_picture, big_action, s["s1"]) == rho((9, 1))
    assert oracle_ind_V(big_picture, big_action, s["s4"]) == rho((2, 2))


def test_big_example_assembly(big_picture, big_action):
    rep = assemble_H1(big_picture, big_action)
    assert rep.h1_ab == rho((2, 2), (9, 1))
    assert rep.h1_t == rho((1, 1), (3, 1))
    assert rep.group_order == 18
    assert rep.dimension_check(16)
    assert genus(16) == 7


# -- small named cases -----------------------------------------------------------


@pytest.mark.parametrize(
    "text,ab,t",
    [
        ("(r r r)1/2", rho((4, 1)), rho()),  # equidistant, quarter-twist order
        ("(r r r)2/3", rho((3, 1)), rho()),
        ("(r r r)1/3", rho((6, 1)), rho()),
        ("(r r r)1", rho((2, 2)), rho()),
        ("(r r r)2", rho((1, 2)), rho()),
        ("((r r)1 r)0", rho(), rho((1, 1))),
        ("((r r)3 r)1", rho(), rho((2, 1))),
    ],
)
def test_three_root_representations(text, ab, t):
    pic = parse(text)
    action, _ = find_action(pic)
    rep = assemble_H1(pic, action)
    assert rep.h1_ab == ab
    assert rep.h1_t == t


def test_single_cluster_integral_depth_ind_V():
    pic = parse("(r r r)2")
    action, _ = find_action(pic)
    data = cluster_rep_data(pic, action, pic.root)
    assert ind_V(data) == rho((1, 2))


def test_assemble_requires_three_roots():
    pic = parse("(r r)1")
    action, _ = find_action(pic)
    with pytest.raises(IntegrityError):
        assemble_H1(pic, action)


# -- oracle sweep ------------------------------------------------------------------


def test_oracle_agreement_on_random_pictures():
    rng = random.Random(20260810)
    for _ in range(60):
        pic = random_picture(rng, max_roots=10, max_order=40)
        found = find_action(pic)
        assert found is not None, pic.format()
        action, _ = found
        for s in action.orbit_representatives(pic.proper_clusters):
            if pic.is_ubereven(s):
                continue
            data = cluster_rep_data(pic, action, s)
            assert ind_V(data) == oracle_ind_V(pic, action, s, data=data), pic.format()
        if pic.size >= 3:
            rep = assemble_H1(pic, action)
            assert rep.dimension_check(pic.size), pic.format()


def test_oracle_gamma_choice_independence():
    pic = parse(
        "((r r r r)4/9 (r r r r)4/9 (r r r r)4/9 (r r r r)1/2)1/3"
    )
    action, _ = find_action(pic)
    s1 = frozenset(range(4))
    base = oracle_ind_V(pic, action, s1, generator_unit=1)
    assert oracle_ind_V(pic, action, s1, generator_unit=2) == base
