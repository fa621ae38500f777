import pytest
from hypothesis import given, settings, strategies as st

from ehresmann_lab.category import check_functor, is_groupoid, pair_groupoid
from ehresmann_lab.ehresmann import check_ehresmann, is_restriction, restricted_product_category, semilattice
from ehresmann_lab.enumerate import enumerate_categories
from ehresmann_lab.errors import LawViolation
from ehresmann_lab.formats import resolve
from ehresmann_lab.powerset import build_powerset_monoid, classify_subset
from ehresmann_lab.restriction import (
    check_inverse,
    embed_alpha,
    groupoid_from_inverse,
    local_bisections,
    nice_embedding_from_groupoid,
    restriction_lemmas,
    restriction_subalgebras,
    subsemigroup,
    verify_nice_embedding,
)
from ehresmann_lab.suites import NICE_FIXTURES

import oracles
from conftest import fixture, one_arrow, two_arrows

CATS = list(enumerate_categories(4))


@pytest.mark.parametrize("k", [2, 3])
def test_pair_groupoid_bisections_are_inverse(k):
    pi = local_bisections(pair_groupoid(k))
    assert pi.semigroup.size == oracles.partial_injections(k)
    view = check_inverse(pi.semigroup, pi.inverse_view().inv)
    g = groupoid_from_inverse(view)
    assert is_groupoid(g)


def test_pi_three_points_count():
    assert local_bisections(pair_groupoid(3)).semigroup.size == 34


def test_inverse_view_needs_groupoid():
    with pytest.raises(ValueError):
        local_bisections(one_arrow()).inverse_view()


def test_corrupted_inverse_witness():
    inst = fixture("bad-inverse.sg")
    s = inst.body
    with pytest.raises(LawViolation) as exc:
        check_inverse(s, inst.inverse)
    (a,) = exc.value.witness
    inv = inst.inverse
    assert exc.value.law == "a a^-1 a = a"
    assert s.mult[a, s.mult[inv[a], a]] != a


def test_inverse_arity():
    s = local_bisections(pair_groupoid(2)).semigroup
    with pytest.raises(LawViolation, match="arity"):
        check_inverse(s, [0, 1])


def test_alpha_on_two_arrows():
    pi = local_bisections(two_arrows())
    res = embed_alpha(check_ehresmann(pi.semigroup))
    assert res.verdict
    assert len(set(res.alpha)) == pi.semigroup.size
    for m in res.alpha:
        assert classify_subset(res.category, m)["partial_isometry"]


def test_alpha_rejects_non_restriction(cat2):
    with pytest.raises(LawViolation, match="not a restriction semigroup"):
        embed_alpha(build_powerset_monoid(cat2).semigroup)


def test_alpha_on_chain():
    chain = semilattice([[min(i, j) for j in range(3)] for i in range(3)])
    res = embed_alpha(chain)
    # each element goes to its down-set, as identities of the discrete category
    assert list(res.alpha) == [0b001, 0b011, 0b111]


@pytest.mark.parametrize("sg,mp", NICE_FIXTURES)
def test_nice_embedding_fixtures(sg, mp):
    s = fixture(sg).body
    map_inst = fixture(mp)
    g = fixture(resolve(map_inst, map_inst.body.target)).body
    iota = map_inst.body.as_list(s.size)
    res = nice_embedding_from_groupoid(s, g, iota)
    assert res.verdict
    view = check_inverse(res.target.semigroup, res.target.inverse_view().inv)
    assert verify_nice_embedding(s, view, res.theta)


def test_nice_embedding_needs_a_functor():
    s = fixture("pi-pair2.sg").body
    g = fixture("pi-pair2-groupoid.cat").body
    with pytest.raises(LawViolation):
        nice_embedding_from_groupoid(s, g, [0] * s.size)


def test_nice_embedding_needs_a_groupoid():
    s = fixture("chain3.sg").body
    with pytest.raises(LawViolation, match="not a groupoid"):
        nice_embedding_from_groupoid(s, one_arrow(), [0, 1, 2])


def test_subalgebras_are_restriction():
    pi = local_bisections(two_arrows()).semigroup
    subs = restriction_subalgebras(pi)
    assert subs
    for elems in subs:
        assert is_restriction(subsemigroup(pi, elems))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CATS))
def test_local_bisections_restriction_and_alpha(c):
    pi = local_bisections(c)
    s = check_ehresmann(pi.semigroup)
    assert is_restriction(s)
    for v in restriction_lemmas(s):
        assert v, v
    res = embed_alpha(s)
    assert res.verdict


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CATS))
def test_restricted_product_of_bisections_contains_category(c):
    # the singletons of C form a copy of C inside the restricted-product category of PI(C)
    pi = local_bisections(c)
    rp = restricted_product_category(pi.semigroup)
    f = [pi.index(1 << x) for x in range(c.size)]
    assert check_functor(c, rp, f).extra["injective"]


def test_subalgebras_match_brute_force():
    pi = local_bisections(two_arrows()).semigroup
    n = pi.size
    brute = []
    for mask in range(1, 1 << n):
        elems = [a for a in range(n) if mask >> a & 1]
        inside = set(elems)
        if all(int(pi.star[a]) in inside and int(pi.plus[a]) in inside for a in elems) and all(
            int(pi.mult[a, b]) in inside for a in elems for b in elems
        ):
            brute.append(tuple(elems))
    assert restriction_subalgebras(pi) == sorted(brute)
    assert set(restriction_subalgebras(pi, generators=2)) <= set(brute)


def test_groupoid_bisections_are_inverse():
    groupoids = [c for c in enumerate_categories(5) if is_groupoid(c)]
    groupoids += [pair_groupoid(3)]
    assert len(groupoids) > 5
    for g in groupoids:
        pi = local_bisections(g)
        check_inverse(pi.semigroup, pi.inverse_view().inv)
