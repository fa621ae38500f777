import pytest
from hypothesis import given, settings, strategies as st

from ehresmann_lab.category import pair_groupoid
from ehresmann_lab.enumerate import enumerate_categories
from ehresmann_lab.errors import CapExceeded
from ehresmann_lab.powerset import (
    DEFAULT_CAP,
    Subset,
    bits,
    build_powerset_monoid,
    classify_subset,
    default_cap,
    definitional_classification,
    partial_isometries,
    subset_plus,
    subset_product,
    subset_star,
    to_mask,
)

import oracles
from conftest import one_arrow, two_arrows

CATS = list(enumerate_categories(4))


def test_worked_example_size(cat2):
    assert build_powerset_monoid(cat2).size == 16


def test_worked_example_classification(cat2):
    a, b, e = 2, 3, 0
    assert classify_subset(cat2, {a})["partial_isometry"]
    ab = classify_subset(cat2, {a, b})
    assert ab["bideterministic"] and not ab["partial_isometry"]
    ae = classify_subset(cat2, {a, e})
    assert not ae["bideterministic"]


def test_empty_set_is_everything(cat2):
    assert all(classify_subset(cat2, 0).values())


def test_subset_operations(cat2):
    a = Subset.of(cat2, [2])
    e = Subset.of(cat2, [0])
    f = Subset.of(cat2, [1])
    assert subset_star(a) == f
    assert subset_plus(a) == e
    assert subset_product(e, a) == a
    assert subset_product(a, e).mask == 0
    assert a.label() == "{a}"
    assert len(Subset(cat2, 0b1111)) == 4
    with pytest.raises(ValueError):
        Subset(cat2, 1 << 4)
    with pytest.raises(ValueError):
        subset_product(a, Subset(one_arrow(), 1))


def test_star_uses_members_only():
    # the star of a subset collects the domains of its own members
    c = two_arrows()
    assert subset_star(Subset.of(c, [])).mask == 0
    assert subset_star(Subset.of(c, [0])).mask == 1


def test_mask_helpers():
    assert bits(0b10110) == [1, 2, 4]
    assert to_mask([4, 2, 1]) == 0b10110


def test_cap():
    c = pair_groupoid(2)
    assert build_powerset_monoid(c, size_cap=256).size == 16
    with pytest.raises(CapExceeded) as exc:
        build_powerset_monoid(c, size_cap=255)
    assert exc.value.required == 256


def test_cap_from_environment(monkeypatch):
    monkeypatch.delenv("EHRESMANN_LAB_CAP", raising=False)
    assert default_cap() == DEFAULT_CAP
    monkeypatch.setenv("EHRESMANN_LAB_CAP", "100")
    with pytest.raises(CapExceeded):
        build_powerset_monoid(two_arrows())


def test_order_is_inclusion(cat2):
    m = build_powerset_monoid(cat2)
    for x in range(16):
        for y in range(16):
            assert bool(m.order[x, y]) == (x & ~y == 0)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_partial_isometries_of_pair_groupoids(k):
    assert len(partial_isometries(pair_groupoid(k))) == oracles.partial_injections(k)


def test_partial_isometries_are_sorted_and_injective():
    for c in CATS:
        pis = partial_isometries(c)
        assert pis == sorted(pis)
        expected = [m for m in range(1 << c.size) if classify_subset(c, m)["partial_isometry"]]
        assert pis == expected


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(CATS), st.data())
def test_lemma_classifier_matches_definitions(c, data):
    m = build_powerset_monoid(c)
    a = data.draw(st.integers(0, m.size - 1))
    fast = classify_subset(c, a)
    slow = definitional_classification(m, a)
    assert fast == slow


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(CATS), st.data())
def test_classifier_matches_set_definition(c, data):
    a = data.draw(st.integers(0, (1 << c.size) - 1))
    members = [x for x in range(c.size) if a >> x & 1]
    # deterministic: members with one domain share a codomain
    det = all(c.cod[x] == c.cod[y] for x in members for y in members if c.dom[x] == c.dom[y])
    pi = all(x == y for x in members for y in members if c.dom[x] == c.dom[y] or c.cod[x] == c.cod[y])
    got = classify_subset(c, members)
    assert got["deterministic"] == det
    assert got["partial_isometry"] == pi
