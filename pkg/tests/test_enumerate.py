import pytest

from ehresmann_lab.category import validate_category
from ehresmann_lab.ehresmann import check_ehresmann, semilattice
from ehresmann_lab.enumerate import (
    boolean_monoid_candidates,
    enumerate_categories,
    enumerate_semilattices,
)
from ehresmann_lab.boolean import bottom_is_zero, pi_product_closed

import oracles

# counts per exact size; sizes 1-4 recomputed by the brute-force oracle below,
# size 5 frozen from the enumerator
COUNTS = {1: 1, 2: 3, 3: 11, 4: 55, 5: 329}


def by_size(max_m):
    out = {}
    for c in enumerate_categories(max_m):
        out.setdefault(c.size, []).append(c)
    return out


def test_max_one_is_trivial():
    cats = list(enumerate_categories(1))
    assert len(cats) == 1 and cats[0].size == 1


def test_counts_up_to_four():
    sizes = by_size(4)
    assert {k: len(v) for k, v in sizes.items()} == {k: COUNTS[k] for k in range(1, 5)}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_matches_brute_force_classes(n):
    ours = [oracles.as_table(c) for c in by_size(n)[n]]
    theirs = oracles.categories_of_size(n)
    assert len(ours) == len(theirs)
    for t in theirs:
        assert sum(oracles.isomorphic(t, o) for o in ours) == 1


def test_size_two_members():
    two = by_size(2)[2]
    shapes = sorted((len(c.identities), c.compose(1, 1) if len(c.identities) == 1 else None) for c in two)
    # discrete on two objects, the group Z2 and the monoid {1, t} with t t = t
    assert shapes == [(1, 0), (1, 1), (2, None)]


def test_size_five_count():
    assert len(by_size(5)[5]) == COUNTS[5]


def test_deterministic_order():
    a = [(c.dom.tolist(), c.comp.tolist()) for c in enumerate_categories(4)]
    b = [(c.dom.tolist(), c.comp.tolist()) for c in enumerate_categories(4)]
    assert a == b


def test_every_emitted_category_validates():
    for c in enumerate_categories(4):
        validate_category(c)


def test_hard_cap():
    with pytest.raises(ValueError):
        list(enumerate_categories(7))


def test_semilattices():
    tables = list(enumerate_semilattices(4))
    counts = {}
    for t in tables:
        counts[len(t)] = counts.get(len(t), 0) + 1
    assert counts == {1: 1, 2: 1, 3: 2, 4: 5}
    for t in tables:
        check_ehresmann(semilattice(t))


def test_boolean_census_counts():
    found = {k: list(boolean_monoid_candidates(k)) for k in (0, 1, 2)}
    assert [len(found[k]) for k in (0, 1, 2)] == [1, 2, 17]
    zero = [m for m in found[2] if bottom_is_zero(m)]
    assert len(zero) == 7
    assert sum(bool(pi_product_closed(m)) for m in zero) == 5
    with pytest.raises(ValueError):
        list(boolean_monoid_candidates(3))
