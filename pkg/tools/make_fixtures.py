"""Regenerate the shipped fixture files under src/ehresmann_lab/fixtures.

Run from the repository root: ``python tools/make_fixtures.py``.
"""

import os
import sys

import numpy as np

from ehresmann_lab.biaction import EhresmannBiaction, biaction_from_ehresmann
from ehresmann_lab.boolean import BooleanEhresmannMonoid
from ehresmann_lab.category import from_arrows, pair_groupoid
from ehresmann_lab.ehresmann import EhresmannSemigroup, restricted_product_category, semilattice
from ehresmann_lab.formats import (
    InstanceFile,
    MapSpec,
    identity_first,
    relabel_biaction,
    relabel_category,
    serialize_instance,
)
from ehresmann_lab.powerset import build_powerset_monoid, to_mask
from ehresmann_lab.restriction import groupoid_from_inverse, local_bisections

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "ehresmann_lab", "fixtures")


def two_arrows():
    return from_arrows(["e", "f"], [("a", "f", "e"), ("b", "f", "e")], {})


def one_arrow():
    return from_arrows(["e", "f"], [("a", "f", "e")], {})


def write(name, inst, comment):
    text = f"# {comment}\n" + serialize_instance(inst)
    with open(os.path.join(OUT, name), "w", encoding="utf-8") as fh:
        fh.write(text)


def map_file(name, source, target, images, comment):
    pairs = tuple((i, int(j)) for i, j in enumerate(images))
    write(name, InstanceFile("MAP", MapSpec(source, target, pairs)), comment)


def groupoid_file(s, name, comment):
    """Write the restricted-product category of ``s`` in file order and
    return the image of each element of ``s`` in that order."""
    c = restricted_product_category(s)
    order = identity_first(c)
    write(name, InstanceFile("CATEGORY", relabel_category(c, order)), comment)
    new = {old: i for i, old in enumerate(order)}
    return [new[a] for a in range(s.size)]


def main():
    os.makedirs(OUT, exist_ok=True)
    cat = two_arrows()
    arrow = one_arrow()
    write("trivial.cat", InstanceFile("CATEGORY", from_arrows(["o"], [], {})), "one object, one identity")
    write("one-arrow.cat", InstanceFile("CATEGORY", arrow), "a single arrow a: f -> e")
    for k in (2, 3, 4):
        write(f"pair{k}.cat", InstanceFile("CATEGORY", pair_groupoid(k)), f"pair groupoid on {k} points")
    z2 = from_arrows(["o"], [("g", "o", "o")], {("g", "g"): "id_o"})
    write("z2.cat", InstanceFile("CATEGORY", z2), "the group of order two as a one-object category")

    m = build_powerset_monoid(cat)
    write("two-arrows.bool", InstanceFile("BOOLEAN", m), "P(C) for the two parallel arrows, inclusion order")

    pi_two = local_bisections(cat)
    write("pi-two-arrows.sg", InstanceFile("SEMIGROUP", pi_two.semigroup), "partial isometries of the two-arrow category")

    pi_pair2 = local_bisections(pair_groupoid(2))
    view = pi_pair2.inverse_view()
    write("pi-pair2.sg", InstanceFile("SEMIGROUP", pi_pair2.semigroup, inverse=tuple(int(v) for v in view.inv)),
          "local bisections of the pair groupoid on 2 points, with member-wise inverse")
    groupoid_from_inverse(view)
    images = groupoid_file(pi_pair2.semigroup, "pi-pair2-groupoid.cat",
                           "restricted product on pi-pair2.sg; a groupoid")
    map_file("pi-pair2-groupoid.map", "pi-pair2.sg", "pi-pair2-groupoid.cat", images,
             "inclusion of the restricted-product category of pi-pair2.sg into its groupoid")

    pi_arrow = local_bisections(arrow)
    write("pi-one-arrow.sg", InstanceFile("SEMIGROUP", pi_arrow.semigroup),
          "partial isometries of a single arrow; a restriction monoid that is not inverse")
    c = restricted_product_category(pi_arrow.semigroup)
    g = pair_groupoid(4)
    obj_image = {e: i for i, e in enumerate(c.objects)}
    images = []
    for x in range(c.size):
        if x in c.identities:
            images.append(obj_image[x])
            continue
        d, r = obj_image[int(c.dom[x])], obj_image[int(c.cod[x])]
        images.append(next(y for y in range(g.size) if g.dom[y] == d and g.cod[y] == r))
    map_file("pi-one-arrow-pair4.map", "pi-one-arrow.sg", "pair4.cat", images,
             "functor from the restricted-product category of pi-one-arrow.sg into pair4.cat")

    chain = semilattice([[min(i, j) for j in range(3)] for i in range(3)], ("0", "1", "2"))
    write("chain3.sg", InstanceFile("SEMIGROUP", chain), "the three-element chain as a semilattice")
    images = groupoid_file(chain, "chain3-groupoid.cat", "identity-only groupoid of chain3.sg")
    map_file("chain3-groupoid.map", "chain3.sg", "chain3-groupoid.cat", images, "identity functor")

    b, _ = relabel_biaction(biaction_from_ehresmann(build_powerset_monoid(arrow).semigroup))
    write("one-arrow.biact", InstanceFile("BIACTION", b), "biaction of P(C) for a single arrow")

    # corrupted fixtures, one per axiom family
    s = m.semigroup
    a = to_mask([2])
    star = s.star.copy()
    star[a] = to_mask([0, 1])
    bad = EhresmannSemigroup(s.mult, s.projections, star, s.plus, s.identity, s.names)
    write("bad-es.sg", InstanceFile("SEMIGROUP", bad), "P(C) for two arrows with star({a}) enlarged to {e,f}")

    lact = b.lact.copy()
    lact[1, 3] = 4
    write("bad-e.biact", InstanceFile("BIACTION", EhresmannBiaction(b.category, b.meet, lact, b.ract)),
          "one-arrow.biact with one left-action entry changed")

    # exchange the elements {id_e} and {a} in the order; still a Boolean
    # lattice, but no longer the one the product distributes over
    perm = np.arange(m.size)
    perm[[1, 4]] = perm[[4, 1]]
    order = m.order[np.ix_(perm, perm)]
    write("bad-oe.bool", InstanceFile("BOOLEAN", BooleanEhresmannMonoid(s, order)),
          "P(C) for two arrows under a Boolean order that moves id_e and a")

    write("bad-inverse.sg", InstanceFile("SEMIGROUP", pi_two.semigroup, inverse=tuple(range(pi_two.semigroup.size))),
          "partial isometries of two arrows with the identity map claimed as inverse")

    text = ("# two parallel arrows a, b: f -> e\n"
            "# composite declared on a non-composable pair\n"
            "CATEGORY v1\nobjects 2\ne f\narrows 2\na f e\nb f e\ncompose\na a a\n")
    with open(os.path.join(OUT, "bad-category.cat"), "w", encoding="utf-8") as fh:
        fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
