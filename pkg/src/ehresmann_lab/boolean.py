"""Boolean Ehresmann monoids: lattice checks, atoms, partial isometries and
reconstruction of a category from the atoms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .category import UNDEF, FiniteCategory, validate_category
from .ehresmann import EhresmannSemigroup, check_ehresmann, classify_element, order_le
from .errors import InternalConsistencyError, LawViolation, Verdict


class Lattice(NamedTuple):
    meet: np.ndarray
    join: np.ndarray
    complement: np.ndarray
    bottom: int
    top: int


@dataclass(frozen=True, eq=False)
class BooleanEhresmannMonoid:
    semigroup: EhresmannSemigroup
    order: np.ndarray  # order[x, y] is True iff x is contained in y
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        order = np.array(self.order, dtype=bool)
        order.flags.writeable = False
        object.__setattr__(self, "order", order)

    @property
    def size(self) -> int:
        return self.semigroup.size


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    return None if len(hits) == 0 else tuple(int(v) for v in hits[0])


def lattice(m: BooleanEhresmannMonoid) -> Lattice:
    """Derive meet, join and complement from the order, or raise ``LawViolation``."""
    if "lattice" in m._cache:
        return m._cache["lattice"]
    le = m.order
    n = m.size
    if le.shape != (n, n):
        raise LawViolation("arity", le.shape, "order relation")
    w = _first(~np.diag(le))
    if w is not None:
        raise LawViolation("order reflexive", w)
    w = _first(le & le.T & ~np.eye(n, dtype=bool))
    if w is not None:
        raise LawViolation("order antisymmetric", w)
    for y in range(n):
        w = _first(le[:, y][:, None] & le[y][None, :] & ~le)
        if w is not None:
            raise LawViolation("order transitive", (w[0], y, w[1]))
    down = le.sum(axis=0)
    up = le.sum(axis=1)
    meet = np.zeros((n, n), dtype=np.int64)
    join = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        lower = le[:, a][:, None] & le  # [x, b]: x below a and b
        cand = np.where(lower, down[:, None], -1).argmax(axis=0)
        none = ~lower.any(axis=0)
        bad = none | (lower & ~le[:, cand]).any(axis=0)
        w = _first(bad)
        if w is not None:
            raise LawViolation("lattice completeness", (a, w[0]), "no meet")
        meet[a] = cand
        upper = le[a][:, None] & le.T  # [x, b]: x above a and b
        cand = np.where(upper, up[:, None], -1).argmax(axis=0)
        none = ~upper.any(axis=0)
        bad = none | (upper & ~le[cand].T).any(axis=0)
        w = _first(bad)
        if w is not None:
            raise LawViolation("lattice completeness", (a, w[0]), "no join")
        join[a] = cand
    bottoms = np.nonzero(le.all(axis=1))[0]
    tops = np.nonzero(le.all(axis=0))[0]
    if len(bottoms) == 0 or len(tops) == 0:
        raise LawViolation("lattice completeness", (), "no bottom or top")
    bottom, top = int(bottoms[0]), int(tops[0])
    for a in range(n):
        lhs = meet[a][join]
        rhs = join[meet[a][:, None], meet[a][None, :]]
        w = _first(lhs != rhs)
        if w is not None:
            raise LawViolation("distributivity", (a,) + w)
    complement = np.zeros(n, dtype=np.int64)
    for a in range(n):
        hits = np.nonzero((meet[a] == bottom) & (join[a] == top))[0]
        if len(hits) == 0:
            raise LawViolation("complement", (a,))
        complement[a] = hits[0]
    result = Lattice(meet, join, complement, bottom, top)
    m._cache["lattice"] = result
    return result


def check_boolean(m: BooleanEhresmannMonoid) -> BooleanEhresmannMonoid:
    """Return ``m`` if it is a Boolean Ehresmann monoid, else raise ``LawViolation``."""
    s = check_ehresmann(m.semigroup)
    if s.identity is None:
        raise LawViolation("identity", (), "a Boolean Ehresmann monoid needs a declared identity")
    lat = lattice(m)
    le = m.order
    n = s.size
    mult, star, plus = s.mult, s.star, s.plus
    join = lat.join
    for c in range(n):
        w = _first(mult[c][join] != join[mult[c][:, None], mult[c][None, :]])
        if w is not None:
            raise LawViolation("OE1", (c,) + w, "c(a u b) != ca u cb")
        col = mult[:, c]
        w = _first(mult[join, c] != join[col[:, None], col[None, :]])
        if w is not None:
            raise LawViolation("OE1", (c,) + w, "(a u b)c != ac u bc")
    inU = np.zeros(n, dtype=bool)
    inU[list(s.U)] = True
    for e in s.U:
        w = _first(le[:, e] & ~inU)
        if w is not None:
            raise LawViolation("OE2", (e, w[0]))
    for e in s.U:
        for f in s.U:
            if order_le(s, e, f) != bool(le[e, f]):
                raise LawViolation("OE3", (e, f))
    for e in s.U:
        w = _first(~le[mult[e], np.arange(n)])
        if w is not None:
            raise LawViolation("OE4", (e, w[0]), "eb not contained in b")
        w = _first(~le[mult[:, e], np.arange(n)])
        if w is not None:
            raise LawViolation("OE4", (e, w[0]), "be not contained in b")
    w = _first(star[join] != join[star[:, None], star[None, :]])
    if w is not None:
        raise LawViolation("OE5", w, "star")
    w = _first(plus[join] != join[plus[:, None], plus[None, :]])
    if w is not None:
        raise LawViolation("OE5", w, "plus")
    return m


def atoms(m: BooleanEhresmannMonoid) -> list:
    """Minimal nonzero elements, ascending."""
    le = m.order
    bottom = lattice(m).bottom
    counts = le.sum(axis=0)
    return [a for a in range(m.size) if a != bottom and counts[a] == 2]


def is_partial_isometry_abstract(m: BooleanEhresmannMonoid, a: int) -> Verdict:
    s = m.semigroup
    for b in np.nonzero(m.order[:, a])[0]:
        b = int(b)
        if s.mult[s.plus[b], a] != b or s.mult[a, s.star[b]] != b:
            return Verdict.failed("partial isometry", (b,), "contained but not below")
    return Verdict.passed("partial isometry")


def partial_isometry_elements(m: BooleanEhresmannMonoid) -> list:
    return [a for a in range(m.size) if is_partial_isometry_abstract(m, a)]


def pi_product_closed(m: BooleanEhresmannMonoid) -> Verdict:
    pis = partial_isometry_elements(m)
    is_pi = np.zeros(m.size, dtype=bool)
    is_pi[pis] = True
    mult = m.semigroup.mult
    for a in pis:
        for b in pis:
            if not is_pi[mult[a, b]]:
                return Verdict.failed("product of partial isometries", (a, b))
    return Verdict.passed("product of partial isometries", data=pis)


def bottom_is_zero(m: BooleanEhresmannMonoid) -> Verdict:
    """Whether the least element of the order absorbs under multiplication.

    Holds in every P(C) but is not implied by the order axioms: the monoid
    ``{1, a}`` with ``a`` absorbing and ``1`` below ``a`` satisfies them all.
    """
    s = m.semigroup
    z = lattice(m).bottom
    for x in range(s.size):
        if s.mult[z, x] != z or s.mult[x, z] != z:
            return Verdict.failed("bottom is a zero", (z, x))
    return Verdict.passed("bottom is a zero")


def reconstruct_category(m: BooleanEhresmannMonoid) -> FiniteCategory:
    """The category of atoms under the restricted product.

    Morphism ``i`` of the result is ``atoms(m)[i]``. Requires the product of
    partial isometries to be a partial isometry and the bottom to be a zero.
    """
    zero = bottom_is_zero(m)
    if not zero:
        raise LawViolation("hypothesis: bottom is a zero", zero.witness)
    closed = pi_product_closed(m)
    if not closed:
        raise LawViolation("hypothesis: product of partial isometries", closed.witness)
    s = m.semigroup
    bottom = lattice(m).bottom
    at = atoms(m)
    pos = {a: i for i, a in enumerate(at)}
    for a in at:
        if int(s.star[a]) not in pos or int(s.plus[a]) not in pos:
            raise InternalConsistencyError("atom endpoints", (a,), "star or plus of an atom is not an atom")
    k = len(at)
    comp = np.full((k, k), UNDEF, dtype=np.int64)
    for i, a in enumerate(at):
        for j, b in enumerate(at):
            ab = int(s.mult[a, b])
            if s.star[a] == s.plus[b]:
                if ab == bottom:
                    raise InternalConsistencyError("atom products", (a, b), "restricted product is zero")
                if ab not in pos:
                    raise InternalConsistencyError("atom products", (a, b), "restricted product is not an atom")
                comp[i, j] = pos[ab]
            elif ab != bottom:
                raise InternalConsistencyError("atom products", (a, b), "nonzero product of non-matching atoms")
    dom = [pos[int(s.star[a])] for a in at]
    cod = [pos[int(s.plus[a])] for a in at]
    identities = [pos[a] for a in at if a in s.projections]
    c = FiniteCategory(dom, cod, comp, identities, tuple(s.names[a] for a in at))
    try:
        return validate_category(c)
    except LawViolation as exc:
        raise InternalConsistencyError("atom category", exc.witness, str(exc)) from exc


@dataclass
class PhiResult:
    category: FiniteCategory
    atoms: list
    phi: np.ndarray  # phi[a] is a bitmask over the category's morphisms
    checks: list

    @property
    def verdict(self) -> Verdict:
        for v in self.checks:
            if not v:
                return v
        return Verdict.passed("phi isomorphism")


def phi_isomorphism(m: BooleanEhresmannMonoid, size_cap: int | None = None) -> PhiResult:
    """Send each element to the set of atoms below it and verify the result
    is an isomorphism of Boolean Ehresmann monoids onto P(C)."""
    from .powerset import build_powerset_monoid, identity_mask

    c = reconstruct_category(m)
    at = atoms(m)
    s = m.semigroup
    n = s.size
    le = m.order
    phi = np.zeros(n, dtype=np.int64)
    for i, x in enumerate(at):
        phi[le[x]] |= 1 << i
    p = build_powerset_monoid(c, size_cap).semigroup
    checks = []

    def record(law, bad):
        w = _first(bad)
        checks.append(Verdict.failed(law, w) if w is not None else Verdict.passed(law))

    bottom = lattice(m).bottom
    record("phi(0) is empty", np.array([phi[bottom] != 0]))
    if len(set(phi.tolist())) != n or n != p.size:
        counts = np.bincount(phi, minlength=max(p.size, 1))
        dup = np.nonzero(counts > 1)[0]
        checks.append(Verdict.failed("bijection", tuple(int(d) for d in dup[:1]), f"{n} elements, {p.size} subsets"))
    else:
        checks.append(Verdict.passed("bijection"))
    record("multiplicative", phi[s.mult] != p.mult[phi[:, None], phi[None, :]])
    record("star", phi[s.star] != p.star[phi])
    record("plus", phi[s.plus] != p.plus[phi])
    record("order isomorphism", le != ((phi[:, None] & ~phi[None, :]) == 0))
    ids = identity_mask(c)
    images = sorted(int(phi[e]) for e in s.U)
    expected = [x for x in range(1 << c.size) if x & ~ids == 0]
    if images == expected:
        checks.append(Verdict.passed("projections onto P(C_o)"))
    else:
        extra = sorted(set(images) ^ set(expected))
        checks.append(Verdict.failed("projections onto P(C_o)", tuple(extra[:1])))
    return PhiResult(c, at, phi, checks)


def order_lemmas(m: BooleanEhresmannMonoid) -> list:
    """Monotonicity, the Boolean algebra of projections, and partial-isometry facts."""
    s = m.semigroup
    le = m.order
    lat = lattice(m)
    n = s.size
    out = []
    # a <= b and c <= d imply ac <= bd
    bad = None
    pairs = np.argwhere(le)
    for a, b in pairs:
        rows_ac = s.mult[a][pairs[:, 0]]
        rows_bd = s.mult[b][pairs[:, 1]]
        hit = np.nonzero(~le[rows_ac, rows_bd])[0]
        if len(hit):
            c, d = pairs[hit[0]]
            bad = (int(a), int(b), int(c), int(d))
            break
    out.append(Verdict.failed("monotone product", bad) if bad else Verdict.passed("monotone product"))
    w = _first(le & ~le[s.star[:, None], s.star[None, :]])
    out.append(Verdict.failed("monotone star", w) if w else Verdict.passed("monotone star"))
    w = _first(le & ~le[s.plus[:, None], s.plus[None, :]])
    out.append(Verdict.failed("monotone plus", w) if w else Verdict.passed("monotone plus"))
    one, top = s.identity, lat.top
    if s.star[top] == one and s.plus[top] == one:
        out.append(Verdict.passed("t* = 1 = t+"))
    else:
        out.append(Verdict.failed("t* = 1 = t+", (top,)))
    inU = np.zeros(n, dtype=bool)
    inU[list(s.U)] = True
    U = list(s.U)
    bad = None
    for e in U:
        for f in U:
            if not (inU[lat.meet[e, f]] and inU[lat.join[e, f]]):
                bad = (e, f)
                break
        if bad:
            break
        neg = int(lat.meet[one, lat.complement[e]])
        if not inU[neg] or lat.meet[e, neg] != lat.bottom or lat.join[e, neg] != one:
            bad = (e,)
            break
    out.append(Verdict.failed("U is a Boolean algebra", bad) if bad else Verdict.passed("U is a Boolean algebra"))
    pis = set(partial_isometry_elements(m))
    bad = None
    for a in sorted(pis):
        below = [int(b) for b in np.nonzero(le[:, a])[0] if int(b) not in pis]
        if below:
            bad = (a, below[0])
            break
    out.append(Verdict.failed("partial isometries form an order ideal", bad) if bad
               else Verdict.passed("partial isometries form an order ideal"))
    bad = next((a for a in sorted(pis) if not classify_element(s, a)["bideterministic"]), None)
    out.append(Verdict.failed("partial isometries are bideterministic", (bad,)) if bad is not None
               else Verdict.passed("partial isometries are bideterministic"))
    bad = next((a for a in atoms(m) if a not in pis), None)
    out.append(Verdict.failed("atoms are partial isometries", (bad,)) if bad is not None
               else Verdict.passed("atoms are partial isometries"))
    return out
