"""Ehresmann biactions and the pseudoproduct.

Tables are indexed by the position of an identity in ``category.objects``:
``meet[i, j]``, ``lact[i, a]`` and ``ract[a, i]`` all hold morphism indices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .category import FiniteCategory
from .ehresmann import (
    EhresmannSemigroup,
    check_ehresmann,
    restricted_product_category,
)
from .errors import InternalConsistencyError, LawViolation, Verdict


@dataclass(frozen=True, eq=False)
class EhresmannBiaction:
    category: FiniteCategory
    meet: np.ndarray
    lact: np.ndarray
    ract: np.ndarray

    def __post_init__(self):
        for attr in ("meet", "lact", "ract"):
            arr = np.array(getattr(self, attr), dtype=np.int64)
            arr.flags.writeable = False
            object.__setattr__(self, attr, arr)

    @property
    def objects(self) -> tuple:
        return self.category.objects

    def pos(self, e: int) -> int:
        return self.objects.index(e)

    def left(self, e: int, a: int) -> int:
        return int(self.lact[self.pos(e), a])

    def right(self, a: int, e: int) -> int:
        return int(self.ract[a, self.pos(e)])

    def product(self, e: int, f: int) -> int:
        return int(self.meet[self.pos(e), self.pos(f)])


class _Tables:
    """Plain-list view of a biaction for the quantifier scans."""

    def __init__(self, b: EhresmannBiaction):
        c = b.category
        self.n = c.size
        self.objs = list(b.objects)
        self.pos = {e: i for i, e in enumerate(self.objs)}
        self.dom = c.dom.tolist()
        self.cod = c.cod.tolist()
        self.comp = c.comp.tolist()
        self.meet_t = b.meet.tolist()
        self.lact = b.lact.tolist()
        self.ract = b.ract.tolist()

    def meet(self, e, f):
        return self.meet_t[self.pos[e]][self.pos[f]]

    def left(self, e, a):
        return self.lact[self.pos[e]][a]

    def right(self, a, e):
        return self.ract[a][self.pos[e]]

    def le(self, e, f):
        return self.meet(e, f) == e


def check_biaction(b: EhresmannBiaction) -> EhresmannBiaction:
    """Return ``b`` if it satisfies (E1)-(E6), else raise ``LawViolation``.

    Also checks that every pseudoproduct composite is defined.
    """
    c = b.category
    k, n = len(b.objects), c.size
    if b.meet.shape != (k, k) or b.lact.shape != (k, n) or b.ract.shape != (n, k):
        raise LawViolation("arity", (k, n), "biaction table shapes")
    ids = c.identities
    for label, arr, needs_id in (("meet", b.meet, True), ("lact", b.lact, False), ("ract", b.ract, False)):
        for idx in np.argwhere((arr < 0) | (arr >= n)):
            raise LawViolation("dangling index", tuple(int(v) for v in idx), label)
        if needs_id:
            for idx in np.argwhere(~np.isin(arr, list(ids))):
                raise LawViolation("dangling index", tuple(int(v) for v in idx), "meet leaves C_o")
    t = _Tables(b)
    objs, dom, cod, comp = t.objs, t.dom, t.cod, t.comp
    # (E1)
    for e in objs:
        if t.meet(e, e) != e:
            raise LawViolation("E1", (e,), "not idempotent")
        for f in objs:
            if t.meet(e, f) != t.meet(f, e):
                raise LawViolation("E1", (e, f), "not commutative")
            for g in objs:
                if t.meet(t.meet(e, f), g) != t.meet(e, t.meet(f, g)):
                    raise LawViolation("E1", (e, f, g), "not associative")
    # (E2) support laws, then actionhood
    for a in range(n):
        if t.left(cod[a], a) != a:
            raise LawViolation("E2", (cod[a], a), "r(a).a != a")
        if t.right(a, dom[a]) != a:
            raise LawViolation("E2", (a, dom[a]), "a.d(a) != a")
    for e in objs:
        for a in range(n):
            if cod[t.left(e, a)] != t.meet(e, cod[a]):
                raise LawViolation("E2", (e, a), "r(e.a) != e r(a)")
    for a in range(n):
        for e in objs:
            if dom[t.right(a, e)] != t.meet(dom[a], e):
                raise LawViolation("E2", (a, e), "d(a.e) != d(a) e")
    for e in objs:
        for f in objs:
            ef = t.meet(e, f)
            for a in range(n):
                if t.left(e, t.left(f, a)) != t.left(ef, a):
                    raise LawViolation("E2", (e, f, a), "left action law")
    for a in range(n):
        for f in objs:
            for e in objs:
                if t.right(t.right(a, f), e) != t.right(a, t.meet(f, e)):
                    raise LawViolation("E2", (a, f, e), "right action law")
    # (E3)
    for e in objs:
        for a in range(n):
            for f in objs:
                if t.right(t.left(e, a), f) != t.left(e, t.right(a, f)):
                    raise LawViolation("E3", (e, a, f))
    # (E4)
    for e in objs:
        for a in objs:
            if t.left(e, a) != t.meet(e, a):
                raise LawViolation("E4", (e, a), "e.a != ea")
            if t.right(a, e) != t.meet(a, e):
                raise LawViolation("E4", (a, e), "a.e != ae")
    # (E5)
    for e in objs:
        for a in range(n):
            if not t.le(dom[t.left(e, a)], dom[a]):
                raise LawViolation("E5", (e, a), "d(e.a) not below d(a)")
    for a in range(n):
        for e in objs:
            if not t.le(cod[t.right(a, e)], cod[a]):
                raise LawViolation("E5", (a, e), "r(a.e) not below r(a)")
    # (E6), only on composable pairs
    for x in range(n):
        for y in range(n):
            xy = comp[x][y]
            if xy < 0:
                continue
            for e in objs:
                ex = t.left(e, x)
                rest = t.left(dom[ex], y)
                rhs = comp[ex][rest]
                if rhs < 0:
                    raise InternalConsistencyError("E6 composability", (e, x, y))
                if t.left(e, xy) != rhs:
                    raise LawViolation("E6", (e, x, y), "left")
                ye = t.right(y, e)
                head = t.right(x, cod[ye])
                rhs = comp[head][ye]
                if rhs < 0:
                    raise InternalConsistencyError("E6 composability", (x, y, e))
                if t.right(xy, e) != rhs:
                    raise LawViolation("E6", (x, y, e), "right")
    for x in range(n):
        for y in range(n):
            e = t.meet(dom[x], cod[y])
            if dom[t.right(x, e)] != cod[t.left(e, y)]:
                raise LawViolation("pseudoproduct composability", (x, y))
    return b


def biaction_from_ehresmann(s: EhresmannSemigroup) -> EhresmannBiaction:
    """Restricted-product category with both actions given by multiplication."""
    c = restricted_product_category(s)
    objs = list(c.objects)
    meet = s.mult[np.ix_(objs, objs)]
    lact = s.mult[objs, :]
    ract = s.mult[:, objs]
    return EhresmannBiaction(c, meet, lact, ract)


def pseudoproduct(b: EhresmannBiaction, x: int, y: int) -> int:
    c = b.category
    e = b.product(int(c.dom[x]), int(c.cod[y]))
    r = c.compose(b.right(x, e), b.left(e, y))
    if r is None:
        raise InternalConsistencyError("pseudoproduct", (x, y), "composite undefined")
    return r


def pseudoproduct_table(b: EhresmannBiaction) -> np.ndarray:
    t = _Tables(b)
    out = np.zeros((t.n, t.n), dtype=np.int64)
    for x in range(t.n):
        for y in range(t.n):
            e = t.meet(t.dom[x], t.cod[y])
            r = t.comp[t.right(x, e)][t.left(e, y)]
            if r < 0:
                raise InternalConsistencyError("pseudoproduct", (x, y), "composite undefined")
            out[x, y] = r
    return out


def semigroup_from_biaction(b: EhresmannBiaction) -> EhresmannSemigroup:
    """``(C, pseudoproduct)`` with projections ``C_o``, star = dom, plus = cod."""
    c = b.category
    s = EhresmannSemigroup(pseudoproduct_table(b), c.identities, c.dom, c.cod, None, c.names)
    try:
        return check_ehresmann(s)
    except LawViolation as exc:
        raise InternalConsistencyError(f"pseudoproduct semigroup {exc.law}", exc.witness, exc.message) from exc


def expansion_check(b: EhresmannBiaction) -> Verdict:
    """Compare both bracketings of a triple pseudoproduct with the closed form
    ``(x . r(y . r(z))) (d(x) . y . r(z)) (d(d(x) . y) . z)``."""
    t = _Tables(b)
    table = pseudoproduct_table(b).tolist()
    dom, cod, comp = t.dom, t.cod, t.comp
    for x in range(t.n):
        for y in range(t.n):
            dx_y = t.left(dom[x], y)
            for z in range(t.n):
                rz = cod[z]
                p = t.right(x, cod[t.right(y, rz)])
                q = t.right(dx_y, rz)
                r = t.left(dom[dx_y], z)
                pq = comp[p][q]
                closed = comp[pq][r] if pq >= 0 else -1
                left = table[table[x][y]][z]
                right = table[x][table[y][z]]
                if closed < 0 or not (left == closed == right):
                    return Verdict.failed("three-way expansion", (x, y, z))
    return Verdict.passed("three-way expansion")
