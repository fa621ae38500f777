"""The power-set monoid P(C) of a finite category.

Subsets are bitmasks over morphism indices. When P(C) is materialized,
element ``i`` is the subset whose bitmask is ``i``, so element 0 is the
empty set and element ``2**n - 1`` is all of C.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .boolean import BooleanEhresmannMonoid
from .category import UNDEF, FiniteCategory
from .ehresmann import EhresmannSemigroup
from .errors import CapExceeded

DEFAULT_CAP = 1 << 20


def default_cap() -> int:
    env = os.environ.get("EHRESMANN_LAB_CAP")
    return int(env) if env else DEFAULT_CAP


def bits(mask: int) -> list:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def to_mask(members: Iterable[int]) -> int:
    m = 0
    for x in members:
        m |= 1 << int(x)
    return m


@dataclass(frozen=True)
class Subset:
    base: FiniteCategory
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.base.size:
            raise ValueError(f"subset {self.mask:#b} exceeds {self.base.size} morphisms")

    @classmethod
    def of(cls, base: FiniteCategory, members: Iterable[int]) -> "Subset":
        return cls(base, to_mask(members))

    @property
    def members(self) -> frozenset:
        return frozenset(bits(self.mask))

    def __len__(self):
        return bin(self.mask).count("1")

    def label(self) -> str:
        return "{" + ",".join(self.base.names[i] for i in bits(self.mask)) + "}"


def _same_base(a: Subset, b: Subset) -> None:
    if not a.base.same_as(b.base):
        raise ValueError("subsets live over different categories")


def mask_product(c: FiniteCategory, a: int, b: int) -> int:
    out = 0
    bs = bits(b)
    comp = c.comp
    for x in bits(a):
        row = comp[x]
        for y in bs:
            r = row[y]
            if r != UNDEF:
                out |= 1 << int(r)
    return out


def mask_star(c: FiniteCategory, a: int) -> int:
    return to_mask(int(c.dom[x]) for x in bits(a))


def mask_plus(c: FiniteCategory, a: int) -> int:
    return to_mask(int(c.cod[x]) for x in bits(a))


def subset_product(a: Subset, b: Subset) -> Subset:
    _same_base(a, b)
    return Subset(a.base, mask_product(a.base, a.mask, b.mask))


def subset_star(a: Subset) -> Subset:
    return Subset(a.base, mask_star(a.base, a.mask))


def subset_plus(a: Subset) -> Subset:
    return Subset(a.base, mask_plus(a.base, a.mask))


def identity_mask(c: FiniteCategory) -> int:
    return to_mask(c.identities)


def build_powerset_monoid(c: FiniteCategory, size_cap: int | None = None) -> BooleanEhresmannMonoid:
    """Materialize P(C) with subset inclusion as its Boolean order.

    ``size_cap`` bounds the number of Cayley-table cells, ``4**|C|``.
    """
    cap = default_cap() if size_cap is None else size_cap
    n = c.size
    N = 1 << n
    if N * N > cap:
        raise CapExceeded(N * N, cap)
    masks = np.arange(N, dtype=np.int64)
    low = masks & -masks
    lowidx = np.zeros(N, dtype=np.int64)
    lowidx[1:] = np.log2(low[1:]).astype(np.int64)
    rest = masks & (masks - 1)

    # single[x][B] = {x} B, grown one low bit of B at a time
    single = np.zeros((n, N), dtype=np.int64)
    for x in range(n):
        row = single[x]
        for b in range(1, N):
            r = c.comp[x, lowidx[b]]
            row[b] = row[rest[b]] | ((1 << int(r)) if r != UNDEF else 0)
    mult = np.zeros((N, N), dtype=np.int64)
    for a in range(1, N):
        mult[a] = mult[rest[a]] | single[lowidx[a]]
    star = np.zeros(N, dtype=np.int64)
    plus = np.zeros(N, dtype=np.int64)
    dom = c.dom.tolist()
    cod = c.cod.tolist()
    for a in range(1, N):
        star[a] = star[rest[a]] | (1 << dom[lowidx[a]])
        plus[a] = plus[rest[a]] | (1 << cod[lowidx[a]])
    ids = identity_mask(c)
    projections = [e for e in range(N) if e & ~ids == 0]
    names = tuple(Subset(c, m).label() for m in range(N))
    s = EhresmannSemigroup(mult, projections, star, plus, ids, names)
    order = (masks[:, None] & ~masks[None, :]) == 0
    return BooleanEhresmannMonoid(s, order)


def classify_subset(c: FiniteCategory, a) -> dict:
    """Classify a subset from the domains and codomains of its members.

    The empty set counts as deterministic, codeterministic and a partial
    isometry.
    """
    mask = a.mask if isinstance(a, Subset) else (a if isinstance(a, int) else to_mask(a))
    members = bits(mask)
    dom = [int(c.dom[x]) for x in members]
    cod = [int(c.cod[x]) for x in members]
    det = all(cod[i] == cod[j] for i in range(len(members)) for j in range(len(members)) if dom[i] == dom[j])
    codet = all(dom[i] == dom[j] for i in range(len(members)) for j in range(len(members)) if cod[i] == cod[j])
    pi = len(set(dom)) == len(members) and len(set(cod)) == len(members)
    return {"deterministic": det, "codeterministic": codet,
            "bideterministic": det and codet, "partial_isometry": pi}


def definitional_classification(m: BooleanEhresmannMonoid, a: int) -> dict:
    """Classify element ``a`` of a materialized P(C) by quantifying over the monoid.

    Deterministic: ``E A = A (E A)*`` for every projection E. Partial isometry:
    every ``B`` below ``A`` in the inclusion order satisfies ``B <= A``.
    """
    s = m.semigroup
    mult, star, plus = s.mult, s.star, s.plus
    det = all(mult[e, a] == mult[a, star[mult[e, a]]] for e in s.U)
    codet = all(mult[a, e] == mult[plus[mult[a, e]], a] for e in s.U)
    below = np.nonzero(m.order[:, a])[0]
    pi = all(mult[plus[b], a] == b and mult[a, star[b]] == b for b in below)
    return {"deterministic": bool(det), "codeterministic": bool(codet),
            "bideterministic": bool(det and codet), "partial_isometry": bool(pi)}


def partial_isometries(c: FiniteCategory) -> list:
    """Bitmasks of all subsets with injective dom and cod, ascending."""
    n = c.size
    dom = c.dom.tolist()
    cod = c.cod.tolist()
    out = []

    def grow(i: int, mask: int, doms: int, cods: int) -> None:
        if i == n:
            out.append(mask)
            return
        grow(i + 1, mask, doms, cods)
        d, r = 1 << dom[i], 1 << cod[i]
        if not doms & d and not cods & r:
            grow(i + 1, mask | (1 << i), doms | d, cods | r)

    grow(0, 0, 0, 0)
    return sorted(out)
