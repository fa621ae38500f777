"""Finite categories stored as composition tables.

Composition uses applicative order: ``comp[x, y]`` is "x after y" and is
defined exactly when ``dom[x] == cod[y]``. Undefined entries hold ``UNDEF``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import LawViolation, Verdict

UNDEF = -1


def _frozen(a, dtype=np.int64) -> np.ndarray:
    arr = np.array(a, dtype=dtype)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    dom: np.ndarray
    cod: np.ndarray
    comp: np.ndarray
    identities: frozenset
    names: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "dom", _frozen(self.dom))
        object.__setattr__(self, "cod", _frozen(self.cod))
        n = len(self.dom)
        comp = np.array(self.comp, dtype=np.int64).reshape((n, n)) if n else np.zeros((0, 0), np.int64)
        comp.flags.writeable = False
        object.__setattr__(self, "comp", comp)
        object.__setattr__(self, "identities", frozenset(int(e) for e in self.identities))
        if not self.names:
            object.__setattr__(self, "names", tuple(f"m{i}" for i in range(n)))
        else:
            object.__setattr__(self, "names", tuple(self.names))

    @property
    def size(self) -> int:
        return len(self.dom)

    @property
    def objects(self) -> tuple:
        """Identity morphisms in ascending index order."""
        return tuple(sorted(self.identities))

    def compose(self, x: int, y: int) -> int | None:
        r = int(self.comp[x, y])
        return None if r == UNDEF else r

    def name(self, x: int) -> str:
        return self.names[x]

    def same_as(self, other: "FiniteCategory") -> bool:
        return (
            self is other
            or (
                np.array_equal(self.dom, other.dom)
                and np.array_equal(self.cod, other.cod)
                and np.array_equal(self.comp, other.comp)
                and self.identities == other.identities
            )
        )

    def __repr__(self):
        return f"FiniteCategory({self.size} morphisms, {len(self.identities)} objects)"


def from_arrows(objects: Sequence[str], arrows: Sequence[tuple], composites: dict) -> FiniteCategory:
    """Build a category with identities first, then arrows in the given order.

    ``arrows`` holds ``(name, dom_object, cod_object)``; ``composites`` maps a
    pair of arrow names to the name of their composite. Composites involving
    an identity are filled in automatically. The result is not validated.
    """
    k = len(objects)
    obj_index = {name: i for i, name in enumerate(objects)}
    names = [f"id_{o}" for o in objects] + [a[0] for a in arrows]
    index = {name: i for i, name in enumerate(names)}
    n = len(names)
    dom = list(range(k)) + [obj_index[a[1]] for a in arrows]
    cod = list(range(k)) + [obj_index[a[2]] for a in arrows]
    comp = np.full((n, n), UNDEF, dtype=np.int64)
    for x in range(n):
        comp[x, dom[x]] = x
        comp[cod[x], x] = x
    for (left, right), result in composites.items():
        comp[index[left], index[right]] = index[result]
    return FiniteCategory(dom, cod, comp, range(k), tuple(names))


def validate_category(c: FiniteCategory) -> FiniteCategory:
    """Return ``c`` unchanged if it is a category, else raise ``LawViolation``."""
    n = c.size
    if len(c.cod) != n or c.comp.shape != (n, n):
        raise LawViolation("arity", (n, len(c.cod), c.comp.shape), "table sizes disagree")
    for e in sorted(c.identities):
        if not 0 <= e < n:
            raise LawViolation("dangling index", (e,), "identity out of range")
    dom = c.dom.tolist()
    cod = c.cod.tolist()
    comp = c.comp.tolist()
    for x in range(n):
        for label, v in (("dom", dom[x]), ("cod", cod[x])):
            if not 0 <= v < n:
                raise LawViolation("dangling index", (x,), f"{label} out of range")
            if v not in c.identities:
                raise LawViolation("dangling index", (x,), f"{label} is not an identity")
    for x in range(n):
        for y in range(n):
            if not UNDEF <= comp[x][y] < n:
                raise LawViolation("dangling index", (x, y), "composite out of range")
    for e in sorted(c.identities):
        if dom[e] != e or cod[e] != e:
            raise LawViolation("identity", (e,), "identity must be its own domain and codomain")
    for x in range(n):
        for y in range(n):
            defined = comp[x][y] != UNDEF
            if defined and dom[x] != cod[y]:
                raise LawViolation("non-composable pair", (x, y))
            if not defined and dom[x] == cod[y]:
                raise LawViolation("missing composite", (x, y))
    for x in range(n):
        for y in range(n):
            r = comp[x][y]
            if r != UNDEF and (dom[r] != dom[y] or cod[r] != cod[x]):
                raise LawViolation("composite endpoints", (x, y, r))
    for x in range(n):
        if comp[x][dom[x]] != x:
            raise LawViolation("identity law", (x, dom[x]))
        if comp[cod[x]][x] != x:
            raise LawViolation("identity law", (cod[x], x))
    for x in range(n):
        for y in range(n):
            xy = comp[x][y]
            if xy == UNDEF:
                continue
            for z in range(n):
                yz = comp[y][z]
                if yz == UNDEF:
                    continue
                if comp[xy][z] != comp[x][yz]:
                    raise LawViolation("associativity", (x, y, z))
    return c


def is_groupoid(c: FiniteCategory) -> Verdict:
    """Check for inverses; on success ``data`` is the inverse map."""
    inverse = []
    for x in range(c.size):
        d, r = int(c.dom[x]), int(c.cod[x])
        for y in range(c.size):
            if c.comp[x, y] == r and c.comp[y, x] == d:
                inverse.append(y)
                break
        else:
            return Verdict.failed("groupoid", (x,), "no inverse")
    return Verdict.passed("groupoid", data=tuple(inverse))


def is_cancellative(c: FiniteCategory) -> Verdict:
    comp = c.comp.tolist()
    n = c.size
    for x in range(n):
        seen = {}
        for y in range(n):
            r = comp[x][y]
            if r == UNDEF:
                continue
            if r in seen:
                return Verdict.failed("left cancellation", (x, seen[r], y))
            seen[r] = y
    for x in range(n):
        seen = {}
        for y in range(n):
            r = comp[y][x]
            if r == UNDEF:
                continue
            if r in seen:
                return Verdict.failed("right cancellation", (x, seen[r], y))
            seen[r] = y
    return Verdict.passed("cancellative")


def pair_groupoid(k: int) -> FiniteCategory:
    """The pair groupoid on ``{1..k}``; diagonal pairs come first.

    Morphism ``(x, y)`` has domain ``(y, y)`` and codomain ``(x, x)``.
    """
    if k < 1:
        raise ValueError("pair groupoid needs at least one point")
    pairs = [(x, x) for x in range(k)] + [(x, y) for x in range(k) for y in range(k) if x != y]
    index = {p: i for i, p in enumerate(pairs)}
    n = len(pairs)
    dom = [index[(y, y)] for _, y in pairs]
    cod = [index[(x, x)] for x, _ in pairs]
    comp = np.full((n, n), UNDEF, dtype=np.int64)
    for (x, y), i in index.items():
        for (y2, z), j in index.items():
            if y == y2:
                comp[i, j] = index[(x, z)]
    names = tuple(f"({x + 1},{y + 1})" for x, y in pairs)
    return FiniteCategory(dom, cod, comp, range(k), names)


def check_functor(c: FiniteCategory, d: FiniteCategory, f: Sequence[int]) -> Verdict:
    """Check that ``f`` maps identities, dom, cod and composites of ``c`` into ``d``.

    ``extra['injective']`` reports injectivity on morphisms.
    """
    f = [int(v) for v in f]
    if len(f) != c.size:
        return Verdict.failed("arity", (len(f), c.size))
    for x, v in enumerate(f):
        if not 0 <= v < d.size:
            return Verdict.failed("dangling index", (x, v))
    for e in sorted(c.identities):
        if f[e] not in d.identities:
            return Verdict.failed("functor identities", (e,))
    for x in range(c.size):
        if f[int(c.dom[x])] != d.dom[f[x]] or f[int(c.cod[x])] != d.cod[f[x]]:
            return Verdict.failed("functor endpoints", (x,))
    for x in range(c.size):
        for y in range(c.size):
            r = c.compose(x, y)
            if r is not None and d.compose(f[x], f[y]) != f[r]:
                return Verdict.failed("functor composition", (x, y))
    injective = len(set(f)) == len(f)
    out = Verdict.passed("functor", injective=injective)
    return out


def find_isomorphism(c: FiniteCategory, d: FiniteCategory) -> tuple | None:
    """Backtracking search for an isomorphism ``c -> d``; first witness found."""
    if c.size != d.size or len(c.identities) != len(d.identities):
        return None
    n = c.size
    order = list(c.objects) + [x for x in range(n) if x not in c.identities]
    cdom, ccod, ccomp = c.dom.tolist(), c.cod.tolist(), c.comp.tolist()
    ddom, dcod, dcomp = d.dom.tolist(), d.cod.tolist(), d.comp.tolist()
    dids = d.identities
    f = [UNDEF] * n
    used = [False] * n

    def consistent(x: int) -> bool:
        for a in range(n):
            if f[a] == UNDEF:
                continue
            for b in range(n):
                if f[b] == UNDEF:
                    continue
                r = ccomp[a][b]
                if r == UNDEF or f[r] == UNDEF or x not in (a, b, r):
                    continue
                if dcomp[f[a]][f[b]] != f[r]:
                    return False
        return True

    def place(i: int) -> bool:
        if i == n:
            return True
        x = order[i]
        is_id = x in c.identities
        for v in range(n):
            if used[v] or (v in dids) != is_id:
                continue
            if not is_id and (ddom[v] != f[cdom[x]] or dcod[v] != f[ccod[x]]):
                continue
            f[x] = v
            used[v] = True
            if consistent(x) and place(i + 1):
                return True
            f[x] = UNDEF
            used[v] = False
        return False

    if place(0) and check_functor(c, d, f):
        return tuple(f)
    return None


def all_isomorphisms_brute(c: FiniteCategory, d: FiniteCategory):
    """Every isomorphism ``c -> d`` by trying all permutations. Tiny inputs only."""
    if c.size != d.size:
        return
    for perm in itertools.permutations(range(d.size)):
        v = check_functor(c, d, perm)
        if v.ok:
            yield perm
