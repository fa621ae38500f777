"""Enumeration of small finite categories up to isomorphism."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator

import numpy as np

from .category import UNDEF, FiniteCategory, validate_category

HARD_CAP = 6


def _count_matrices(k: int, total: int):
    cells = k * k
    for combo in itertools.combinations_with_replacement(range(cells), total):
        counts = [0] * cells
        for c in combo:
            counts[c] += 1
        yield tuple(counts)


def _permute_counts(counts: tuple, k: int, sigma: tuple) -> tuple:
    out = [0] * (k * k)
    for i in range(k):
        for j in range(k):
            out[sigma[i] * k + sigma[j]] = counts[i * k + j]
    return tuple(out)


def _shapes(k: int, total: int) -> list:
    """Hom-set size matrices (flattened, index ``dom * k + cod``) that are
    minimal under relabeling objects."""
    perms = list(itertools.permutations(range(k)))
    out = []
    for counts in _count_matrices(k, total):
        if all(_permute_counts(counts, k, s) >= counts for s in perms):
            out.append(counts)
    return sorted(set(out))


class _Shape:
    def __init__(self, k: int, counts: tuple):
        self.k = k
        self.counts = counts
        dom, cod = list(range(k)), list(range(k))
        self.homs = {}
        for d in range(k):
            for r in range(k):
                for _ in range(counts[d * k + r]):
                    self.homs.setdefault((d, r), []).append(len(dom))
                    dom.append(d)
                    cod.append(r)
        self.dom, self.cod = dom, cod
        self.n = len(dom)
        arrows = range(k, self.n)
        self.pairs = [(x, y) for x in arrows for y in arrows if dom[x] == cod[y]]
        self.choices = []
        for x, y in self.pairs:
            d, r = dom[y], cod[x]
            cands = list(self.homs.get((d, r), []))
            if d == r:
                cands = [d] + cands
            self.choices.append(cands)
        self.triples = [(x, y, z) for x, y in self.pairs for z in arrows if dom[y] == cod[z]]
        sym = []
        for sigma in itertools.permutations(range(k)):
            if _permute_counts(counts, k, sigma) != counts:
                continue
            blocks = []
            for (d, r), members in sorted(self.homs.items()):
                target = self.homs[(sigma[d], sigma[r])]
                blocks.append([(members, list(p)) for p in itertools.permutations(target)])
            for combo in itertools.product(*blocks):
                pi = list(sigma) + [0] * (self.n - k)
                for members, images in combo:
                    for a, b in zip(members, images):
                        pi[a] = b
                sym.append(pi)
        self.symmetries = sym
        self.pair_index = {p: i for i, p in enumerate(self.pairs)}

    def key(self, table: dict, pi: list) -> tuple:
        # relabel: new[(pi x, pi y)] = pi(old[(x, y)])
        new = {}
        for (x, y), r in table.items():
            new[(pi[x], pi[y])] = pi[r]
        return tuple(new[p] for p in self.pairs)

    def canonical(self, table: dict) -> tuple:
        return min(self.key(table, pi) for pi in self.symmetries)

    def build(self, key: tuple) -> FiniteCategory:
        n, k = self.n, self.k
        comp = np.full((n, n), UNDEF, dtype=np.int64)
        for x in range(n):
            comp[x, self.dom[x]] = x
            comp[self.cod[x], x] = x
        for (x, y), r in zip(self.pairs, key):
            comp[x, y] = r
        names = [f"id_o{i}" for i in range(k)] + [f"a{i}" for i in range(n - k)]
        return FiniteCategory(self.dom, self.cod, comp, range(k), tuple(names))


def _fill(shape: _Shape) -> Iterator[dict]:
    pairs, choices = shape.pairs, shape.choices
    k = shape.k
    table = {}

    def c(x, y):
        if x < k:
            return y
        if y < k:
            return x
        return table.get((x, y))

    def associative() -> bool:
        for x, y, z in shape.triples:
            xy = c(x, y)
            if xy is None:
                continue
            yz = c(y, z)
            if yz is None:
                continue
            left = c(xy, z)
            if left is None:
                continue
            right = c(x, yz)
            if right is not None and left != right:
                return False
        return True

    def step(i: int):
        if i == len(pairs):
            yield dict(table)
            return
        for r in choices[i]:
            table[pairs[i]] = r
            if associative():
                yield from step(i + 1)
        table.pop(pairs[i], None)

    yield from step(0)


@lru_cache(maxsize=None)
def _categories_of_size(m: int) -> tuple:
    out = []
    for k in range(1, m + 1):
        for counts in _shapes(k, m - k):
            shape = _Shape(k, counts)
            keys = {shape.canonical(t) for t in _fill(shape)}
            for key in sorted(keys):
                out.append(validate_category(shape.build(key)))
    return tuple(out)


def enumerate_categories(max_morphisms: int) -> Iterator[FiniteCategory]:
    """All categories with at most ``max_morphisms`` morphisms, one per
    isomorphism class, ordered by size, object count, hom-set shape and table."""
    if max_morphisms > HARD_CAP:
        raise ValueError(f"enumeration is capped at {HARD_CAP} morphisms")
    for m in range(1, max_morphisms + 1):
        yield from _categories_of_size(m)


@lru_cache(maxsize=None)
def _semilattices_of_size(n: int) -> tuple:
    cells = [(i, j) for i in range(n) for j in range(i + 1, n)]
    found = {}
    for values in itertools.product(range(n), repeat=len(cells)):
        t = [[i if i == j else 0 for j in range(n)] for i in range(n)]
        for (i, j), v in zip(cells, values):
            t[i][j] = t[j][i] = v
        if any(t[t[a][b]][c] != t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n)):
            continue
        key = min(
            tuple(p[t[pinv[a]][pinv[b]]] for a in range(n) for b in range(n))
            for p in itertools.permutations(range(n))
            for pinv in [sorted(range(n), key=lambda i, p=p: p[i])]
        )
        found.setdefault(key, None)
    return tuple(sorted(found))


def enumerate_semilattices(max_elements: int) -> Iterator[list]:
    """Multiplication tables of all meet semilattices with at most
    ``max_elements`` elements, one per isomorphism class."""
    for n in range(1, max_elements + 1):
        for key in _semilattices_of_size(n):
            yield [list(key[i * n:(i + 1) * n]) for i in range(n)]


def boolean_monoid_candidates(atoms: int) -> Iterator:
    """Boolean Ehresmann monoids on the subsets of an ``atoms``-element set.

    Products are fixed on pairs drawn from the atoms and the bottom, then
    extended by distributivity over nonempty joins; star and plus are the
    least projections that act as right and left units. Every candidate that
    passes all checks is yielded, without isomorphism reduction.
    """
    from .boolean import BooleanEhresmannMonoid, check_boolean
    from .ehresmann import EhresmannSemigroup
    from .errors import LawViolation

    if atoms > 2:
        raise ValueError("the census search is limited to two atoms")
    N = 1 << atoms
    gens = [0] + [1 << i for i in range(atoms)]  # bottom, then the atoms
    free = len(gens) ** 2
    grid = np.array(list(itertools.product(range(N), repeat=free)), dtype=np.int64).reshape(-1, len(gens), len(gens))

    def gen_parts(x):
        if x == 0:
            return [0]
        return [1 + i for i in range(atoms) if x >> i & 1]

    tables = np.zeros((grid.shape[0], N, N), dtype=np.int64)
    for a in range(N):
        for b in range(N):
            acc = np.zeros(grid.shape[0], dtype=np.int64)
            for i in gen_parts(a):
                for j in gen_parts(b):
                    acc |= grid[:, i, j]
            tables[:, a, b] = acc
    ok = np.ones(grid.shape[0], dtype=bool)
    rows = np.arange(grid.shape[0])
    for a in range(N):
        for b in range(N):
            for c in range(N):
                ab = tables[:, a, b]
                bc = tables[:, b, c]
                ok &= tables[rows, ab, c] == tables[rows, a, bc]
    order = np.array([[(x & ~y) == 0 for y in range(N)] for x in range(N)])
    for one in range(N):
        idx = np.arange(N)
        unit = ok & np.all(tables[:, one, :] == idx, axis=1) & np.all(tables[:, :, one] == idx, axis=1)
        U = [e for e in range(N) if order[e, one]]
        for t in np.nonzero(unit)[0]:
            mult = tables[t]
            star, plus = [], []
            for a in range(N):
                right = [e for e in U if mult[a, e] == a]
                left = [e for e in U if mult[e, a] == a]
                star.append(min(right, key=lambda e: order[:, e].sum()) if right else 0)
                plus.append(min(left, key=lambda e: order[:, e].sum()) if left else 0)
            m = BooleanEhresmannMonoid(EhresmannSemigroup(mult, U, star, plus, one), order)
            try:
                check_boolean(m)
            except LawViolation:
                continue
            yield m
