"""Slow, independent reference implementations used to cross-check the package.

Nothing here imports the code under test beyond plain data access, so a bug
in the fast paths cannot hide in both places at once.
"""

import itertools


def is_category(dom, cod, comp, ids):
    """Direct check of the category laws on a composition table
    (``comp[x][y]`` is x after y, None when undefined)."""
    n = len(dom)
    for x in range(n):
        for y in range(n):
            defined = comp[x][y] is not None
            if defined != (dom[x] == cod[y]):
                return False
            if defined:
                r = comp[x][y]
                if dom[r] != dom[y] or cod[r] != cod[x]:
                    return False
    for e in ids:
        if dom[e] != e or cod[e] != e:
            return False
    for x in range(n):
        if comp[cod[x]][x] != x or comp[x][dom[x]] != x:
            return False
    for x, y, z in itertools.product(range(n), repeat=3):
        if dom[x] == cod[y] and dom[y] == cod[z]:
            if comp[comp[x][y]][z] != comp[x][comp[y][z]]:
                return False
    return True


def isomorphic(a, b):
    """Brute force over all bijections of morphisms."""
    (da, ca, ta), (db, cb, tb) = a, b
    n = len(da)
    if n != len(db):
        return False
    for p in itertools.permutations(range(n)):
        if all(p[da[x]] == db[p[x]] and p[ca[x]] == cb[p[x]] for x in range(n)) and all(
            (ta[x][y] is None and tb[p[x]][p[y]] is None)
            or (ta[x][y] is not None and tb[p[x]][p[y]] == p[ta[x][y]])
            for x in range(n) for y in range(n)
        ):
            return True
    return False


def categories_of_size(n):
    """All categories with exactly n morphisms up to isomorphism, by full
    search over object counts, endpoint assignments and composition tables."""
    found = []
    for k in range(1, n + 1):
        arrows = range(k, n)
        for ends in itertools.product(itertools.product(range(k), repeat=2), repeat=n - k):
            dom = list(range(k)) + [d for d, _ in ends]
            cod = list(range(k)) + [c for _, c in ends]
            pairs = [(x, y) for x in arrows for y in arrows if dom[x] == cod[y]]
            options = [[r for r in range(n) if dom[r] == dom[y] and cod[r] == cod[x]] for x, y in pairs]
            for choice in itertools.product(*options):
                comp = [[None] * n for _ in range(n)]
                for x in range(n):
                    comp[x][dom[x]] = x
                    comp[cod[x]][x] = x
                for (x, y), r in zip(pairs, choice):
                    comp[x][y] = r
                if not is_category(dom, cod, comp, range(k)):
                    continue
                cand = (dom, cod, comp)
                if not any(isomorphic(cand, f) for f in found):
                    found.append(cand)
    return found


def as_table(c):
    return (c.dom.tolist(), c.cod.tolist(),
            [[None if v < 0 else int(v) for v in row] for row in c.comp.tolist()])


def set_product(c, a, b):
    return frozenset(c.compose(x, y) for x in a for y in b if c.compose(x, y) is not None)


def set_star(c, a):
    return frozenset(int(c.dom[x]) for x in a)


def set_plus(c, a):
    return frozenset(int(c.cod[x]) for x in a)


def partial_injections(k):
    """Count partial injections of a k-set by listing all relations."""
    cells = [(i, j) for i in range(k) for j in range(k)]
    count = 0
    for mask in range(1 << len(cells)):
        chosen = [cells[t] for t in range(len(cells)) if mask >> t & 1]
        if len({i for i, _ in chosen}) == len(chosen) == len({j for _, j in chosen}):
            count += 1
    return count


def subsets(n):
    for mask in range(1 << n):
        yield frozenset(i for i in range(n) if mask >> i & 1)
