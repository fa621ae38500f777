"""Finite Ehresmann semigroups given by Cayley tables."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .category import UNDEF, FiniteCategory, validate_category
from .errors import InternalConsistencyError, LawViolation, Verdict


@dataclass(frozen=True, eq=False)
class EhresmannSemigroup:
    """Cayley table ``mult`` with projection set and the two unary maps.

    ``star[a]`` is the right projection of ``a`` (``a a* = a``) and
    ``plus[a]`` the left one (``a+ a = a``). ``identity`` is only set when the
    structure is declared to be a monoid.
    """

    mult: np.ndarray
    projections: frozenset
    star: np.ndarray
    plus: np.ndarray
    identity: int | None = None
    names: tuple = ()

    def __post_init__(self):
        mult = np.array(self.mult, dtype=np.int64)
        n = mult.shape[0] if mult.ndim == 2 else len(self.star)
        if mult.size == 0:
            mult = mult.reshape((n, n))
        for attr, arr in (("mult", mult), ("star", np.array(self.star, dtype=np.int64)),
                          ("plus", np.array(self.plus, dtype=np.int64))):
            arr.flags.writeable = False
            object.__setattr__(self, attr, arr)
        object.__setattr__(self, "projections", frozenset(int(e) for e in self.projections))
        if self.identity is not None:
            object.__setattr__(self, "identity", int(self.identity))
        if not self.names:
            object.__setattr__(self, "names", tuple(f"s{i}" for i in range(len(self.star))))
        else:
            object.__setattr__(self, "names", tuple(self.names))

    @property
    def size(self) -> int:
        return len(self.star)

    @property
    def U(self) -> tuple:
        return tuple(sorted(self.projections))

    def __repr__(self):
        return f"EhresmannSemigroup({self.size} elements, {len(self.projections)} projections)"


def same_tables(s: EhresmannSemigroup, t: EhresmannSemigroup) -> bool:
    """Equality of mult, star, plus and projection set (identity ignored)."""
    return (
        s.mult.shape == t.mult.shape
        and np.array_equal(s.mult, t.mult)
        and np.array_equal(s.star, t.star)
        and np.array_equal(s.plus, t.plus)
        and s.projections == t.projections
    )


def semilattice(mult: Sequence[Sequence[int]], names: tuple = ()) -> EhresmannSemigroup:
    """A meet semilattice viewed as an Ehresmann semigroup with U = everything."""
    n = len(mult)
    ids = list(range(n))
    return EhresmannSemigroup(mult, ids, ids, ids, None, names)


def _first_true(mask: np.ndarray) -> tuple | None:
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def check_associative(mult: np.ndarray) -> tuple | None:
    """First triple ``(a, b, c)`` with ``(ab)c != a(bc)``, lexicographically."""
    n = mult.shape[0]
    for a in range(n):
        left = mult[mult[a]]  # left[b, c] = (ab)c
        right = mult[a][mult]  # right[b, c] = a(bc)
        w = _first_true(left != right)
        if w is not None:
            return (a,) + w
    return None


def check_ehresmann(s: EhresmannSemigroup) -> EhresmannSemigroup:
    """Return ``s`` if it satisfies associativity and (ES1)-(ES4), else raise."""
    n = s.size
    mult, star, plus = s.mult, s.star, s.plus
    if mult.shape != (n, n) or len(plus) != n:
        raise LawViolation("arity", (n,), f"table shape {mult.shape}")
    for label, arr in (("mult", mult), ("star", star), ("plus", plus)):
        bad = _first_true((arr < 0) | (arr >= n))
        if bad is not None:
            raise LawViolation("dangling index", bad, label)
    for e in s.U:
        if not 0 <= e < n:
            raise LawViolation("dangling index", (e,), "projection")
    w = check_associative(mult)
    if w is not None:
        raise LawViolation("associativity", w)
    U = s.U
    inU = np.zeros(n, dtype=bool)
    inU[list(U)] = True
    # (ES1)
    for e in U:
        if mult[e, e] != e:
            raise LawViolation("ES1", (e,), "projection not idempotent")
    for e in U:
        for f in U:
            if not inU[mult[e, f]]:
                raise LawViolation("ES1", (e, f), "U not closed")
            if mult[e, f] != mult[f, e]:
                raise LawViolation("ES1", (e, f), "U not commutative")
    # (ES2)
    for a in range(n):
        if not inU[star[a]]:
            raise LawViolation("ES2", (a,), "star leaves U")
        if not inU[plus[a]]:
            raise LawViolation("ES2", (a,), "plus leaves U")
    for e in U:
        if star[e] != e or plus[e] != e:
            raise LawViolation("ES2", (e,))
    # (ES3)
    idx = np.arange(n)
    w = _first_true(mult[idx, star] != idx)
    if w is not None:
        raise LawViolation("ES3", w, "a a* != a")
    w = _first_true(mult[plus, idx] != idx)
    if w is not None:
        raise LawViolation("ES3", w, "a+ a != a")
    # (ES4)
    w = _first_true(star[mult[star]] != star[mult])
    if w is not None:
        raise LawViolation("ES4", w, "(a* b)* != (ab)*")
    w = _first_true(plus[mult[:, plus]] != plus[mult])
    if w is not None:
        raise LawViolation("ES4", w, "(a b+)+ != (ab)+")
    if s.identity is not None:
        one = s.identity
        if not 0 <= one < n:
            raise LawViolation("dangling index", (one,), "identity")
        w = _first_true((mult[one] != idx) | (mult[:, one] != idx))
        if w is not None:
            raise LawViolation("identity", (one,) + w)
        if not inU[one]:
            raise LawViolation("identity", (one,), "identity is not a projection")
    return s


def order_le_r(s: EhresmannSemigroup, x: int, y: int) -> bool:
    return s.mult[s.plus[x], y] == x


def order_le_l(s: EhresmannSemigroup, x: int, y: int) -> bool:
    return s.mult[y, s.star[x]] == x


def order_le(s: EhresmannSemigroup, x: int, y: int) -> bool:
    return bool(order_le_r(s, x, y) and order_le_l(s, x, y))


def order_matrices(s: EhresmannSemigroup) -> tuple:
    """Boolean matrices ``(le_r, le_l, le)`` indexed ``[x, y]``."""
    n = s.size
    idx = np.arange(n)
    le_r = s.mult[s.plus][:, :] == idx[:, None]  # mult[plus[x], y] == x
    le_l = s.mult[:, s.star].T == idx[:, None]  # mult[y, star[x]] == x
    return le_r, le_l, le_r & le_l


def classify_element(s: EhresmannSemigroup, a: int) -> dict:
    mult, star, plus = s.mult, s.star, s.plus
    det = all(mult[e, a] == mult[a, star[mult[e, a]]] for e in s.U)
    codet = all(mult[a, e] == mult[plus[mult[a, e]], a] for e in s.U)
    return {"deterministic": bool(det), "codeterministic": bool(codet),
            "bideterministic": bool(det and codet)}


def is_restriction(s: EhresmannSemigroup) -> Verdict:
    for a in range(s.size):
        cls = classify_element(s, a)
        if not cls["bideterministic"]:
            law = "deterministic" if not cls["deterministic"] else "codeterministic"
            return Verdict.failed(law, (a,), "element is not bideterministic")
    return Verdict.passed("restriction")


def restricted_product_category(s: EhresmannSemigroup) -> FiniteCategory:
    """Elements of ``s`` under the product defined when ``a* == b+``."""
    defined = s.star[:, None] == s.plus[None, :]
    comp = np.where(defined, s.mult, UNDEF)
    c = FiniteCategory(s.star, s.plus, comp, s.projections, s.names)
    try:
        return validate_category(c)
    except LawViolation as exc:
        raise InternalConsistencyError("restricted product", exc.witness, str(exc)) from exc


def check_morphism(s: EhresmannSemigroup, t: EhresmannSemigroup, theta: Sequence[int]) -> Verdict:
    """Multiplicative and commuting with star and plus.

    ``extra`` also reports ``injective`` and ``maps_projections`` (image of U
    lies in the projections of ``t``).
    """
    theta = np.array(theta, dtype=np.int64)
    if theta.shape != (s.size,):
        raise ValueError(f"map has {theta.shape[0] if theta.ndim else 0} entries, source has {s.size}")
    bad = _first_true((theta < 0) | (theta >= t.size))
    if bad is not None:
        raise ValueError(f"map sends element {bad[0]} outside the target")
    injective = len(set(theta.tolist())) == s.size
    maps_u = all(int(theta[e]) in t.projections for e in s.U)
    extra = {"injective": injective, "maps_projections": maps_u}
    w = _first_true(theta[s.mult] != t.mult[theta[:, None], theta[None, :]])
    if w is not None:
        return Verdict.failed("multiplicative", w, **extra)
    w = _first_true(t.star[theta] != theta[s.star])
    if w is not None:
        return Verdict.failed("star", w, **extra)
    w = _first_true(t.plus[theta] != theta[s.plus])
    if w is not None:
        return Verdict.failed("plus", w, **extra)
    return Verdict.passed("morphism", **extra)


def find_zero(s: EhresmannSemigroup) -> int | None:
    for z in s.U:
        if all(s.mult[z, e] == z for e in s.U) and np.all(s.mult[z] == z) and np.all(s.mult[:, z] == z):
            return z
    return None


def basic_lemmas(s: EhresmannSemigroup) -> list:
    """Projection inequalities for products, zero detection, and order facts.

    Returns a list of verdicts; a zero-dependent check that does not apply is
    reported as passed with ``detail='not applicable'``.
    """
    out = []
    mult, star, plus = s.mult, s.star, s.plus
    ab_star = star[mult]  # [a, b]
    w = _first_true(mult[ab_star, star[None, :].repeat(s.size, 0)] != ab_star)
    out.append(Verdict.failed("(ab)* <= b*", w) if w else Verdict.passed("(ab)* <= b*"))
    ab_plus = plus[mult]
    w = _first_true(mult[ab_plus, plus[:, None].repeat(s.size, 1)] != ab_plus)
    out.append(Verdict.failed("(ab)+ <= a+", w) if w else Verdict.passed("(ab)+ <= a+"))
    z = find_zero(s)
    for label, arr in (("zero via star", star), ("zero via plus", plus)):
        if z is None:
            v = Verdict.passed(label)
            v.detail = "not applicable"
        else:
            bad = [a for a in range(s.size) if (arr[a] == z) != (a == z)]
            v = Verdict.failed(label, (bad[0],)) if bad else Verdict.passed(label)
        out.append(v)
    le_r, le_l, le = order_matrices(s)
    for label, m in (("<=_r partial order", le_r), ("<=_l partial order", le_l), ("<= partial order", le)):
        out.append(_partial_order(label, m))
    U = list(s.U)
    sub = np.ix_(U, U)
    agree = np.array_equal(le_r[sub], le_l[sub]) and np.array_equal(le_r[sub], le[sub])
    if agree:
        out.append(Verdict.passed("orders agree on U"))
    else:
        w = _first_true((le_r[sub] != le_l[sub]) | (le_r[sub] != le[sub]))
        out.append(Verdict.failed("orders agree on U", (U[w[0]], U[w[1]])))
    return out


def _partial_order(label: str, m: np.ndarray) -> Verdict:
    n = m.shape[0]
    w = _first_true(~np.diag(m))
    if w is not None:
        return Verdict.failed(label + " reflexive", w)
    w = _first_true(m & m.T & ~np.eye(n, dtype=bool))
    if w is not None:
        return Verdict.failed(label + " antisymmetric", w)
    # transitivity: m[x,y] & m[y,z] -> m[x,z]
    for y in range(n):
        w = _first_true(m[:, y][:, None] & m[y][None, :] & ~m)
        if w is not None:
            return Verdict.failed(label + " transitive", (w[0], y, w[1]))
    return Verdict.passed(label)
