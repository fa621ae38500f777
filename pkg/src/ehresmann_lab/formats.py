"""Line-oriented instance files.

Every file starts with ``<KIND> v1``. ``#`` starts a comment. The body is a
sequence of sections, each introduced by a keyword; tokens are separated by
whitespace, so line breaks inside a section are cosmetic. ``serialize_instance``
writes the canonical layout.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .biaction import EhresmannBiaction
from .boolean import BooleanEhresmannMonoid
from .category import UNDEF, FiniteCategory
from .ehresmann import EhresmannSemigroup
from .errors import ParseError

VERSION = "v1"
KINDS = ("CATEGORY", "SEMIGROUP", "BOOLEAN", "BIACTION", "MAP")
CATEGORY_KEYS = ("objects", "arrows", "compose")
SEMIGROUP_KEYS = ("elements", "table", "projections", "star", "plus", "one", "inverse")
KEYWORDS = {
    "CATEGORY": CATEGORY_KEYS,
    "SEMIGROUP": SEMIGROUP_KEYS,
    "BOOLEAN": SEMIGROUP_KEYS + ("order",),
    "BIACTION": CATEGORY_KEYS + ("meet", "lact", "ract"),
    "MAP": ("source", "target", "pairs"),
}


@dataclass
class MapSpec:
    source: str
    target: str
    pairs: tuple

    def as_list(self, n: int) -> list:
        out = [None] * n
        for i, j in self.pairs:
            if not 0 <= i < n:
                raise ValueError(f"map source index {i} outside 0..{n - 1}")
            if out[i] is not None:
                raise ValueError(f"map assigns index {i} twice")
            out[i] = j
        missing = [i for i, v in enumerate(out) if v is None]
        if missing:
            raise ValueError(f"map leaves index {missing[0]} unassigned")
        return out


@dataclass
class InstanceFile:
    kind: str
    body: Any
    version: str = VERSION
    inverse: tuple | None = None
    path: str | None = field(default=None, compare=False)


class _Tok:
    __slots__ = ("text", "line", "col")

    def __init__(self, text, line, col):
        self.text, self.line, self.col = text, line, col


def _tokenize(text: str) -> list:
    toks = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        col = 0
        for part in line.split():
            col = line.index(part, col)
            toks.append(_Tok(part, lineno, col + 1))
            col += len(part)
    return toks


def strip_comments(text: str) -> str:
    """Comment-free text with whitespace collapsed, for round-trip comparisons."""
    return " ".join(t.text for t in _tokenize(text))


def _err(msg: str, tok: _Tok | None) -> ParseError:
    return ParseError(msg, tok.line, tok.col) if tok else ParseError(msg)


def _sections(toks: list, kind: str) -> dict:
    keys = KEYWORDS[kind]
    out = {}
    current = None
    for tok in toks:
        if tok.text in keys:
            if tok.text in out:
                raise _err(f"duplicate section '{tok.text}'", tok)
            current = tok.text
            out[current] = [tok]
        elif current is None:
            raise _err(f"expected a section keyword, got '{tok.text}'", tok)
        else:
            out[current].append(tok)
    return out


def _int(tok: _Tok, limit: int | None = None, what: str = "index") -> int:
    try:
        v = int(tok.text)
    except ValueError:
        raise _err(f"expected an integer, got '{tok.text}'", tok) from None
    if v < 0:
        raise _err(f"negative {what}", tok)
    if limit is not None and v >= limit:
        raise _err(f"dangling {what} {v} (must be < {limit})", tok)
    return v


def _counted(sec: list, per_item: int = 1) -> tuple:
    head = sec[0]
    if len(sec) < 2:
        raise _err(f"'{head.text}' needs a count", head)
    count = _int(sec[1], what="count")
    items = sec[2:]
    if len(items) != count * per_item:
        raise _err(f"bad arity: '{head.text}' expects {count * per_item} tokens, found {len(items)}", head)
    return count, items


def _ints(sec: list, expected: int, limit: int) -> list:
    head = sec[0]
    body = sec[1:]
    if len(body) != expected:
        raise _err(f"bad arity: '{head.text}' expects {expected} entries, found {len(body)}", head)
    return [_int(t, limit) for t in body]


def _parse_category(secs: dict, anchor: _Tok) -> FiniteCategory:
    if "objects" not in secs:
        raise _err("objects section required", anchor)
    k, obj_toks = _counted(secs["objects"])
    if k == 0:
        raise _err("a category needs at least one object", secs["objects"][0])
    objects = [t.text for t in obj_toks]
    if len(set(objects)) != k:
        raise _err("duplicate object name", secs["objects"][0])
    obj_index = {o: i for i, o in enumerate(objects)}
    arrows = []
    if "arrows" in secs:
        m, arrow_toks = _counted(secs["arrows"], 3)
        for i in range(m):
            name, d, r = arrow_toks[3 * i: 3 * i + 3]
            for t in (d, r):
                if t.text not in obj_index:
                    raise _err(f"dangling object '{t.text}'", t)
            arrows.append((name.text, obj_index[d.text], obj_index[r.text]))
    names = [f"id_{o}" for o in objects] + [a[0] for a in arrows]
    if len(set(names)) != len(names):
        raise _err("duplicate morphism name", secs.get("arrows", secs["objects"])[0])
    index = {nm: i for i, nm in enumerate(names)}
    n = len(names)
    dom = list(range(k)) + [a[1] for a in arrows]
    cod = list(range(k)) + [a[2] for a in arrows]
    comp = np.full((n, n), UNDEF, dtype=np.int64)
    for x in range(n):
        comp[x, dom[x]] = x
        comp[cod[x], x] = x
    seen = set()
    if "compose" in secs:
        body = secs["compose"][1:]
        if len(body) % 3:
            raise _err("bad arity: compose lines need three names", secs["compose"][0])
        for i in range(0, len(body), 3):
            trip = body[i: i + 3]
            for t in trip:
                if t.text not in index:
                    raise _err(f"dangling morphism '{t.text}'", t)
            x, y, r = (index[t.text] for t in trip)
            if x < k or y < k:
                raise _err("composites with identities are implicit", trip[0])
            if (x, y) in seen:
                raise _err("duplicate composite", trip[0])
            seen.add((x, y))
            comp[x, y] = r
    return FiniteCategory(dom, cod, comp, range(k), tuple(names))


def _parse_semigroup(secs: dict, anchor: _Tok) -> tuple:
    if "elements" not in secs:
        raise _err("elements section required", anchor)
    n, name_toks = _counted(secs["elements"])
    for key in ("table", "projections", "star", "plus"):
        if key not in secs:
            raise _err(f"{key} section required", anchor)
    mult = np.array(_ints(secs["table"], n * n, n), dtype=np.int64).reshape((n, n))
    proj = [_int(t, n) for t in secs["projections"][1:]]
    star = _ints(secs["star"], n, n)
    plus = _ints(secs["plus"], n, n)
    one = None
    if "one" in secs:
        one = _ints(secs["one"], 1, n)[0]
    inverse = tuple(_ints(secs["inverse"], n, n)) if "inverse" in secs else None
    s = EhresmannSemigroup(mult, proj, star, plus, one, tuple(t.text for t in name_toks))
    return s, inverse


def _parse_map(secs: dict, anchor: _Tok) -> MapSpec:
    for key in ("source", "target", "pairs"):
        if key not in secs:
            raise _err(f"{key} section required", anchor)
    refs = []
    for key in ("source", "target"):
        sec = secs[key]
        if len(sec) != 2:
            raise _err(f"bad arity: '{key}' takes one file reference", sec[0])
        refs.append(sec[1].text)
    count, toks = _counted(secs["pairs"], 2)
    pairs = tuple((_int(toks[2 * i]), _int(toks[2 * i + 1])) for i in range(count))
    return MapSpec(refs[0], refs[1], pairs)


def parse_instance(text: str, path: str | None = None) -> InstanceFile:
    toks = _tokenize(text)
    if len(toks) < 2:
        raise ParseError("missing header", 1, 1)
    kind_tok, ver_tok = toks[0], toks[1]
    if kind_tok.text not in KINDS:
        raise _err(f"unknown kind '{kind_tok.text}'", kind_tok)
    if ver_tok.text != VERSION:
        raise _err(f"unsupported version '{ver_tok.text}'", ver_tok)
    kind = kind_tok.text
    secs = _sections(toks[2:], kind)
    if kind == "CATEGORY":
        return InstanceFile(kind, _parse_category(secs, kind_tok), path=path)
    if kind == "BIACTION":
        c = _parse_category(secs, kind_tok)
        k, n = len(c.identities), c.size
        for key in ("meet", "lact", "ract"):
            if key not in secs:
                raise _err(f"{key} section required", kind_tok)
        meet = np.array(_ints(secs["meet"], k * k, n)).reshape((k, k))
        lact = np.array(_ints(secs["lact"], k * n, n)).reshape((k, n))
        ract = np.array(_ints(secs["ract"], n * k, n)).reshape((n, k))
        return InstanceFile(kind, EhresmannBiaction(c, meet, lact, ract), path=path)
    if kind == "MAP":
        return InstanceFile(kind, _parse_map(secs, kind_tok), path=path)
    s, inverse = _parse_semigroup(secs, kind_tok)
    if kind == "SEMIGROUP":
        if "order" in secs:
            raise _err("order section belongs to BOOLEAN files", secs["order"][0])
        return InstanceFile(kind, s, inverse=inverse, path=path)
    if "order" not in secs:
        raise _err("order section required", kind_tok)
    bits = []
    for t in secs["order"][1:]:
        if t.text not in ("0", "1"):
            raise _err(f"order entries are 0 or 1, got '{t.text}'", t)
        bits.append(t.text == "1")
    n = s.size
    if len(bits) != n * n:
        raise _err(f"bad arity: 'order' expects {n * n} entries, found {len(bits)}", secs["order"][0])
    m = BooleanEhresmannMonoid(s, np.array(bits).reshape((n, n)))
    return InstanceFile(kind, m, inverse=inverse, path=path)


def load(path: str) -> InstanceFile:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read(), path)


def resolve(map_file: InstanceFile, ref: str) -> str:
    if os.path.isabs(ref) or map_file.path is None:
        return ref
    return os.path.join(os.path.dirname(map_file.path), ref)


# -- serialization ---------------------------------------------------------


def identity_first(c: FiniteCategory) -> list:
    """Old indices in canonical file order: identities, then other morphisms."""
    return list(c.objects) + [x for x in range(c.size) if x not in c.identities]


def relabel_category(c: FiniteCategory, order: list) -> FiniteCategory:
    new = {old: i for i, old in enumerate(order)}
    dom = [new[int(c.dom[o])] for o in order]
    cod = [new[int(c.cod[o])] for o in order]
    comp = np.full((c.size, c.size), UNDEF, dtype=np.int64)
    for i, x in enumerate(order):
        for j, y in enumerate(order):
            r = c.compose(x, y)
            if r is not None:
                comp[i, j] = new[r]
    return FiniteCategory(dom, cod, comp, [new[e] for e in c.identities], tuple(c.names[o] for o in order))


def _object_name(name: str) -> str:
    return name[3:] if name.startswith("id_") else name


def _category_lines(c: FiniteCategory) -> list:
    if identity_first(c) != list(range(c.size)):
        c = relabel_category(c, identity_first(c))
    k = len(c.identities)
    objects = [_object_name(c.names[i]) for i in range(k)]
    lines = [f"objects {k}", " ".join(objects), f"arrows {c.size - k}"]
    for x in range(k, c.size):
        lines.append(f"{c.names[x]} {objects[int(c.dom[x])]} {objects[int(c.cod[x])]}")
    lines.append("compose")
    # identities are always spelled id_<object> once parsed back
    names = [f"id_{o}" for o in objects] + list(c.names[k:])
    for x in range(k, c.size):
        for y in range(k, c.size):
            r = c.compose(x, y)
            if r is not None:
                lines.append(f"{names[x]} {names[y]} {names[r]}")
    return lines


def _row(values) -> str:
    return " ".join(str(int(v)) for v in values)


def _semigroup_lines(s: EhresmannSemigroup, inverse=None) -> list:
    lines = [f"elements {s.size}", " ".join(s.names), "table"]
    lines += [_row(r) for r in s.mult]
    lines += ["projections", _row(s.U), "star", _row(s.star), "plus", _row(s.plus)]
    if s.identity is not None:
        lines.append(f"one {s.identity}")
    if inverse is not None:
        lines += ["inverse", _row(inverse)]
    return lines


def serialize_instance(inst: InstanceFile) -> str:
    body = inst.body
    lines = [f"{inst.kind} {inst.version}"]
    if inst.kind == "CATEGORY":
        lines += _category_lines(body)
    elif inst.kind == "SEMIGROUP":
        lines += _semigroup_lines(body, inst.inverse)
    elif inst.kind == "BOOLEAN":
        lines += _semigroup_lines(body.semigroup, inst.inverse)
        lines.append("order")
        lines += [" ".join("1" if v else "0" for v in r) for r in body.order]
    elif inst.kind == "BIACTION":
        c = body.category
        if identity_first(c) != list(range(c.size)):
            raise ValueError("biaction files need identities first; relabel the biaction")
        lines += _category_lines(c)
        lines.append("meet")
        lines += [_row(r) for r in body.meet]
        lines.append("lact")
        lines += [_row(r) for r in body.lact]
        lines.append("ract")
        lines += [_row(r) for r in body.ract]
    elif inst.kind == "MAP":
        lines += [f"source {body.source}", f"target {body.target}", f"pairs {len(body.pairs)}"]
        lines += [f"{i} {j}" for i, j in body.pairs]
    else:
        raise ValueError(f"unknown kind {inst.kind}")
    return "\n".join(lines) + "\n"


def relabel_biaction(b: EhresmannBiaction) -> tuple:
    """Biaction with identities first, plus the old-index order used."""
    c = b.category
    order = identity_first(c)
    new = {old: i for i, old in enumerate(order)}
    c2 = relabel_category(c, order)
    objs = list(c.objects)  # positions are unchanged: objects stay sorted
    meet = [[new[int(b.meet[i, j])] for j in range(len(objs))] for i in range(len(objs))]
    lact = [[new[int(b.lact[i, o])] for o in order] for i in range(len(objs))]
    ract = [[new[int(b.ract[o, i])] for i in range(len(objs))] for o in order]
    return EhresmannBiaction(c2, meet, lact, ract), order
