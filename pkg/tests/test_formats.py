import os

import pytest
from hypothesis import given, settings, strategies as st

from ehresmann_lab.category import find_isomorphism, validate_category
from ehresmann_lab.ehresmann import same_tables, semilattice
from ehresmann_lab.enumerate import enumerate_categories, enumerate_semilattices
from ehresmann_lab.errors import ParseError
from ehresmann_lab.formats import (
    InstanceFile,
    MapSpec,
    parse_instance,
    serialize_instance,
    strip_comments,
)

from conftest import FIXTURES, fixture

ALL_FIXTURES = sorted(os.listdir(FIXTURES))
CATS = list(enumerate_categories(4))

TWO_ARROWS = """\
# two parallel arrows
CATEGORY v1
objects 2
e f
arrows 2
a f e   # a: f -> e
b f e
compose
"""


def text_of(name):
    with open(os.path.join(FIXTURES, name), encoding="utf-8") as fh:
        return fh.read()


def test_two_arrows_file():
    inst = parse_instance(TWO_ARROWS)
    c = validate_category(inst.body)
    assert inst.kind == "CATEGORY" and c.size == 4
    assert c.names == ("id_e", "id_f", "a", "b")


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_golden_round_trip(name):
    text = text_of(name)
    out = serialize_instance(parse_instance(text))
    assert strip_comments(out) == strip_comments(text)
    assert serialize_instance(parse_instance(out)) == out


@pytest.mark.parametrize("text,message", [
    ("CATEGORY v1\n", "objects section required"),
    ("GRAPH v1\nobjects 1 o\n", "unknown kind"),
    ("CATEGORY v2\nobjects 1 o\n", "unsupported version"),
    ("CATEGORY v1\nobjects 2 o\n", "bad arity"),
    ("CATEGORY v1\nobjects 1 o\narrows 1\na o p\n", "dangling object"),
    ("CATEGORY v1\nobjects 1 o\narrows 1\na o o\ncompose\na a b\n", "dangling morphism"),
    ("CATEGORY v1\nobjects 1 o\nobjects 1 p\n", "duplicate section"),
    ("CATEGORY v1\nobjects 1 o\narrows 1\na o o\ncompose\na a a\na a id_o\n", "duplicate composite"),
    ("CATEGORY v1\nobjects 1 o\narrows 1\na o o\ncompose\nid_o a a\n", "implicit"),
    ("SEMIGROUP v1\nelements 1 x\ntable 0\nprojections 0\nstar 1\nplus 0\n", "dangling"),
    ("SEMIGROUP v1\nelements 1 x\ntable 0 0\nprojections 0\nstar 0\nplus 0\n", "bad arity"),
    ("BOOLEAN v1\nelements 1 x\ntable 0\nprojections 0\nstar 0\nplus 0\n", "order section required"),
    ("MAP v1\nsource a.sg\ntarget b.sg\npairs 2\n0 0\n", "bad arity"),
    ("", "missing header"),
])
def test_parse_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_instance(text)


def test_error_position():
    text = "CATEGORY v1\nobjects 1 o\narrows 1\na o q\n"
    with pytest.raises(ParseError) as exc:
        parse_instance(text)
    assert (exc.value.line, exc.value.column) == (4, 5)


def test_inverse_section():
    inst = fixture("pi-pair2.sg")
    assert inst.inverse is not None and len(inst.inverse) == inst.body.size


def test_map_spec():
    spec = MapSpec("a", "b", ((1, 0), (0, 2)))
    assert spec.as_list(2) == [2, 0]
    with pytest.raises(ValueError):
        spec.as_list(3)
    with pytest.raises(ValueError):
        MapSpec("a", "b", ((0, 0), (0, 1))).as_list(1)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CATS))
def test_category_round_trip(c):
    out = serialize_instance(InstanceFile("CATEGORY", c))
    back = parse_instance(out).body
    assert back.comp.tolist() == c.comp.tolist()
    assert back.names == c.names
    assert find_isomorphism(back, c) is not None


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(list(enumerate_semilattices(4))))
def test_semigroup_round_trip(t):
    s = semilattice(t)
    back = parse_instance(serialize_instance(InstanceFile("SEMIGROUP", s))).body
    assert same_tables(back, s)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ALL_FIXTURES), st.data())
def test_comments_and_spacing_do_not_matter(name, data):
    text = text_of(name)
    lines = text.splitlines()
    noisy = []
    for line in lines:
        pad = data.draw(st.sampled_from(["", " ", "\t", "  "]))
        note = data.draw(st.sampled_from(["", " # note", "#"]))
        noisy.append(pad + line.replace(" ", pad + " ") + note)
        if data.draw(st.booleans()):
            noisy.append("# " + data.draw(st.text(alphabet="abc xyz", max_size=8)))
    assert serialize_instance(parse_instance("\n".join(noisy))) == serialize_instance(parse_instance(text))
