import json

import pytest

from ehresmann_lab.suites import SUITES, fixture_path, partial_injection_count, run_suite

import oracles


def body(text):
    # everything but the header line is reproducible
    return text.split("\n", 1)[1]


@pytest.mark.parametrize("name", SUITES)
def test_suites_pass_at_small_scale(name):
    r = run_suite(name, max_morphisms=3)
    assert r.ok, [c for c in r.failures][:3]
    assert r.instances > 0
    assert r.to_text().splitlines()[-1].startswith(f"SUMMARY {name}")


def test_reports_are_deterministic():
    a = run_suite("roundtrip", max_morphisms=3)
    b = run_suite("roundtrip", max_morphisms=3)
    assert body(a.to_text()) == body(b.to_text())
    assert body(a.to_json()) == body(b.to_json())
    json.loads(body(a.to_json()))


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("everything")


def test_corrupted_fixture_fails_axioms():
    r = run_suite("axioms", max_morphisms=1, fixtures=(fixture_path("bad-es.sg"),))
    assert not r.ok
    (bad,) = r.failures
    assert bad.verdict.law == "ES4" and bad.verdict.witness


def test_witness_limit_in_report():
    r = run_suite("axioms", max_morphisms=1,
                  fixtures=(fixture_path("bad-es.sg"), fixture_path("bad-oe.bool")))
    text = r.to_text(witness_limit=1)
    assert text.count("witness=") == 1 and "witness suppressed" in text


def test_counts_reported():
    r = run_suite("lemmas", max_morphisms=2)
    summary = r.to_text().splitlines()[-1]
    assert f"instances={r.instances}" in summary and r.volume > 0


@pytest.mark.parametrize("k", range(1, 5))
def test_partial_injection_count(k):
    assert partial_injection_count(k) == oracles.partial_injections(k)
