"""Named check suites over enumerated instances and shipped fixtures.

Each suite returns a ``Report``: an ordered list of per-check results plus
counts. The text and JSON renderings put everything time-dependent on the
header line, so the rest of a report is reproducible byte for byte.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib import resources

from . import __version__
from .biaction import (
    biaction_from_ehresmann,
    check_biaction,
    expansion_check,
    semigroup_from_biaction,
)
from .boolean import (
    bottom_is_zero,
    check_boolean,
    order_lemmas,
    phi_isomorphism,
    pi_product_closed,
    reconstruct_category,
)
from .category import check_functor, find_isomorphism, is_cancellative, is_groupoid, pair_groupoid
from .ehresmann import (
    EhresmannSemigroup,
    basic_lemmas,
    check_ehresmann,
    is_restriction,
    restricted_product_category,
    same_tables,
    semilattice,
)
from .enumerate import boolean_monoid_candidates, enumerate_categories, enumerate_semilattices
from .errors import InternalConsistencyError, LawViolation, Verdict
from .formats import load, resolve
from .powerset import build_powerset_monoid, classify_subset, definitional_classification
from .restriction import (
    check_inverse,
    embed_alpha,
    groupoid_from_inverse,
    local_bisections,
    nice_embedding_from_groupoid,
    restriction_lemmas,
    restriction_subalgebras,
    subsemigroup,
)

SUITES = ("axioms", "lemmas", "theorem-two", "theorem-three", "theorem-four", "roundtrip", "census")

NICE_FIXTURES = (
    ("pi-pair2.sg", "pi-pair2-groupoid.map"),
    ("pi-one-arrow.sg", "pi-one-arrow-pair4.map"),
    ("chain3.sg", "chain3-groupoid.map"),
)


def fixture_path(name: str) -> str:
    return str(resources.files("ehresmann_lab") / "fixtures" / name)


@dataclass
class Check:
    name: str
    instance: str
    verdict: Verdict

    @property
    def ok(self) -> bool:
        return self.verdict.ok


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)
    instances: int = 0
    volume: int = 0
    notes: list = field(default_factory=list)
    started: str = ""
    wall: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def add(self, name: str, instance: str, verdict: Verdict) -> None:
        self.checks.append(Check(name, instance, verdict))

    def guard(self, name: str, instance: str, fn) -> object:
        """Run ``fn``; a raised law violation becomes a failed check."""
        try:
            out = fn()
        except (LawViolation, InternalConsistencyError) as exc:
            law = getattr(exc, "law", None) or getattr(exc, "step", "error")
            self.add(name, instance, Verdict.failed(law, exc.witness, getattr(exc, "message", "")))
            return None
        self.add(name, instance, Verdict.passed(name))
        return out

    def to_text(self, witness_limit: int | None = None) -> str:
        lines = [f"# suite {self.suite} version {__version__} started {self.started} wall {self.wall:.3f}s"]
        shown = 0
        for c in self.checks:
            status = "PASS" if c.ok else "FAIL"
            line = f"{status} {c.name} [{c.instance}]"
            if not c.ok:
                if witness_limit is None or shown < witness_limit:
                    line += f" law={c.verdict.law} witness={c.verdict.witness}"
                    shown += 1
                else:
                    line += " (witness suppressed)"
            lines.append(line)
        lines += [f"NOTE {n}" for n in self.notes]
        lines.append(
            f"SUMMARY {self.suite} checks={len(self.checks)} pass={len(self.checks) - len(self.failures)} "
            f"fail={len(self.failures)} instances={self.instances} volume={self.volume}"
        )
        return "\n".join(lines) + "\n"

    def to_json(self, witness_limit: int | None = None) -> str:
        header = json.dumps({"suite": self.suite, "started": self.started, "wall_seconds": round(self.wall, 3)})
        checks = []
        shown = 0
        for c in self.checks:
            entry = {"name": c.name, "instance": c.instance, "ok": c.ok}
            if not c.ok and (witness_limit is None or shown < witness_limit):
                entry.update(c.verdict.as_dict())
                shown += 1
            checks.append(entry)
        body = {
            "version": __version__,
            "checks": checks,
            "notes": self.notes,
            "summary": {
                "checks": len(self.checks),
                "fail": len(self.failures),
                "instances": self.instances,
                "volume": self.volume,
            },
        }
        return header + "\n" + json.dumps(body, indent=1, sort_keys=True) + "\n"


def _label(c) -> str:
    return f"C{c.size}:" + ",".join(
        f"{int(c.dom[x])}>{int(c.cod[x])}" for x in range(c.size) if x not in c.identities
    ) + ":" + "".join(str(int(v)) for v in c.comp.flatten() if v >= 0)


def _cube(n: int) -> int:
    return n * n * n


def _semilattice_corpus(max_elements: int = 4) -> list:
    out = []
    for t in enumerate_semilattices(max_elements):
        out.append((f"semilattice{len(t)}:" + "".join(str(v) for row in t for v in row), semilattice(t)))
    return out


def suite_axioms(report: Report, max_morphisms: int = 4, fixtures: tuple = ()) -> None:
    for c in enumerate_categories(max_morphisms):
        label = _label(c)
        m = build_powerset_monoid(c)
        report.instances += 1
        report.volume += _cube(m.size)
        report.guard("P(C) Ehresmann and Boolean axioms", label, lambda: check_boolean(m))
        report.add("P(C) partial isometries closed under product", label, pi_product_closed(m))
        pi = local_bisections(c)
        report.guard("PI(C) Ehresmann axioms", label, lambda: check_ehresmann(pi.semigroup))
        report.add("PI(C) restriction", label, is_restriction(pi.semigroup))
    for path in fixtures:
        report.instances += 1
        check_file(report, path)


def check_file(report: Report, path: str) -> None:
    """Run the checker matching the file kind and record one check."""
    from .category import validate_category

    inst = load(path)
    kind = inst.kind
    if kind == "CATEGORY":
        report.guard("category axioms", path, lambda: validate_category(inst.body))
    elif kind == "SEMIGROUP":
        report.guard("Ehresmann axioms", path, lambda: check_ehresmann(inst.body))
        if inst.inverse is not None:
            report.guard("inverse semigroup laws", path, lambda: check_inverse(inst.body, inst.inverse))
    elif kind == "BOOLEAN":
        report.guard("Boolean Ehresmann axioms", path, lambda: check_boolean(inst.body))
    elif kind == "BIACTION":
        report.guard("biaction axioms", path, lambda: check_biaction(inst.body))
    else:
        report.add("map", path, check_map(inst))


def _body_size(body) -> int:
    return body.semigroup.size if hasattr(body, "semigroup") else body.size


def check_map(inst) -> Verdict:
    """Check a MAP file against its source and target: a functor between
    categories (a semigroup stands for its restricted-product category), or
    an Ehresmann morphism between semigroups."""
    from .category import FiniteCategory
    from .ehresmann import check_morphism, restricted_product_category

    source = load(resolve(inst, inst.body.source)).body
    target = load(resolve(inst, inst.body.target)).body
    try:
        images = inst.body.as_list(_body_size(source))
    except ValueError as exc:
        return Verdict.failed("map arity", (), str(exc))
    source = getattr(source, "semigroup", source)
    target = getattr(target, "semigroup", target)
    if isinstance(target, FiniteCategory):
        if isinstance(source, EhresmannSemigroup):
            source = restricted_product_category(source)
        return check_functor(source, target, images)
    if isinstance(source, EhresmannSemigroup):
        try:
            return check_morphism(source, target, images)
        except ValueError as exc:
            return Verdict.failed("map arity", (), str(exc))
    return Verdict.failed("map kinds", (), "a category can only map to a category")


def suite_lemmas(report: Report, max_morphisms: int = 4, oracle_max: int | None = None) -> None:
    oracle_max = max_morphisms if oracle_max is None else oracle_max
    for c in enumerate_categories(max(max_morphisms, oracle_max)):
        label = _label(c)
        m = build_powerset_monoid(c)
        report.instances += 1
        report.volume += _cube(m.size)
        if c.size <= oracle_max:
            report.add("classifier agrees with definitions", label, classifier_oracle(c, m))
        if c.size > max_morphisms:
            continue
        for v in basic_lemmas(m.semigroup) + order_lemmas(m):
            report.add(f"P(C) {v.law}", label, v)
        report.add("P(C) bottom is a zero", label, bottom_is_zero(m))
        g = is_groupoid(c)
        if g:
            report.add("groupoid is cancellative", label, is_cancellative(c))
        pi = local_bisections(c).semigroup
        for v in restriction_lemmas(pi):
            report.add(f"PI(C) {v.law}", label, v)


def classifier_oracle(c, m) -> Verdict:
    """Compare domain/codomain classification with quantification in P(C)."""
    for a in range(m.size):
        fast = classify_subset(c, a)
        slow = definitional_classification(m, a)
        for key in ("deterministic", "codeterministic", "partial_isometry"):
            if fast[key] != slow[key]:
                return Verdict.failed(f"classifier {key}", (a,), f"lemma {fast[key]} definition {slow[key]}")
    return Verdict.passed("classifier oracle", subsets=m.size)


def suite_theorem_two(report: Report, max_morphisms: int = 4) -> None:
    for c in enumerate_categories(max_morphisms):
        label = _label(c)
        m = build_powerset_monoid(c)
        report.instances += 1
        report.volume += _cube(m.size)
        rec = report.guard("reconstruct category from atoms", label, lambda: reconstruct_category(m))
        if rec is None:
            continue
        iso = find_isomorphism(rec, c)
        report.add("atoms category isomorphic to C", label,
                   Verdict.passed("isomorphic", data=iso) if iso else Verdict.failed("isomorphic", (c.size,)))
        result = phi_isomorphism(m)
        for v in result.checks:
            report.add(f"phi {v.law}", label, v)


def restriction_corpus(max_morphisms: int = 4, semilattice_max: int = 4, subalgebras: bool = True) -> list:
    out = list(_semilattice_corpus(semilattice_max))
    seen = set()
    for c in enumerate_categories(max_morphisms):
        pi = local_bisections(c).semigroup
        label = "PI(" + _label(c) + ")"
        out.append((label, pi))
        if not subalgebras:
            continue
        for elems in restriction_subalgebras(pi):
            if len(elems) == pi.size:
                continue
            sub = subsemigroup(pi, elems)
            key = (sub.mult.tobytes(), sub.star.tobytes(), sub.plus.tobytes(), tuple(sub.U))
            if key in seen:
                continue
            seen.add(key)
            out.append((f"{label}|{','.join(map(str, elems))}", sub))
    return out


def suite_theorem_three(report: Report, max_morphisms: int = 4, subalgebras: bool = True) -> None:
    for label, s in restriction_corpus(max_morphisms, subalgebras=subalgebras):
        report.instances += 1
        report.volume += _cube(s.size)
        if not is_restriction(s):
            report.add("corpus member is restriction", label, is_restriction(s))
            continue
        result = embed_alpha(s)
        for v in result.checks:
            report.add(f"alpha {v.law}", label, v)


def partial_injection_count(k: int) -> int:
    """Partial bijections of a k-set: sum over j of C(k, j)^2 j!."""
    return sum(math.comb(k, j) ** 2 * math.factorial(j) for j in range(k + 1))


def suite_theorem_four(report: Report) -> None:
    for k in (2, 3):
        g = pair_groupoid(k)
        pi = local_bisections(g)
        label = f"pair{k}"
        report.instances += 1
        report.volume += _cube(pi.semigroup.size)
        view = report.guard("PI(G) inverse semigroup", label,
                            lambda: check_inverse(pi.semigroup, pi.inverse_view().inv))
        expected = partial_injection_count(k)
        size = pi.semigroup.size
        report.add("PI(G) size matches partial injection count", label,
                   Verdict.passed("count") if size == expected else Verdict.failed("count", (size, expected)))
        if view is not None:
            report.guard("restricted product on PI(G) is a groupoid", label, lambda: groupoid_from_inverse(view))
    for sg_name, map_name in NICE_FIXTURES:
        report.instances += 1
        s = load(fixture_path(sg_name)).body
        map_inst = load(fixture_path(map_name))
        g = load(resolve(map_inst, map_inst.body.target)).body
        iota = map_inst.body.as_list(s.size)
        label = f"{sg_name} -> {map_name}"
        result = None
        try:
            result = nice_embedding_from_groupoid(s, g, iota)
        except (LawViolation, InternalConsistencyError) as exc:
            law = getattr(exc, "law", None) or exc.step
            report.add("nice embedding", label, Verdict.failed(law, exc.witness, getattr(exc, "message", "")))
            continue
        report.volume += _cube(result.target.semigroup.size)
        for v in result.checks:
            report.add(f"nice embedding {v.law}", label, v)
        # converse direction: the image category sits inside the groupoid of PI(G)
        view = result.target.inverse_view()
        groupoid = groupoid_from_inverse(view)
        functor = check_functor(restricted_product_category(s), groupoid, result.theta)
        ok = functor.ok and functor.extra.get("injective", False)
        report.add("restricted product of S embeds in groupoid of T", label,
                   functor if ok else Verdict.failed("injective functor", functor.witness or ()))


def roundtrip_corpus(max_morphisms: int = 4, semilattice_max: int = 4) -> list:
    out = []
    for c in enumerate_categories(max_morphisms):
        out.append(("P(" + _label(c) + ")", build_powerset_monoid(c).semigroup))
    out += _semilattice_corpus(semilattice_max)
    return out


def suite_roundtrip(report: Report, max_morphisms: int = 4) -> None:
    for label, s in roundtrip_corpus(max_morphisms):
        report.instances += 1
        report.volume += _cube(s.size)
        b = report.guard("biaction axioms", label, lambda: check_biaction(biaction_from_ehresmann(s)))
        if b is None:
            continue
        back = report.guard("pseudoproduct semigroup", label, lambda: semigroup_from_biaction(b))
        if back is None:
            continue
        report.add("round trip reproduces tables", label,
                   Verdict.passed("round trip") if same_tables(s, back) else Verdict.failed("round trip", ()))
        report.add("pseudoproduct associativity via expansion", label, expansion_check(b))


def suite_census(report: Report, max_morphisms: int = 4, atoms: int = 2) -> None:
    by_size = {}
    for c in enumerate_categories(max_morphisms):
        report.instances += 1
        row = by_size.setdefault(c.size, {"categories": 0, "groupoids": 0, "cancellative": 0,
                                          "pi_elements": 0, "restriction_pi": 0})
        row["categories"] += 1
        row["groupoids"] += bool(is_groupoid(c))
        row["cancellative"] += bool(is_cancellative(c))
        pi = local_bisections(c).semigroup
        report.volume += _cube(c.size) + _cube(pi.size)
        row["pi_elements"] += pi.size
        row["restriction_pi"] += bool(is_restriction(pi))
    for size in sorted(by_size):
        row = by_size[size]
        report.notes.append(f"size {size}: " + " ".join(f"{k}={v}" for k, v in row.items()))
    for k in range(atoms + 1):
        found = list(boolean_monoid_candidates(k))
        zero = [m for m in found if bottom_is_zero(m)]
        closed = [m for m in zero if pi_product_closed(m)]
        report.notes.append(
            f"boolean monoids on {k} atoms (labeled): total={len(found)} bottom_is_zero={len(zero)} "
            f"pi_closed={len(closed)} pi_not_closed={len(zero) - len(closed)} "
            f"bottom_not_zero={len(found) - len(zero)}"
        )
        for i, m in enumerate(closed):
            result = phi_isomorphism(m)
            report.add("reconstruction of a searched monoid", f"atoms{k}#{i}", result.verdict)
        report.instances += len(found)
        report.volume += sum(_cube(m.size) for m in found)
    report.add("census completed", "all", Verdict.passed("census"))


def run_suite(name: str, max_morphisms: int | None = None, fixtures: tuple = (),
              oracle_max: int | None = None) -> Report:
    if name not in SUITES:
        raise ValueError(f"unknown suite '{name}'; choose from {', '.join(SUITES)}")
    report = Report(name)
    report.started = datetime.now(timezone.utc).isoformat(timespec="seconds")
    t0 = time.perf_counter()
    kw = {} if max_morphisms is None else {"max_morphisms": max_morphisms}
    if name == "axioms":
        suite_axioms(report, fixtures=tuple(fixtures), **kw)
    elif name == "lemmas":
        suite_lemmas(report, oracle_max=oracle_max, **kw)
    elif name == "theorem-two":
        suite_theorem_two(report, **kw)
    elif name == "theorem-three":
        suite_theorem_three(report, **kw)
    elif name == "theorem-four":
        suite_theorem_four(report)
    elif name == "roundtrip":
        suite_roundtrip(report, **kw)
    else:
        suite_census(report, **kw)
    report.wall = time.perf_counter() - t0
    return report
