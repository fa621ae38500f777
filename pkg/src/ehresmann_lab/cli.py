"""Command-line front end. Each subcommand wraps one library operation.

Exit status: 0 when the input is valid and every check passes, 1 when a check
fails, 2 when the input cannot be read or parsed.
"""

from __future__ import annotations

import argparse
import json
import sys

from .biaction import check_biaction, expansion_check, pseudoproduct_table
from .boolean import check_boolean, phi_isomorphism, reconstruct_category
from .enumerate import HARD_CAP, enumerate_categories
from .errors import CapExceeded, InternalConsistencyError, LawViolation, ParseError, Verdict
from .formats import InstanceFile, load, serialize_instance
from .powerset import Subset, build_powerset_monoid, classify_subset, default_cap
from .restriction import embed_alpha, nice_embedding_from_groupoid
from .suites import SUITES, Report, check_file, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str, *kinds: str) -> InstanceFile:
    inst = load(path)
    if kinds and inst.kind not in kinds:
        raise InputError(f"{path}: expected {' or '.join(kinds)}, got {inst.kind}")
    return inst


def _category(path: str):
    from .category import validate_category

    return validate_category(_load(path, "CATEGORY").body)


def _verdict_lines(checks: list, witness_limit) -> list:
    out, shown = [], 0
    for v in checks:
        line = f"{'PASS' if v.ok else 'FAIL'} {v.law}"
        if not v.ok:
            if witness_limit is None or shown < witness_limit:
                line += f" witness={v.witness}"
                if v.detail:
                    line += f" ({v.detail})"
                shown += 1
            else:
                line += " (witness suppressed)"
        out.append(line)
    return out


def _finish(args, checks: list, payload: dict | None = None, text: list = ()) -> int:
    ok = all(v.ok for v in checks)
    if args.json:
        doc = dict(payload or {})
        doc["ok"] = ok
        doc["checks"] = [v.as_dict() if not v.ok else {"ok": True, "law": v.law} for v in checks]
        print(json.dumps(doc, indent=1, sort_keys=True, default=int))
    else:
        for line in text:
            print(line)
        for line in _verdict_lines(checks, args.witness_limit):
            print(line)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_check(args) -> int:
    report = Report("check")
    check_file(report, args.file)
    return _finish(args, [c.verdict for c in report.checks], {"file": args.file, "kind": load(args.file).kind})


def cmd_powerset(args) -> int:
    c = _category(args.category)
    m = build_powerset_monoid(c, args.cap)
    text = serialize_instance(InstanceFile("BOOLEAN", m))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    lines = [f"elements {m.size}"]
    if not args.output and not args.json:
        lines = [text.rstrip("\n")]
    return _finish(args, [Verdict.passed("P(C) built")], {"elements": m.size, "output": args.output}, lines)


def cmd_classify(args) -> int:
    c = _category(args.category)
    if c.size > 24:
        raise CapExceeded(1 << c.size, 1 << 24)
    rows, lines = [], []
    for mask in range(1 << c.size):
        label = Subset(c, mask).label()
        flags = classify_subset(c, mask)
        rows.append({"subset": label, "mask": mask, **flags})
        lines.append(label + " " + " ".join(f"{k}={int(v)}" for k, v in flags.items()))
    return _finish(args, [Verdict.passed("classified")], {"subsets": rows}, lines)


def cmd_reconstruct(args) -> int:
    m = check_boolean(_load(args.boolean, "BOOLEAN").body)
    c = reconstruct_category(m)
    phi = phi_isomorphism(m, args.cap)
    payload = {"morphisms": c.size, "atoms": [int(a) for a in phi.atoms],
               "category": serialize_instance(InstanceFile("CATEGORY", c))}
    text = [payload["category"].rstrip("\n")]
    return _finish(args, phi.checks, payload, text)


def cmd_pseudoproduct(args) -> int:
    b = check_biaction(_load(args.biaction, "BIACTION").body)
    table = pseudoproduct_table(b)
    names = b.category.names
    text = ["pseudoproduct"] + [" ".join(str(int(v)) for v in row) for row in table]
    text += ["names " + " ".join(names)]
    return _finish(args, [Verdict.passed("biaction axioms"), expansion_check(b)],
                   {"table": table.tolist(), "names": list(names)}, text)


def cmd_embed_restriction(args) -> int:
    s = _load(args.semigroup, "SEMIGROUP").body
    res = embed_alpha(s)
    text = [f"{s.names[a]} -> {sub.label()}" for a, sub in enumerate(res.subsets())]
    return _finish(args, res.checks, {"alpha": [int(v) for v in res.alpha]}, text)


def cmd_nice_embed(args) -> int:
    s = _load(args.semigroup, "SEMIGROUP").body
    g = _category(args.groupoid)
    spec = _load(args.map, "MAP").body
    try:
        iota = spec.as_list(len(embed_alpha(s).alpha))
    except ValueError as exc:
        raise InputError(f"{args.map}: {exc}") from exc
    res = nice_embedding_from_groupoid(s, g, iota)
    text = [f"{s.names[a]} -> {res.target.semigroup.names[t]}" for a, t in enumerate(res.theta)]
    return _finish(args, res.checks, {"theta": list(res.theta)}, text)


def cmd_enumerate(args) -> int:
    cats = list(enumerate_categories(args.max))
    if args.json:
        payload = {"count": len(cats), "categories": [serialize_instance(InstanceFile("CATEGORY", c)) for c in cats]}
        return _finish(args, [Verdict.passed("enumerated")], payload)
    for i, c in enumerate(cats):
        print(f"# category {i}: {c.size} morphisms, {len(c.identities)} objects")
        print(serialize_instance(InstanceFile("CATEGORY", c)))
    print(f"# total {len(cats)}")
    return EXIT_OK


def cmd_suite(args) -> int:
    report = run_suite(args.name, args.max, tuple(args.fixture), args.oracle_max)
    out = report.to_json(args.witness_limit) if args.json else report.to_text(args.witness_limit)
    sys.stdout.write(out)
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--witness-limit", type=int, default=None, metavar="N",
                        help="print witnesses for at most N failures")
    common.add_argument("--cap", type=int, default=None, metavar="CELLS",
                        help="materialization cap in table cells (default $EHRESMANN_LAB_CAP or 2^20)")

    p = argparse.ArgumentParser(prog="ehresmann-lab",
                                description="Checkers for finite categories and Ehresmann semigroups.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(fn=fn)
        return sp

    add("check", cmd_check, "validate any instance file").add_argument("file")
    sp = add("powerset", cmd_powerset, "build the Boolean monoid of subsets of a category")
    sp.add_argument("category")
    sp.add_argument("-o", "--output")
    add("classify", cmd_classify, "classify every subset of a category").add_argument("category")
    add("reconstruct", cmd_reconstruct, "recover a category from a Boolean Ehresmann monoid").add_argument("boolean")
    add("pseudoproduct", cmd_pseudoproduct, "pseudoproduct table of a biaction").add_argument("biaction")
    add("embed-restriction", cmd_embed_restriction, "embed a restriction semigroup into PI(C)").add_argument("semigroup")
    sp = add("nice-embed", cmd_nice_embed, "embed through a groupoid")
    sp.add_argument("semigroup")
    sp.add_argument("groupoid")
    sp.add_argument("map")
    sp = add("enumerate", cmd_enumerate, "list categories up to isomorphism")
    sp.add_argument("--max", type=int, required=True, help=f"max morphisms (at most {HARD_CAP})")
    sp = add("suite", cmd_suite, "run a named check suite")
    sp.add_argument("name", choices=SUITES)
    sp.add_argument("--max", type=int, default=None, help="max morphisms for enumerated instances")
    sp.add_argument("--fixture", action="append", default=[], help="extra instance file (axioms suite)")
    sp.add_argument("--oracle-max", type=int, default=None, help="max morphisms for the classifier oracle")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cap is None:
        args.cap = default_cap()
    try:
        return args.fn(args)
    except (LawViolation, InternalConsistencyError) as exc:
        v = Verdict.failed(getattr(exc, "law", None) or exc.step, exc.witness, getattr(exc, "message", ""))
        return _finish(args, [v])
    except (ParseError, InputError, CapExceeded, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
