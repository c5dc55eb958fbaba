"""Command-line front-end.

Subcommands: check, eval, canon, compose, roundtrip, selftest.  Exit
codes: 0 on success, 1 when a validation or identity check fails, 2 on
usage, parse, or I/O errors.  Every failure path prints one line
starting with "FAIL:" so scripts can grep for it; all randomized
commands take an explicit --seed and are byte-deterministic given it.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources

from . import dsl
from .cobordism import CompositionError, compose
from .frobenius import check_action, check_frobenius
from .groups import GroupMismatchError
from .tqft import Evaluator, RoundtripReport, evaluate, roundtrip_report

_EXPECTED_BAD_FIXTURES = frozenset({"broken.alg", "badaction.alg"})


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def cmd_check(args) -> int:
    w = dsl.parse_algebra(_read(args.algebra), validate=False)
    rep = check_frobenius(w.algebra)
    if not rep:
        print(f"FAIL: frobenius: {rep}")
        return 1
    rep = check_action(w)
    if not rep:
        print(f"FAIL: action: {rep}")
        return 1
    print("frobenius: ok, action: ok")
    return 0


def cmd_eval(args) -> int:
    w = dsl.parse_algebra(_read(args.algebra))
    cob = dsl.parse_cobordism(args.expr, w.group)
    mat = evaluate(cob, w)
    print(f"V^{cob.source} -> V^{cob.target} (d={w.algebra.dim})")
    if args.fmt == "matrix":
        print(mat.to_text())
    else:
        print(dsl.format_cobordism(cob))
        ev = Evaluator(w)
        for k, comp in enumerate(cob.components):
            print(f"comp {k}: {ev.evaluate_component(comp).to_text()}")
    return 0


def cmd_canon(args) -> int:
    group = dsl.parse_group(args.group)
    cob = dsl.parse_cobordism(args.expr, group)
    print(dsl.format_cobordism(cob))
    return 0


def cmd_compose(args) -> int:
    group = dsl.parse_group(args.group)
    first = dsl.parse_cobordism(args.first, group)
    second = dsl.parse_cobordism(args.second, group)
    print(dsl.format_cobordism(compose(second, first)))
    return 0


def _report_lines(rep: RoundtripReport) -> list[tuple[str, bool, str]]:
    lines = []
    for name, check in (("frobenius", rep.frobenius), ("action", rep.action),
                        ("extraction", rep.extraction)):
        lines.append((name, check.ok, str(check)))
    for name, suite in (("placements", rep.placements),
                        ("functoriality", rep.functoriality),
                        ("monoidality", rep.monoidality),
                        ("slicing", rep.slicing)):
        detail = str(suite) if suite.ok else f"{suite}; witness: {suite.witness}"
        lines.append((name, suite.ok, detail))
    return lines


def cmd_roundtrip(args) -> int:
    w = dsl.parse_algebra(_read(args.algebra), validate=False)
    rep = roundtrip_report(w, seed=args.seed, iterations=args.iters)
    for name, ok, detail in _report_lines(rep):
        print(f"{name}: {detail}" if ok else f"FAIL: {name}: {detail}")
    return 0 if rep.ok else 1


def cmd_selftest(args) -> int:
    fixture_dir = resources.files("frobcob").joinpath("fixtures")
    names = sorted(entry.name for entry in fixture_dir.iterdir()
                   if entry.name.endswith(".alg"))
    status = 0
    for name in names:
        w = dsl.parse_algebra(fixture_dir.joinpath(name).read_text(encoding="utf-8"),
                              validate=False)
        rep = roundtrip_report(w, seed=args.seed, iterations=args.iters)
        expect_bad = name in _EXPECTED_BAD_FIXTURES
        first_bad = next((f"{n}: {d}" for n, ok, d in _report_lines(rep) if not ok),
                         None)
        if rep.ok and not expect_bad:
            print(f"fixture {name}: ok")
        elif not rep.ok and expect_bad:
            print(f"fixture {name}: fails as expected ({first_bad})")
        elif rep.ok:
            print(f"FAIL: fixture {name}: expected a violation, all checks passed")
            status = 1
        else:
            print(f"FAIL: fixture {name}: {first_bad}")
            status = 1
    return status


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="frobcob",
        description="Labeled 2-cobordisms and their Frobenius-algebra evaluations.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="validate an algebra file")
    c.add_argument("algebra", help="path to an algebra file")

    e = sub.add_parser("eval", help="evaluate a cobordism expression")
    e.add_argument("algebra", help="path to an algebra file")
    e.add_argument("expr", help="cobordism expression over the file's group")
    e.add_argument("--format", dest="fmt", choices=("matrix", "components"),
                   default="matrix", help="output layout (default: matrix)")

    n = sub.add_parser("canon", help="print the canonical form of an expression")
    n.add_argument("group", help="label group literal such as Z/2 or Z x Z/4")
    n.add_argument("expr", help="cobordism expression")

    m = sub.add_parser("compose", help="compose two expressions in diagram order")
    m.add_argument("group", help="label group literal")
    m.add_argument("first", help="expression applied first")
    m.add_argument("second", help="expression applied second")

    r = sub.add_parser("roundtrip", help="run the evaluation/extraction suite")
    r.add_argument("algebra", help="path to an algebra file")
    r.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    r.add_argument("--iters", type=int, default=200,
                   help="randomized iterations (default 200)")

    s = sub.add_parser("selftest", help="run the suite over all shipped fixtures")
    s.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    s.add_argument("--iters", type=int, default=50,
                   help="randomized iterations per fixture (default 50)")
    return ap


_DISPATCH = {
    "check": cmd_check,
    "eval": cmd_eval,
    "canon": cmd_canon,
    "compose": cmd_compose,
    "roundtrip": cmd_roundtrip,
    "selftest": cmd_selftest,
}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _DISPATCH[args.command](args)
    except dsl.ParseError as e:
        print(f"FAIL: parse: {e}")
        return 2
    except dsl.ValidationError as e:
        print(f"FAIL: {e} (at {e.span})")
        return 1
    except (CompositionError, GroupMismatchError) as e:
        print(f"FAIL: compose: {e}")
        return 2
    except OSError as e:
        print(f"FAIL: io: {e}")
        return 2


def entry() -> None:
    sys.exit(main())
