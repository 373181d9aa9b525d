"""Command-line front end: dims, pullback, comodule, verify.

Words are written as generator indices separated by spaces or commas and are
multiplied left to right, so "4 3 2 1" is s4*s3*s2*s1.  For G2 the two
generators are numbered s = 1 (short root) and t = 2 (long root).
"""
from __future__ import annotations

import argparse
import json
import sys

from .cartan import CartanType, build_root_system
from .comodule import comodule_expansion
from .pullback import (
    LabeledFamily,
    PullbackProblem,
    classify,
    expected_dims,
)
from .verify import closed_form_check, fixture_dir, load_cases, run_cases
from .weyl import WeylGroup, parse_word_text

_EPILOG = """\
word syntax: generator indices separated by spaces or commas, multiplied
left to right ("4 3 2 1" means s4*s3*s2*s1).

G2 letter convention:
  s (short simple root) = 1
  t (long simple root)  = 2

exit codes: 0 success, 1 verification failure, 2 usage error.
"""

_LATTICE_ALIASES = {
    "adjoint": "adjoint",
    "ad": "adjoint",
    "simply_connected": "simply_connected",
    "sc": "simply_connected",
}


def _emit(payload, fmt: str, text_lines):
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def _common_flags(sub, word=False, degree=None):
    sub.add_argument("--type", required=True, help="Cartan type, e.g. G2, F4, E7")
    sub.add_argument("--p", required=True, type=int, help="prime coefficient field")
    sub.add_argument(
        "--lattice",
        default="adjoint",
        choices=sorted(_LATTICE_ALIASES),
        help="adjoint (default) or simply_connected (alias sc)",
    )
    sub.add_argument("--format", default="text", choices=("text", "json"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schubpull",
        description="Pullbacks of Schubert classes to the group, over a prime field.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subs = parser.add_subparsers(dest="command", required=True)

    dims = subs.add_parser("dims", help="graded quotient dimensions over a degree range")
    _common_flags(dims)
    dims.add_argument("--max-degree", required=True, type=int)
    dims.add_argument("--min-degree", default=2, type=int)

    pull = subs.add_parser("pullback", help="classify one degree and label the classes")
    _common_flags(pull)
    pull.add_argument("--degree", required=True, type=int, help="even cohomological degree")

    como = subs.add_parser("comodule", help="expansion of the action map on one class")
    _common_flags(como)
    como.add_argument("--word", required=True, help='element, e.g. "1 2 1 2 1 2"')

    ver = subs.add_parser("verify", help="compare against the embedded expected tables")
    ver.add_argument("--all", action="store_true", help="run every fixture case and the closed forms")
    ver.add_argument("--case", action="append", default=[], help="fixture case name (repeatable)")
    ver.add_argument("--closed-forms", action="store_true", help="run the A/C closed-form matrix")
    ver.add_argument("--fixtures", default=None, help=f"fixture directory (default: packaged, or ${'{'}SCHUBPULL_FIXTURES{'}'})")
    ver.add_argument("--threads", default=1, type=int, help="run cases concurrently (output order is fixed)")
    ver.add_argument("--format", default="text", choices=("text", "json"))
    return parser


def _family(args) -> LabeledFamily:
    ctype = CartanType.parse(args.type)
    lattice = _LATTICE_ALIASES[args.lattice]
    return LabeledFamily(WeylGroup(build_root_system(ctype)), args.p, lattice)


def _cmd_dims(args) -> int:
    ctype = CartanType.parse(args.type)
    lattice = _LATTICE_ALIASES[args.lattice]
    group = WeylGroup(build_root_system(ctype))
    if args.min_degree % 2 or args.max_degree % 2 or args.min_degree < 2:
        raise ValueError("degree range must consist of even degrees >= 2")
    expected = expected_dims(ctype, args.p, lattice)
    dims = {}
    for d in range(args.min_degree, args.max_degree + 1, 2):
        result = classify(PullbackProblem(ctype, args.p, d // 2, lattice), group)
        dims[str(d)] = result.quotient.dim
    payload = {
        "cartan_type": str(ctype),
        "p": args.p,
        "lattice": lattice,
        "dims": dims,
        "expected_dims": None if expected is None else {str(d): v for d, v in sorted(expected.items())},
    }
    lines = [f"{ctype} mod {args.p} ({lattice})"]
    for d, v in dims.items():
        note = ""
        if expected is not None:
            note = f" (expected {expected.get(int(d), 0)})"
        lines.append(f"  degree {d}: dim {v}{note}")
    _emit(payload, args.format, lines)
    return 0


def _cmd_pullback(args) -> int:
    if args.degree % 2 or args.degree < 2:
        raise ValueError("--degree must be a positive even integer")
    family = _family(args)
    ld = family.degree(args.degree)
    group = family.group
    classes = []
    if ld.labeled:
        for w, sm in ld.nonzero():
            classes.append({"label": sm.label(family.p), "word": list(group.minimal_word(w))})
        classes.sort(key=lambda c: (c["label"], c["word"]))
    else:
        for i in ld.result.nonzero_positions():
            w = ld.stratum.elements[i]
            classes.append(
                {"coords": [int(x) for x in ld.result.images[i]], "word": list(group.minimal_word(w))}
            )
        classes.sort(key=lambda c: (c["coords"], c["word"]))
    dim = ld.result.quotient.dim if ld.result is not None else 0
    payload = {
        "cartan_type": str(family.group.system.type),
        "p": family.p,
        "lattice": family.lattice,
        "degree": args.degree,
        "quotient_dim": dim,
        "classes": classes,
    }
    lines = [f"{payload['cartan_type']} mod {family.p} ({family.lattice}), degree {args.degree}: dim {dim}"]
    for c in classes:
        tag = c.get("label") or f"coords {c['coords']}"
        lines.append(f"  {' '.join(map(str, c['word']))}  ->  {tag}")
    _emit(payload, args.format, lines)
    return 0


def _cmd_comodule(args) -> int:
    family = _family(args)
    group = family.group
    w = group.parse_word(parse_word_text(args.word))
    expansion = comodule_expansion(w, family)
    terms = []
    for t in expansion.terms:
        from .pullback import SignedMonomial

        label = SignedMonomial(t.coeff, t.monomial).label(family.p)
        terms.append({"label": label, "v": list(group.minimal_word(t.v))})
    payload = {
        "cartan_type": str(group.system.type),
        "p": family.p,
        "lattice": family.lattice,
        "word": list(group.minimal_word(w)),
        "terms": terms,
    }
    lines = [f"class of [{' '.join(map(str, payload['word'])) or 'e'}] expands as:"]
    for t in terms:
        lines.append(f"  {t['label']} (x) [{' '.join(map(str, t['v'])) or 'e'}]")
    _emit(payload, args.format, lines)
    return 0


def _cmd_verify(args) -> int:
    reports = []
    wanted = set(args.case)
    run_fixtures = args.all or bool(wanted)
    if not run_fixtures and not args.closed_forms:
        run_fixtures = True  # bare "verify" means all fixtures
        args.closed_forms = True
    if run_fixtures:
        cases = load_cases(args.fixtures)
        if wanted:
            cases = [c for c in cases if c.name in wanted]
            unknown = wanted - {c.name for c in cases}
            if unknown:
                raise ValueError(f"unknown case names: {sorted(unknown)}")
        reports.extend(run_cases(cases, threads=args.threads))
    if args.closed_forms or args.all:
        for n in (2, 3, 4, 5, 6):
            for p in (2, 3, 5):
                reports.append(closed_form_check("A", n, p))
        for n in (2, 3, 4):
            reports.append(closed_form_check("C", n, 2))
    ok = all(r.passed for r in reports)
    payload = {"passed": ok, "reports": [r.to_dict() for r in reports]}
    lines = []
    for r in reports:
        if r.passed:
            lines.append(f"PASS {r.case}")
        else:
            lines.append(f"FAIL {r.case}")
            for m in r.mismatches or r.missing:
                lines.append(f"     missing/mismatch: {m}")
            for e in r.extra:
                lines.append(f"     extra: {e}")
    lines.append(f"{sum(r.passed for r in reports)}/{len(reports)} cases passed")
    _emit(payload, args.format, lines)
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "dims": _cmd_dims,
        "pullback": _cmd_pullback,
        "comodule": _cmd_comodule,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
