"""Command line entry point: ``brace-solutions <command> ...``.

Exit codes are 0 when every check passes, 1 when an axiom or property
fails (the witness goes to standard error), 2 for unreadable input or
an unsupported structure, and 3 when an equivalence search is refused
by its budget.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from typing import Any, TextIO

from brace_solutions.lib.brace import Level, WeakBrace, verify_weak_brace
from brace_solutions.lib.deform import (
    deformation_report,
    deformed_check_solution,
    deformed_solution,
    distributor_mask,
    right_distributor,
    star_report,
)
from brace_solutions.lib.inspect import catalog, catalog_records
from brace_solutions.lib.io.documents import canonical_json, dump, load, render, write_text
from brace_solutions.lib.semigroup import CayleyTable
from brace_solutions.lib.solution import (
    PairMap,
    check_braid,
    completely_regular_pair,
    find_equivalence,
    properties,
)
from brace_solutions.lib.substructure import distributor_structure
from brace_solutions.lib.truss import (
    Heap,
    NearTruss,
    Retraction,
    heap_report,
    near_truss_solution,
    restriction_equivalence,
)
from brace_solutions.utils import (
    AxiomViolation,
    MalformedInput,
    PreconditionFailed,
    SearchBudgetExceeded,
    UnsupportedStructure,
    as_index_list,
)

log = logging.getLogger(__name__)

PASS, FAIL, INPUT_ERROR, BUDGET_REFUSED = 0, 1, 2, 3


def _load(path: str, cls: type, what: str) -> Any:
    obj = load(path)
    if not isinstance(obj, cls):
        raise MalformedInput(f"{path} describes a {type(obj).__name__}, expected {what}")
    return obj


def _element(w: WeakBrace | NearTruss, z: int) -> int:
    if not 0 <= z < w.n:
        raise MalformedInput(f"--z {z} is outside the carrier of size {w.n}", path="z")
    return z


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _report(name: str, holds: bool, err: TextIO, witness: Any = None) -> bool:
    line = f"{name}: {_flag(holds)}"
    if witness is not None:
        line += f" (witness {tuple(witness)})"
    print(line, file=err)
    return holds


def cmd_verify(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    obj = load(args.file)
    if isinstance(obj, WeakBrace):
        level = Level.parse(args.level or Level.WEAK)
        w = verify_weak_brace(obj.add, obj.mul, level, args.file)
        print(f"pass: weak brace of order {w.n} at level {w.level}", file=out)
        return PASS
    if args.level:
        raise MalformedInput("--level applies to weak brace documents only", path="level")
    if isinstance(obj, PairMap):
        check = check_braid(obj)
        if not check.holds:
            raise AxiomViolation("braid relation", check.witness, args.file)
        print(f"pass: solution on {obj.n} elements", file=out)
        return PASS
    if isinstance(obj, Heap):
        for check in heap_report(obj):
            if not check.holds:
                raise AxiomViolation(check.name, check.witness, args.file)
    if isinstance(obj, CayleyTable):
        summary = f"{obj.profile.kind} of order {obj.n}"
    elif isinstance(obj, Retraction):
        summary = f"retraction of order {obj.t.n} onto a brace of order {obj.b.n}"
    else:
        summary = f"{type(obj).__name__} of order {obj.n}"
    print(f"pass: {summary}", file=out)
    return PASS


def cmd_distributor(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    w = _load(args.file, WeakBrace, "a weak brace")
    print(" ".join(str(z) for z in as_index_list(right_distributor(w))), file=out)
    if not args.structure:
        return PASS
    report = distributor_structure(w)
    for field in report._fields[1:]:
        value = getattr(report, field)
        shown = "n/a" if value is None else _flag(value)
        print(f"{field}: {shown}", file=out)
    print(f"full_inverse_subsemigroup: {_flag(report.full_inverse_subsemigroup)}", file=out)
    return PASS if report.holds else FAIL


def cmd_deform(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    w = _load(args.file, WeakBrace, "a weak brace")
    z = _element(w, args.z)
    r = deformed_solution(w, z)
    out.write(render(dump(r)))
    if not args.check:
        return PASS
    braid = check_braid(r)
    ok = _report("braid", braid.holds, err, braid.witness)
    if distributor_mask(w)[z]:
        partner = deformed_check_solution(w, z)
        ok &= _report("completely_regular", completely_regular_pair(r, partner), err)
        star = star_report(w, z)
        ok &= _report("star", star.holds, err, star.witness)
    else:
        _report("in_distributor", False, err)
    return PASS if ok else FAIL


def cmd_solutions(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    w = _load(args.file, WeakBrace, "a weak brace")
    report = deformation_report(w)
    zs = range(w.n) if args.all_z else [_element(w, args.z)]
    print("z in_distributor braid bijective left_nondeg right_nondeg involutive", file=out)
    for z in zs:
        d = report.per_z[z]
        props = properties(d.r_z)
        cells = [str(z), _flag(z in report.distributor), _flag(d.is_solution)]
        cells += [_flag(v) for v in props]
        print(" ".join(cells), file=out)
    if not report.theorem_holds:
        print("solution iff in D_r: false", file=err)
        return FAIL
    return PASS


def cmd_equiv(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    r = _load(args.first, PairMap, "a pair map")
    s = _load(args.second, PairMap, "a pair map")
    phi = find_equivalence(r, s, args.budget)
    if phi is None:
        print("none", file=out)
        return FAIL
    print(" ".join(str(v) for v in phi), file=out)
    return PASS


def cmd_nt_solve(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    r = _load(args.file, Retraction, "a retraction")
    z = _element(r.t, args.z)
    s = near_truss_solution(r, z)
    out.write(render(dump(s)))
    braid = check_braid(s)
    ok = _report("braid", braid.holds, err, braid.witness)
    restriction = restriction_equivalence(r, z)
    ok &= _report("restriction_equivalent", restriction.holds, err)
    return PASS if ok else FAIL


def cmd_catalog(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    names = None
    if args.builders != "all":
        names = [x for x in args.builders.split(",") if x]
    text = canonical_json(catalog_records(catalog(names, args.budget)))
    if args.out:
        write_text(args.out, text)
    else:
        out.write(text)
    return PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brace-solutions",
        description="Deformed solutions of the Yang-Baxter equation from weak braces",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log DEBUG messages to standard error"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify a structure document")
    p.add_argument("file")
    p.add_argument(
        "--level",
        choices=[str(x) for x in Level],
        help="least level a weak brace must reach",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("distributor", help="print the right distributor")
    p.add_argument("file")
    p.add_argument("--structure", action="store_true", help="add the closure report")
    p.set_defaults(func=cmd_distributor)

    p = sub.add_parser("deform", help="emit the deformed map r_z")
    p.add_argument("file")
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--check", action="store_true", help="check the map and its partner")
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("solutions", help="tabulate r_z for every parameter")
    p.add_argument("file")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--all-z", action="store_true")
    which.add_argument("--z", type=int)
    p.set_defaults(func=cmd_solutions)

    p = sub.add_parser("equiv", help="search for an equivalence of two solutions")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--budget", type=int, help="largest n! to search")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("nt-solve", help="emit the near-truss solution of a retraction")
    p.add_argument("file")
    p.add_argument("--z", type=int, required=True)
    p.set_defaults(func=cmd_nt_solve)

    p = sub.add_parser("catalog", help="report on built-in structures")
    p.add_argument("--builders", default="all", help="'all' or a comma separated list")
    p.add_argument("--out", help="write the report here instead of standard output")
    p.add_argument("--budget", type=int, help="largest n! to search for partitions")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(
            level=logging.DEBUG,
            stream=sys.stderr,
            format="%(levelname)s %(name)s: %(message)s",
        )
    out, err = sys.stdout, sys.stderr
    try:
        return args.func(args, out, err)
    except AxiomViolation as e:
        print(f"fail: {e}", file=err)
        return FAIL
    except SearchBudgetExceeded as e:
        print(f"refused: {e}", file=err)
        return BUDGET_REFUSED
    except (MalformedInput, UnsupportedStructure, PreconditionFailed, OSError) as e:
        print(f"error: {e}", file=err)
        return INPUT_ERROR
