"""Command-line front end: JSON in, one JSON report out.

Exit codes: 0 yes/success, 2 usage or parse error, 3 a mathematical "no",
4 a computation beyond the supported size.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from ratsurf import ellcurve as ec
from ratsurf import pencil as pc
from ratsurf.errors import CapabilityError, NonIsolatedSingularitiesError, RatsurfError
from ratsurf.piclattice import (
    DivisorClass,
    arithmetic_genus,
    enumerate_negative_classes,
    euler_characteristic,
    intersect,
)
from ratsurf.restriction import ConcreteBlowup, model_from_json, restrict
from ratsurf.semiample import Answer, classify_surface, find_block, is_semiample

EXIT_OK, EXIT_USAGE, EXIT_NO, EXIT_CAPABILITY = 0, 2, 3, 4

COMMANDS = ("check", "restrict", "chi", "neg-curves", "block", "pencil-singular")


class InputError(ValueError):
    """Malformed job input; the message names the offending field."""


def _field(doc: dict, name: str, parse: Callable | None = None):
    if not isinstance(doc, dict):
        raise InputError("input must be a JSON object")
    if name not in doc:
        raise InputError(f"missing field '{name}'")
    if parse is None:
        return doc[name]
    try:
        return parse(doc[name])
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"field '{name}': {exc}") from exc


def _model(doc: dict):
    return _field(doc, "model", model_from_json)


def _int_field(doc: dict, name: str, default=None) -> int:
    if name not in doc:
        if default is None:
            raise InputError(f"missing field '{name}'")
        return default
    v = doc[name]
    if not isinstance(v, int) or isinstance(v, bool):
        raise InputError(f"field '{name}' must be an integer")
    return v


def _check_prime_bound(S, bound: int) -> None:
    if isinstance(S, ConcreteBlowup) and isinstance(S.field, ec.PrimeField):
        ec.group_order(S.curve, bound)


# --- commands -----------------------------------------------------------------


def cmd_check(doc: dict, args) -> tuple[dict, int, str]:
    S = _model(doc)
    _check_prime_bound(S, args.bound)
    if "divisor" in doc:
        N = _field(doc, "divisor", DivisorClass.from_json)
        assert_nef = doc.get("assert_nef", True)
        if not isinstance(assert_nef, bool):
            raise InputError("field 'assert_nef' must be a boolean")
        curves = None
        if not assert_nef:
            curves = _field(doc, "curves", lambda cs: [DivisorClass.from_json(c) for c in cs])
        verdict = is_semiample(S, N, assert_nef=assert_nef, curves=curves)
    else:
        verdict = classify_surface(S)
    code = EXIT_NO if verdict.answer is Answer.NO else EXIT_OK
    summary = f"{verdict.answer.value} ({verdict.branch.value})"
    if verdict.failing:
        summary += f"; {len(verdict.failing)} non-torsion witness(es)"
    return verdict.to_json(), code, summary


def cmd_restrict(doc: dict, args) -> tuple[dict, int, str]:
    S = _model(doc)
    D = _field(doc, "divisor", DivisorClass.from_json)
    R = restrict(S, D)
    out = R.to_json()
    if R.degree == 0:
        order = ec.order_of(S.curve, R.point, args.bound)
        out["order"] = order
    return out, EXIT_OK, f"degree {R.degree}, point {ec.point_to_json(R.point)}"


def cmd_chi(doc: dict, args) -> tuple[dict, int, str]:
    D = _field(doc, "divisor", DivisorClass.from_json)
    chi = euler_characteristic(D)
    return {"chi": chi}, EXIT_OK, f"chi({D}) = {chi}, D^2 = {intersect(D, D)}, p_a = {arithmetic_genus(D)}"


def cmd_neg_curves(doc: dict, args) -> tuple[dict, int, str]:
    r = _int_field(doc, "r")
    bound = _int_field(doc, "degree_bound", args.bound if args.bound_given else 3)
    if r < 0 or bound < 0:
        raise InputError("fields 'r' and 'degree_bound' must be non-negative")
    classes = enumerate_negative_classes(r, bound)
    out = {
        "r": r,
        "degree_bound": bound,
        "classes": [{**c.to_json(), "self_intersection": intersect(c, c)} for c in classes],
    }
    ones = sum(1 for c in classes if intersect(c, c) == -1)
    return out, EXIT_OK, f"{ones} (-1)-classes and {len(classes) - ones} (-2)-classes up to degree {bound}"


def cmd_block(doc: dict, args) -> tuple[dict, int, str]:
    gram = _field(doc, "gram")
    k = _field(doc, "k_degrees")
    if not isinstance(gram, list) or not all(isinstance(row, list) for row in gram):
        raise InputError("field 'gram' must be a list of integer rows")
    if not isinstance(k, list):
        raise InputError("field 'k_degrees' must be a list of integers")
    try:
        sol = find_block(gram, k)
    except ValueError as exc:
        raise InputError(f"field 'gram': {exc}") from exc
    return sol.to_json(), EXIT_OK, f"block multiplicities {list(sol.multiplicities)}"


def _member_report(form: pc.HomogeneousForm, trials: int, seed: int) -> dict:
    out: dict = {"reduced": pc.is_reduced_on_random_lines(form, trials, seed)}
    try:
        rep = pc.rational_singular_points(form)
    except NonIsolatedSingularitiesError:
        out["non_isolated_singularities"] = True
        return out
    out.update(rep.to_json())
    out["node_types"] = [pc.node_test(form, p).value for p in rep.points]
    return out


def cmd_pencil_singular(doc: dict, args) -> tuple[dict, int, str]:
    f0 = _field(doc, "f0", pc.HomogeneousForm.from_json)
    finf = _field(doc, "finf", pc.HomogeneousForm.from_json)
    if f0.degree != finf.degree:
        raise InputError("fields 'f0' and 'finf' must have the same degree")
    report = pc.singular_parameters(f0, finf)
    out = report.to_json()
    out["members"] = [
        {"parameter": list(p), **_member_report(f0 * p[0] + finf * p[1], args.trials, args.seed)}
        for p in report.parameters
    ]
    return out, EXIT_OK, f"singular parameters {[list(p) for p in report.parameters]}"


HANDLERS = {
    "check": cmd_check,
    "restrict": cmd_restrict,
    "chi": cmd_chi,
    "neg-curves": cmd_neg_curves,
    "block": cmd_block,
    "pencil-singular": cmd_pencil_singular,
}


# --- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ratsurf", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH", help="JSON job file, or - for standard input")
    src.add_argument("--json", metavar="TEXT", help="inline JSON job")
    parser.add_argument("--bound", type=int, default=None, help="prime bound for F_p counts; degree bound for neg-curves")
    parser.add_argument("--trials", type=int, default=8, help="random lines per reducedness test (default 8)")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized subroutines (default 0)")
    parser.add_argument("--format", choices=("json",), default="json")
    return parser


def _load(args) -> dict:
    try:
        if args.json is not None:
            return json.loads(args.json)
        if args.input == "-":
            return json.load(sys.stdin)
        with open(args.input, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read input: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args.bound_given = args.bound is not None
    if args.bound is None:
        args.bound = ec.DEFAULT_PRIME_BOUND
    try:
        doc = _load(args)
        if not isinstance(doc, dict):
            raise InputError("input must be a JSON object")
        report, code, summary = HANDLERS[args.command](doc, args)
    except CapabilityError as exc:
        print(f"ratsurf {args.command}: capability error: {exc}", file=stderr)
        return EXIT_CAPABILITY
    except (InputError, RatsurfError, ValueError, TypeError) as exc:
        print(f"ratsurf {args.command}: error: {exc}", file=stderr)
        return EXIT_USAGE
    stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    print(f"ratsurf {args.command}: {summary}", file=stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
