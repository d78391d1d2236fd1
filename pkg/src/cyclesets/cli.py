"""Command-line front end.

Exit codes: 0 on success, 1 on mathematical rejection (invalid table,
non-isomorphic pair, inadmissible spec), 2 on usage or IO errors.  Output is
strict JSON unless --pretty is given, which renders tables in cycle notation.
"""

from __future__ import annotations

import argparse
import sys

from . import jsonio
from .classify import (
    SearchConfig,
    brute_force_enumerate,
    classify_cyclic_prime_power,
    classify_pq,
    group_type_of,
)
from .construct import (
    build_elementary_abelian,
    build_p2_level2,
    build_prime_power,
    compatible_bijections,
    trivial_cycle_set,
)
from .cycleset import (
    CycleSet,
    are_isomorphic,
    find_violations,
    from_solution,
    is_indecomposable,
    is_nondegenerate,
    is_square_free,
    mpl,
    permutation_group,
    retract,
    retraction_tower,
    to_solution,
    validate_solution,
)
from .errors import CycleSetError, FormatError, InvalidCycleSet
from .perm import Permutation, format_cycles

_MODES = {
    "full": "full-bruteforce",
    "regular-abelian": "regular-abelian-restricted",
    "spec": "spec-parameterized",
}


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _read_json(path: str):
    return jsonio.load(_read_text(path))


def _require_input(args) -> str:
    if not args.input:
        raise FormatError("this subcommand requires --input/-i (path or '-')")
    return args.input


def _violations_payload(violations) -> list[dict]:
    out = []
    for v in violations:
        if v[0] == "row":
            out.append({"kind": "row", "x": v[1]})
        else:
            out.append({"kind": "axiom", "x": v[1], "y": v[2], "z": v[3]})
    return out


def _cmd_verify(args):
    table = jsonio.table_from_dict(_read_json(_require_input(args)))
    violations = find_violations(table)
    if violations:
        return {"valid": False, "violations": _violations_payload(violations)}, 1
    X = CycleSet(table)
    sol = to_solution(X)
    solution_ok = True
    try:
        validate_solution(sol.lam, sol.rho)
        solution_ok = from_solution(sol) == X
    except CycleSetError:
        solution_ok = False
    group = permutation_group(X)
    payload = {
        "valid": True,
        "n": X.n,
        "square_free": is_square_free(X),
        "nondegenerate": is_nondegenerate(X),
        "indecomposable": is_indecomposable(X),
        "group_order": group.order,
        "group_type": group_type_of(group),
        "mpl": mpl(X),
        "tower": [level.n for level in retraction_tower(X)],
        "solution_checks": solution_ok,
    }
    return payload, 0


def _cmd_build(args):
    family = args.family
    if family is None:
        if not args.input:
            raise FormatError("build needs --family or an --input spec file")
        family = "prime-power"
    if family == "trivial":
        if args.m is None:
            raise FormatError("build --family trivial requires --m")
        X = trivial_cycle_set(args.m)
    elif family == "p2-level2":
        if args.p is None or args.t is None:
            raise FormatError("build --family p2-level2 requires --p and --t")
        X = build_p2_level2(args.p, args.t)
    elif family == "elementary-abelian":
        if args.p is None:
            raise FormatError("build --family elementary-abelian requires --p")
        X = build_elementary_abelian(args.p)
    elif family == "prime-power":
        spec = jsonio.spec_from_dict(_read_json(_require_input(args)))
        X = build_prime_power(spec)
    else:  # pragma: no cover - argparse restricts choices
        raise FormatError(f"unknown family {family}")
    return jsonio.cycleset_to_dict(X), 0


def _cmd_retract(args):
    X = jsonio.cycleset_from_dict(_read_json(_require_input(args)))
    tower = retraction_tower(X)
    steps = []
    for level in tower[:-1]:
        step = retract(level)
        steps.append(
            {
                "projection": list(step.projection),
                "quotient": jsonio.cycleset_to_dict(step.quotient),
            }
        )
    payload = {
        "sizes": [level.n for level in tower],
        "mpl": mpl(X),
        "steps": steps,
    }
    return payload, 0


def _cmd_solution(args):
    data = _read_json(_require_input(args))
    if args.invert:
        sol = jsonio.solution_from_dict(data)
        return jsonio.cycleset_to_dict(from_solution(sol)), 0
    X = jsonio.cycleset_from_dict(data)
    return jsonio.solution_to_dict(to_solution(X)), 0


def _cmd_iso(args):
    left = jsonio.cycleset_from_dict(_read_json(args.left))
    right = jsonio.cycleset_from_dict(_read_json(args.right))
    witness = are_isomorphic(left, right)
    if witness is None:
        return {"isomorphic": False}, 1
    return {"isomorphic": True, "witness": list(witness)}, 0


def _cmd_classify(args):
    config = SearchConfig(max_candidates=args.budget)
    if args.q is not None and args.k is not None:
        raise FormatError("classify takes --q or --k, not both")
    if args.q is not None:
        report = classify_pq(args.p, args.q, config=config)
    elif args.k is not None:
        report = classify_cyclic_prime_power(args.p, args.k, config=config)
    else:
        raise FormatError("classify requires --p together with --q or --k")
    return jsonio.report_to_dict(report), 0


def _cmd_enumerate(args):
    mode = _MODES[args.mode]
    config = SearchConfig(max_candidates=args.budget, mode=mode)
    structures = brute_force_enumerate(args.n, config)
    payload = {"n": args.n, "mode": mode, "count": len(structures)}
    if not args.count:
        payload["structures"] = [jsonio.cycleset_to_dict(X) for X in structures]
    return payload, 0


def _cmd_lemma2(args):
    functions = compatible_bijections(args.p)
    return {"p": args.p, "functions": [list(f) for f in functions]}, 0


def _render_table(payload) -> str:
    n = payload["n"]
    lines = [f"cycle set on {n} points"]
    for x, row in enumerate(payload["table"]):
        lines.append(f"  sigma[{x}] = {format_cycles(Permutation(row))}")
    return "\n".join(lines)


def _render_report(payload) -> str:
    lines = [
        f"size {payload['size']}, constraint {payload['constraint']}, "
        f"{len(payload['classes'])} classes"
    ]
    if payload["templates_searched"]:
        lines.append("templates: " + ", ".join(payload["templates_searched"]))
    for idx, entry in enumerate(payload["classes"]):
        lines.append(
            f"class {idx}: mpl={entry['mpl']} group={entry['group_type']}"
            f"({entry['group_order']}) raw_count={entry['raw_count']}"
            + (f" f={entry['f_invariant']}" if entry["f_invariant"] else "")
        )
        lines.append("  " + _render_table(entry["witness"]).replace("\n", "\n  "))
    return "\n".join(lines)


def _render_pretty(payload) -> str:
    if isinstance(payload, dict) and "table" in payload and "n" in payload:
        return _render_table(payload)
    if isinstance(payload, dict) and "classes" in payload:
        return _render_report(payload)
    return jsonio.dumps(payload, pretty=True)


def _emit(payload, args) -> None:
    text = _render_pretty(payload) if args.pretty else jsonio.dumps(payload)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="input path, or '-' for stdin")
    common.add_argument("--output", "-o", help="output path (default: stdout)")
    common.add_argument("--pretty", action="store_true",
                        help="human-readable rendering instead of strict JSON")

    parser = argparse.ArgumentParser(
        prog="cycleset",
        description="Construct, verify and classify finite cycle sets "
        "(involutive set-theoretic Yang-Baxter solutions).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("verify", parents=[common],
                   help="validate a table and report its invariants")

    p_build = sub.add_parser("build", parents=[common],
                             help="build a table from a named family or a spec file")
    p_build.add_argument("--family",
                         choices=["trivial", "p2-level2", "elementary-abelian",
                                  "prime-power"])
    p_build.add_argument("--m", type=int, help="size for the trivial family")
    p_build.add_argument("--p", type=int)
    p_build.add_argument("--t", type=int)

    sub.add_parser("retract", parents=[common],
                   help="print the retraction tower of a table")

    p_sol = sub.add_parser("solution", parents=[common],
                           help="convert a table to lambda/rho form and back")
    p_sol.add_argument("--invert", action="store_true",
                       help="read a solution payload and emit its table")

    p_iso = sub.add_parser("iso", parents=[common],
                           help="test two tables for isomorphism")
    p_iso.add_argument("left", help="first table (path or '-')")
    p_iso.add_argument("right", help="second table (path or '-')")

    p_cls = sub.add_parser("classify", parents=[common],
                           help="classification report at size p*q or p^k")
    p_cls.add_argument("--p", type=int, required=True)
    p_cls.add_argument("--q", type=int)
    p_cls.add_argument("--k", type=int)
    p_cls.add_argument("--budget", type=int, default=10 ** 8)

    p_enum = sub.add_parser("enumerate", parents=[common],
                            help="enumerate cycle sets of a given size")
    p_enum.add_argument("n", type=int)
    p_enum.add_argument("--mode", choices=sorted(_MODES), default="regular-abelian")
    p_enum.add_argument("--budget", type=int, default=10 ** 8)
    p_enum.add_argument("--count", action="store_true",
                        help="emit only the count, not the structures")

    p_lem = sub.add_parser("lemma2", parents=[common],
                           help="list the admissible digit bijections for a prime")
    p_lem.add_argument("--p", type=int, required=True)

    return parser


_HANDLERS = {
    "verify": _cmd_verify,
    "build": _cmd_build,
    "retract": _cmd_retract,
    "solution": _cmd_solution,
    "iso": _cmd_iso,
    "classify": _cmd_classify,
    "enumerate": _cmd_enumerate,
    "lemma2": _cmd_lemma2,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, code = _HANDLERS[args.command](args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidCycleSet as exc:
        _emit({"valid": False,
               "violations": _violations_payload(exc.violations)}, args)
        return 1
    except CycleSetError as exc:
        _emit({"error": str(exc)}, args)
        return 1
    except ValueError as exc:
        _emit({"error": str(exc)}, args)
        return 1
    _emit(payload, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
