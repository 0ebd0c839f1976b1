"""Command-line front end.

Subcommands: criterion, enumerate, partition, member, witness, verify,
decompose, cross-validate.  `--json` switches every command from aligned
human-readable text to the module serialization formats.  Exit codes:
0 success / oracle pass, 1 domain error, 2 oracle violation, 3 budget
exceeded, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .criterion import (
    QSet,
    check_criterion,
    enumerate_valid_q,
    member_full,
    member_mq,
    MS_CLASSES,
)
from .errors import BudgetExceeded, NilcloseError
from .field import parse_field
from .jordan import jordan_chevalley, jordan_partition
from .matrices import load_matrix, matrix_to_json
from .oracle import cross_validate, exhaustive_check, sampled_check
from .witness import falsify

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_VIOLATION = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(data) -> None:
    print(json.dumps(data, indent=2, sort_keys=True))


def _parse_q(text: str, n: int) -> QSet:
    return QSet.parse(text, n)


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_criterion(args) -> int:
    q = _parse_q(args.q, args.n)
    result = check_criterion(args.n, args.char, q)
    if args.json:
        _emit(result.to_json())
    elif result.accepted:
        if result.m0 is None:
            print("accept (empty set)")
        else:
            print(f"accept (m0={result.m0}, {result.branch})")
    else:
        print("reject")
        for r in result.reject_reasons:
            print(f"  m0={r.m0} ({r.branch}): {r.condition}, "
                  f"offending size {r.offending}")
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    valid = enumerate_valid_q(args.n, args.char, bound=args.bound)
    if args.json:
        _emit({"n": args.n, "char": args.char,
               "valid": [str(q) for q in valid]})
    else:
        for q in valid:
            print(str(q))
    return EXIT_OK


def _cmd_partition(args) -> int:
    x = load_matrix(args.input)
    part = jordan_partition(x)
    if args.json:
        _emit({"partition": list(part.parts)})
    else:
        print(str(part))
    return EXIT_OK


def _cmd_member(args) -> int:
    x = load_matrix(args.input)
    q = _parse_q(args.q, x.n)
    if args.cls is None:
        verdict = member_mq(x, q)
    else:
        verdict = member_full(x, args.cls, q)
    if args.json:
        _emit({"member": verdict})
    else:
        print("true" if verdict else "false")
    return EXIT_OK


def _cmd_witness(args) -> int:
    q = _parse_q(args.q, args.n)
    w = falsify(args.n, args.char, q)
    if w is None:
        if args.json:
            _emit({"verdict": "accept"})
        else:
            print("accept: no witness exists")
        return EXIT_OK
    if args.json:
        _emit(w.to_json())
    else:
        print(f"construction: {w.construction}")
        print(f"field: {w.field}")
        print(f"coefficients: a={w.a}, b={w.b}")
        print(f"combination partition: {w.combo_partition}")
        print(f"violating size: {w.violating_size}")
        if w.note:
            print(f"note: {w.note}")
        print("x =")
        print(str(w.x))
        print("y =")
        print(str(w.y))
    return EXIT_OK


def _cmd_verify(args) -> int:
    spec = parse_field(args.field)
    q = _parse_q(args.q, args.n)
    if args.mode == "exhaustive":
        report = exhaustive_check(args.n, spec, q, budget=args.budget)
    else:
        report = sampled_check(args.n, spec, q, args.samples, args.seed)
    if args.json:
        _emit(report.to_json())
    else:
        print(f"{report.mode} check over {report.field}, n={report.n}, "
              f"q={{{report.q}}}: {report.outcome}")
        print(f"  matrices enumerated:  {report.matrices_enumerated}")
        print(f"  pairs tested:         {report.pairs_tested}")
        print(f"  combinations tested:  {report.combinations_tested}")
        if report.violation is not None:
            w = report.violation
            print(f"  violation: a={w.a}, b={w.b}, "
                  f"combination {w.combo_partition}, "
                  f"size {w.violating_size} not admitted")
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _cmd_decompose(args) -> int:
    x = load_matrix(args.input)
    s, u = jordan_chevalley(x)
    if args.json:
        _emit({"semisimple": matrix_to_json(s), "nilpotent": matrix_to_json(u)})
    else:
        print("semisimple part:")
        print(str(s))
        print("nilpotent part:")
        print(str(u))
    return EXIT_OK


def _cmd_cross_validate(args) -> int:
    degrees = [int(tok) for tok in args.degrees.split(",")]
    if args.q is None:
        q_range = "all"
    else:
        q_range = [_parse_q(tok, args.n) for tok in args.q.split(";")]
    report = cross_validate(args.n, args.char, degrees, q_range,
                            budget=args.budget)
    if args.json:
        _emit(report.to_json())
    else:
        print(f"n={report.n}, char={report.char}, "
              f"degrees={list(report.degrees)}")
        print(f"  accepted sets: {len(report.accepted)} "
              f"({'; '.join(report.accepted)})")
        print(f"  rejected sets: {len(report.rejected)}, "
              f"all witnessed: {report.witnesses}")
        print(f"  oracle passes: {report.oracle_passes}")
        if report.skipped:
            print(f"  skipped (budget): {'; '.join(report.skipped)}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="nilclose",
                     description="closure analysis of nilpotent matrix sets "
                                 "defined by admitted Jordan cell sizes")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    def common(p, char=False, n=False, q=False):
        p.add_argument("--json", action="store_true",
                       help="emit machine-readable JSON")
        if n:
            p.add_argument("--n", type=int, required=True,
                           help="matrix dimension")
        if char:
            p.add_argument("--char", type=int, required=True,
                           help="field characteristic (0 or a prime)")
        if q:
            p.add_argument("--q", required=True,
                           help="comma-separated cell sizes, or '-' for empty")

    p = sub.add_parser("criterion", help="decide closure for one q-set")
    common(p, char=True, n=True, q=True)
    p.set_defaults(handler=_cmd_criterion)

    p = sub.add_parser("enumerate", help="list all accepted q-sets")
    common(p, char=True, n=True)
    p.add_argument("--bound", type=int, default=20,
                   help="refuse n above this bound (default 20)")
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("partition", help="Jordan partition of a matrix file")
    common(p)
    p.add_argument("--input", required=True, help="matrix JSON file")
    p.set_defaults(handler=_cmd_partition)

    p = sub.add_parser("member", help="membership of a matrix file")
    common(p)
    p.add_argument("--input", required=True, help="matrix JSON file")
    p.add_argument("--q", required=True,
                   help="comma-separated cell sizes, or '-' for empty")
    p.add_argument("--class", dest="cls", choices=MS_CLASSES, default=None,
                   help="also require the semisimple part in this class")
    p.set_defaults(handler=_cmd_member)

    p = sub.add_parser("witness", help="counterexample for a rejected q-set")
    common(p, char=True, n=True, q=True)
    p.set_defaults(handler=_cmd_witness)

    p = sub.add_parser("verify", help="run the brute-force closure oracle")
    common(p, n=True, q=True)
    p.add_argument("--field", required=True,
                   help="field text, e.g. GF(5) or GF(2^2)")
    p.add_argument("--mode", choices=("exhaustive", "sampled"),
                   default="exhaustive")
    p.add_argument("--budget", type=int, default=5_000_000,
                   help="span-size budget for exhaustive mode")
    p.add_argument("--samples", type=int, default=200,
                   help="random pairs in sampled mode")
    p.add_argument("--seed", type=int, default=0, help="sampling seed")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("decompose",
                       help="semisimple plus nilpotent decomposition")
    common(p)
    p.add_argument("--input", required=True, help="matrix JSON file")
    p.set_defaults(handler=_cmd_decompose)

    p = sub.add_parser("cross-validate",
                       help="criterion vs oracle vs witnesses")
    common(p, char=True, n=True)
    p.add_argument("--degrees", default="1",
                   help="comma-separated extension degrees (default 1)")
    p.add_argument("--q", default=None,
                   help="semicolon-separated q-sets (default: all subsets)")
    p.add_argument("--budget", type=int, default=5_000_000)
    p.set_defaults(handler=_cmd_cross_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except BudgetExceeded as exc:
        print(f"BudgetExceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NilcloseError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
