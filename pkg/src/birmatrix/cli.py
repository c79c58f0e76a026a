"""Command line interface.

Subcommands: ``apply`` (transform the symbolic tuple by a generator word),
``specialfn`` (print one of the tau / sigma / sigma-bar / omega / p
polynomials), ``closed-form`` (the transposition-family closed forms),
``paths`` (enumerate noncrossing highway-path families or print their
generating functions) and ``verify`` (run the identity suites).

Words are accepted in the written order of the permutation product, where
the rightmost factor acts first: ``s2*s3*s1*s2`` and ``[2,3,1,2]`` both
denote applying s_2, then s_1, then s_3, then s_2.  Pass --letters-first
to read the letters as the application order instead.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 a size
guard skipped cases while --strict was set.

A JSON file passed as --config supplies defaults for any long flag (keys
use underscores); explicit flags win.  BIRMATRIX_PRIME and BIRMATRIX_SEED
provide environment defaults with the lowest precedence.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import cylnet, formulas, rmatrix, specialfn, verify
from .polyalg import (
    DEFAULT_PRIME,
    Polynomial,
    RationalFunction,
    rf_to_obj,
    to_latex,
    to_text,
)


def parse_word(text: str, m: int, letters_first: bool = False) -> List[int]:
    """A generator word from either s-product or bracket-list syntax."""
    text = text.strip()
    if not text or text == "[]":
        return []
    if text.startswith("["):
        letters = [int(w) for w in text.strip("[]").replace(",", " ").split()]
    else:
        letters = []
        for piece in text.replace("*", " ").split():
            if not piece.startswith("s"):
                raise ValueError(f"cannot parse generator {piece!r}")
            letters.append(int(piece[1:]))
    if letters_first:
        rmatrix.check_word(letters, m)
        return letters
    return rmatrix.word_from_expr(letters, m)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _format_value(value, fmt: str) -> str:
    if fmt == "text":
        return to_text(value)
    if fmt == "latex":
        return to_latex(value)
    if isinstance(value, Polynomial):
        value = RationalFunction(value)
    return json.dumps(rf_to_obj(value))


def cmd_apply(args) -> int:
    word = parse_word(args.word, args.m, args.letters_first)
    tup = rmatrix.VectorTuple.symbolic(args.n, args.m).apply_word(word)
    if args.entry:
        i, r = args.entry
        _emit(_format_value(tup.entry(i, r), args.format), args.output)
        return 0
    if args.format == "json":
        _emit(json.dumps(tup.to_obj()), args.output)
        return 0
    lines = []
    for i in range(1, args.m + 1):
        for r in range(1, args.n + 1):
            entry = tup.entry(i, r)
            lines.append(f"x[{i},{r}] -> " + (_format_value(entry, args.format)))
    _emit("\n".join(lines), args.output)
    return 0


def cmd_specialfn(args) -> int:
    lo, hi = args.window
    fn = args.fn
    if fn == "tau":
        poly = specialfn.tau(args.n, args.k, args.r, lo, hi)
    elif fn == "sigma":
        poly = specialfn.sigma(args.n, args.k, args.r, lo, hi)
    elif fn == "sigmabar":
        poly = specialfn.sigma_bar(args.n, args.k, args.r, lo, hi)
    elif fn == "omega":
        poly = specialfn.omega(args.n, args.k, args.r, lo, hi)
    else:
        poly = specialfn.p_fn(args.n, args.k, args.r, lo, hi)
    _emit(_format_value(poly, args.format), args.output)
    return 0


def cmd_closed_form(args) -> int:
    spec = formulas.TranspositionSpec(args.n, args.m, args.i, args.j, args.k, args.family)
    acted = formulas.full_action(spec)
    if args.target:
        pos, r = args.target
        _emit(_format_value(acted[pos][r].to_rational(), args.format), args.output)
        return 0
    if args.format == "json":
        obj = {
            "n": args.n, "m": args.m,
            "entries": [[rf_to_obj(acted[i][r].to_rational())
                         for r in range(1, args.n + 1)]
                        for i in range(1, args.m + 1)],
        }
        _emit(json.dumps(obj), args.output)
        return 0
    lines = []
    for i in range(1, args.m + 1):
        for r in range(1, args.n + 1):
            lines.append(f"x[{i},{r}] -> "
                         + _format_value(acted[i][r].to_rational(), args.format))
    _emit("\n".join(lines), args.output)
    return 0


def cmd_paths(args) -> int:
    if args.paths_cmd == "enumerate":
        cls = cylnet.FamilyClass(args.n, args.m, args.r, args.k, args.mode)
        fams = cylnet.enumerate_families(cls)
        if args.format == "json":
            _emit(json.dumps([f.to_obj() for f in fams]), args.output)
        else:
            lines = [f"{len(fams)} families"]
            for f in fams:
                steps = " ".join(f"{p.source}:{p.steps}" for p in f.paths)
                lines.append(f"degree={f.degree} {steps}")
            _emit("\n".join(lines), args.output)
        return 0
    fn = args.gf
    if fn == "tau":
        poly = cylnet.gen_tau(args.n, args.m, args.r, args.k)
    elif fn == "sigma":
        poly = cylnet.gen_sigma(args.n, args.m, args.r, args.k)
    elif fn == "sigmabar":
        poly = cylnet.gen_sigma_bar(args.n, args.m, args.r, args.k)
    else:
        poly = cylnet.gen_omega(args.n, args.m, args.r, args.cut)
    _emit(_format_value(poly, args.format), args.output)
    return 0


def cmd_verify(args) -> int:
    cfg = verify.VerifyConfig(
        max_n=args.max_n, max_m=args.max_m, mode=args.mode,
        prime=args.prime, seed=args.seed, points=args.points,
        strict=args.strict,
    )
    reports = verify.run_suite(args.suite, cfg)
    lines = []
    any_fail = False
    any_skip = False
    for rep in reports:
        for case in rep.sorted_cases():
            if args.verbose or case.status != "pass":
                line = f"[{case.status.upper():7s}] {case.descriptor}"
                if args.times:
                    line += f" ({case.seconds:.2f}s)"
                if case.detail and case.status == "fail":
                    line += f"\n    {case.detail}"
                lines.append(line)
        np = sum(1 for c in rep.cases if c.status == "pass")
        nf = sum(1 for c in rep.cases if c.status == "fail")
        lines.append(f"suite {rep.suite}: {np} passed, {nf} failed, "
                     f"{rep.skipped} skipped -> {'PASS' if rep.ok else 'FAIL'}")
        any_fail = any_fail or not rep.ok
        any_skip = any_skip or rep.skipped
    _emit("\n".join(lines), args.output)
    if any_fail:
        return 1
    if any_skip and args.strict:
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="birmatrix",
        description="exact computation with the birational R-matrix action",
    )
    parser.add_argument("--config", help="JSON file with default option values")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "latex", "json"], default="text")
    common.add_argument("--output", help="write the result to a file instead of stdout")

    p = sub.add_parser("apply", parents=[common],
                       help="apply a generator word to the symbolic tuple")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--word", required=True,
                   help="s2*s3*s1*s2 or [2,3,1,2]; rightmost letter acts first")
    p.add_argument("--letters-first", action="store_true",
                   help="read the word as the application order instead")
    p.add_argument("--entry", type=int, nargs=2, metavar=("I", "R"),
                   help="print the single entry x_I^{(R)}")
    p.set_defaults(fn=cmd_apply)

    p = sub.add_parser("specialfn", parents=[common],
                       help="print one of the special polynomials")
    p.add_argument("fn", choices=["tau", "sigma", "sigmabar", "omega", "p"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--window", type=int, nargs=2, required=True, metavar=("I", "J"))
    p.add_argument("--k", type=int, required=True,
                   help="subscript; for omega this is the cut position")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(fn_cmd="specialfn", fn=cmd_specialfn)

    p = sub.add_parser("closed-form", parents=[common],
                       help="closed form of a transposition-family action")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--family", choices=["first", "dual"], default="first")
    p.add_argument("--target", type=int, nargs=2, metavar=("POS", "R"))
    p.set_defaults(fn=cmd_closed_form)

    p = sub.add_parser("paths", help="noncrossing highway-path families")
    psub = p.add_subparsers(dest="paths_cmd", required=True)
    pe = psub.add_parser("enumerate", parents=[common])
    pe.add_argument("--n", type=int, required=True)
    pe.add_argument("--m", type=int, required=True)
    pe.add_argument("--r", type=int, required=True)
    pe.add_argument("--k", type=int, required=True)
    pe.add_argument("--mode", choices=["exact", "le"], default="exact")
    pg = psub.add_parser("gf", parents=[common])
    pg.add_argument("gf", choices=["tau", "sigma", "sigmabar", "omega"])
    pg.add_argument("--n", type=int, required=True)
    pg.add_argument("--m", type=int, required=True)
    pg.add_argument("--r", type=int, required=True)
    pg.add_argument("--k", type=int, default=0)
    pg.add_argument("--cut", type=int, default=1)
    p.set_defaults(fn=cmd_paths)

    p = sub.add_parser("verify", parents=[common],
                       help="run a verification suite")
    p.add_argument("suite", choices=verify.SUITE_NAMES + ["all"])
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--max-m", type=int, default=4)
    p.add_argument("--mode", choices=["symbolic", "modular"], default="symbolic")
    p.add_argument("--prime", type=int,
                   default=int(os.environ.get("BIRMATRIX_PRIME", DEFAULT_PRIME)))
    p.add_argument("--seed", type=int,
                   default=int(os.environ.get("BIRMATRIX_SEED", 0)))
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--strict", action="store_true",
                   help="treat guard-skipped cases as an error (exit 3)")
    p.add_argument("--verbose", action="store_true", help="print passing cases too")
    p.add_argument("--times", action="store_true",
                   help="include per-case timing (breaks byte-for-byte determinism)")
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args, remaining = parser.parse_known_args(argv)
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            defaults = json.load(fh)
        parser.set_defaults(**{k.replace("-", "_"): v for k, v in defaults.items()})
        args = parser.parse_args(argv)
    elif remaining:
        parser.error(f"unrecognized arguments: {' '.join(remaining)}")
    try:
        return args.fn(args)
    except cylnet.GuardExceeded as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, IndexError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
