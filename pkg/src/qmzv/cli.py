"""Command-line front end: ``qmzv zeta``, ``qmzv verify`` and ``qmzv relations``.

Exit status is 0 on success, 1 when a verification case fails and 2 on a
usage error (bad flags, unparsable word, non-admissible argument).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .relations import VARIANTS, NonAdmissibleError, ZetaEvaluator, enumerate_relations
from .scalars import AtLeast
from .verify import SUITES, SuiteConfig
from .words import CIRCLEDAST_VARIANTS, format_word, format_wordsum, parse_wordsum

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    precision: int = 40
    max_weight: int = 4
    max_n: int = 3
    output: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.precision < 2:
            raise UsageError("--precision must be at least 2")
        if self.max_weight < 1 or self.max_n < 1:
            raise UsageError("--max-weight and --max-n must be at least 1")
        if self.output not in ("text", "json"):
            raise UsageError("--output must be 'text' or 'json'")


def _coeff_json(c):
    return c if isinstance(c, int) else str(c)


def _valuation_json(v):
    return str(v) if isinstance(v, AtLeast) else v


def cmd_zeta(args, cfg: RunConfig, out) -> int:
    try:
        w = parse_wordsum(args.word)
    except ValueError as e:
        raise UsageError(f"cannot parse {args.word!r}: {e}") from None
    ev = ZetaEvaluator(cfg.precision)
    try:
        value = ev.zeta_star(w) if args.star else ev.zeta(w)
    except NonAdmissibleError as e:
        raise UsageError(str(e)) from None
    if cfg.output == "json":
        doc = {
            "argument": format_wordsum(w),
            "function": "zeta_star" if args.star else "zeta",
            "precision": cfg.precision,
            "coefficients": [_coeff_json(c) for c in value.coeffs],
            "valuation": _valuation_json(value.valuation()),
        }
        print(json.dumps(doc, ensure_ascii=False), file=out)
    else:
        print(value, file=out)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig, out) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; valid suites: {', '.join(SUITES)}")
    suite_cfg = SuiteConfig(max_weight=cfg.max_weight, max_n=cfg.max_n,
                            precision=cfg.precision, seed=cfg.seed,
                            circledast_variant=args.circledast_variant)
    failures = 0
    total = 0
    for case in SUITES[args.suite](suite_cfg):
        total += 1
        failures += not case.ok
        if cfg.output == "json":
            print(json.dumps({"suite": case.suite, "case": case.name, "pass": case.ok,
                              "detail": case.detail}, ensure_ascii=False), file=out)
        else:
            print(case.line(), file=out)
        out.flush()
    if cfg.output == "text":
        print(f"{args.suite}: {total - failures}/{total} passed", file=out)
    return EXIT_FAILURE if failures else EXIT_OK


def cmd_relations(args, cfg: RunConfig, out) -> int:
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    P = cfg.precision
    failures = 0
    for rel, val in enumerate_relations(cfg.max_weight, cfg.max_n, P,
                                        variant=args.variant, workers=args.workers):
        if cfg.output == "json":
            print(json.dumps(rel.to_json(P, val), ensure_ascii=False), file=out)
        else:
            text = f"zeta({format_wordsum(rel.linear_arg)})"
            for _, _, left, right in rel.quadratic_terms:
                text += f" + zeta({format_wordsum(left)}) zeta({format_wordsum(right)})"
            print(f"{rel.variant} w1={format_word(rel.w1)} w2={format_word(rel.w2)} n={rel.n}: "
                  f"{text}; residual valuation {val}", file=out)
        failures += not (isinstance(val, AtLeast) and val.bound >= P)
    return EXIT_FAILURE if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=40, help="q-adic precision P (default 40)")
    common.add_argument("--max-weight", type=int, default=4, help="weight bound (default 4)")
    common.add_argument("--max-n", type=int, default=3, help="bound on n (default 3)")
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")

    parser = argparse.ArgumentParser(prog="qmzv", description="q-analogues of multiple zeta values")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeta", parents=[common], help="evaluate zeta_q of a word sum")
    p.add_argument("word", help='word or word sum, e.g. "[2,1]" or "[3] - [2,1]"')
    p.add_argument("--star", action="store_true", help="evaluate the star variant instead")

    p = sub.add_parser("verify", parents=[common], help="run an identity-verification suite")
    p.add_argument("suite", help="one of: " + ", ".join(SUITES))
    p.add_argument("--circledast-variant", choices=CIRCLEDAST_VARIANTS, default="plus-hbar0")

    p = sub.add_parser("relations", parents=[common], help="enumerate quadratic relations")
    p.add_argument("--variant", choices=VARIANTS, default="modified")
    p.add_argument("--workers", type=int, default=1)
    return parser


COMMANDS = {"zeta": cmd_zeta, "verify": cmd_verify, "relations": cmd_relations}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        cfg = RunConfig(args.precision, args.max_weight, args.max_n, args.output, args.seed)
        return COMMANDS[args.command](args, cfg, out)
    except UsageError as e:
        print(f"qmzv: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the final flush
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
