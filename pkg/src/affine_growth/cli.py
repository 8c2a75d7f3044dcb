"""Command-line entry point.

Exit codes: 0 success, 1 input error, 2 result dominated by Unknown (no
certificate and no refutation within budget).  JSON output is sorted and
carries ``"schema": "v1"`` so that runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .affine import GroupClass, Word, classify_group, eval_word, parse_generators
from .config import Config
from .errors import WorkbenchError
from .field import ModulusRing
from .freeness import Verdict, check_json, decide_pair, verdict_to_json
from .growth import (
    GeneratingSet,
    annotate_dplus,
    ball_sizes,
    dplus_lower,
    dplus_upper,
    growth_summary,
)
from .mahler import ct_family_verify, lehmer_experiment, mahler_measure
from .parse import parse_integer_poly

EXIT_OK, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, path: str | None, out) -> None:
    if path:
        Path(path).write_text(text)
    else:
        out.write(text)


def _config(args) -> Config:
    return Config(
        precision_bits=args.precision_bits,
        relation_max_len=args.relation_max_len,
        ball_n_max=getattr(args, "nmax", None) or Config.ball_n_max,
        memory_budget_elements=args.memory_budget,
        trial_division_bound=args.trial_division_bound,
        workers=args.workers or 1,
    )


def _sigma(args):
    ring = ModulusRing.parse(args.ring, True if args.field else None)
    names, maps = parse_generators(args.gens, ring)
    return ring, GeneratingSet(tuple(maps), tuple(names))


def _read_poly(args) -> tuple[int, ...]:
    if args.poly_file:
        text = Path(args.poly_file).read_text().strip()
    elif args.poly:
        text = args.poly
    else:
        raise WorkbenchError("one of --poly / --poly-file is required")
    return parse_integer_poly(text)


# -- subcommands -------------------------------------------------------------


def cmd_growth(args, out) -> int:
    ring, sigma = _sigma(args)
    cfg = _config(args)
    table = ball_sizes(sigma, args.nmax, cfg.memory_budget_elements)
    if not table.is_submultiplicative():
        raise AssertionError("ball sizes violate submultiplicativity")
    lower = dplus_lower(sigma, args.probe, cfg, ball=table.ball) if args.probe else None
    upper = (dplus_upper(sigma, args.cert_radius, cfg, ball=table.ball)
             if args.cert_radius else None)
    annotate_dplus(table, lower, upper)
    if args.csv:
        Path(args.csv).write_text(table.to_csv())
    summary = growth_summary(table, lower, upper)
    summary["generators"] = sigma.describe()
    summary["submultiplicative"] = True
    if args.json or not args.csv:
        _emit(dumps(summary), args.json, out)
    return EXIT_OK


def cmd_dplus(args, out) -> int:
    ring, sigma = _sigma(args)
    cfg = _config(args)
    radius = max(args.nmax, args.probe)
    table = ball_sizes(sigma, radius, cfg.memory_budget_elements)
    upper = dplus_upper(sigma, args.nmax, cfg, ball=table.ball)
    lower = dplus_lower(sigma, args.probe, cfg, ball=table.ball)
    annotate_dplus(table, lower, upper)
    summary = growth_summary(table, lower, upper)
    summary["generators"] = sigma.describe()
    summary["refutation_radius"] = lower.m
    summary["unresolved_pairs"] = [list(p) for p in lower.unresolved]
    _emit(dumps(summary), args.json, out)
    return EXIT_OK if upper is not None else EXIT_UNKNOWN


def _pair(args, ring):
    names, maps = parse_generators(args.gens, ring)
    parts = [p.strip() for p in args.pair.split(",")]
    if len(parts) != 2:
        raise WorkbenchError("--pair expects two words separated by a comma")
    return [eval_word(Word.parse(p, names), maps) for p in parts]


def cmd_decide(args, out) -> int:
    ring = ModulusRing.parse(args.ring, True if args.field else None)
    f, g = _pair(args, ring)
    verdict = decide_pair(f, g, _config(args))
    _emit(dumps(verdict_to_json(verdict)), args.json, out)
    return EXIT_UNKNOWN if verdict.tag is Verdict.UNKNOWN else EXIT_OK


def cmd_mahler(args, out) -> int:
    coeffs = _read_poly(args)
    res = mahler_measure(coeffs, args.bits)
    obj = {"schema": "v1", "polynomial": list(coeffs), **res.to_json()}
    _emit(dumps(obj), args.json, out)
    return EXIT_OK


def cmd_verify_ct(args, out) -> int:
    report = ct_family_verify(args.n, _config(args), allow_large=args.allow_large)
    _emit(dumps(report.to_json()), args.json, out)
    if not report.all_verified:
        return EXIT_INPUT
    return EXIT_UNKNOWN if report.unresolved else EXIT_OK


def cmd_classify(args, out) -> int:
    ring, sigma = _sigma(args)
    cls = classify_group(sigma.raw)
    _emit(dumps({"schema": "v1", "ring": ring.to_json(), "class": cls.value}),
          args.json, out)
    return EXIT_UNKNOWN if cls is GroupClass.UNKNOWN else EXIT_OK


def cmd_check(args, out) -> int:
    obj = json.loads(Path(args.file).read_text())
    ok, why = check_json(obj)
    out.write(f"{'valid' if ok else 'invalid'}: {why}\n")
    return EXIT_OK if ok else EXIT_INPUT


def cmd_lehmer(args, out) -> int:
    coeffs = _read_poly(args)
    report = lehmer_experiment(coeffs, args.nmax, _config(args), cert_radius=args.cert_radius,
                               precision_bits=args.bits)
    if args.csv:
        lines = ["n,ball_size,upper_bound_bits,dplus_status"]
        for r in report["growth"]["rows"]:
            bits = r["upper_bound_bits"] or ""
            lines.append(f"{r['n']},{r['ball_size']},{bits},{r['dplus_status']}")
        Path(args.csv).write_text("\n".join(lines) + "\n")
    _emit(dumps(report), args.json, out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affgrowth",
        description="Exact growth, freeness and Mahler-measure tools for affine groups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write JSON here instead of stdout")
    common.add_argument("--precision-bits", type=int, default=64)
    common.add_argument("--relation-max-len", type=int, default=14)
    common.add_argument("--memory-budget", type=int, default=10**7)
    common.add_argument("--trial-division-bound", type=int, default=10**6)
    common.add_argument("--workers", type=int, default=None,
                        help="accepted for compatibility; results never depend on it")

    ring_opts = argparse.ArgumentParser(add_help=False)
    ring_opts.add_argument("--ring", required=True,
                           help='modulus such as "x^3+x+1" or "1,1,0,1", or "t" for Q(t)')
    ring_opts.add_argument("--gens", default="gamma",
                           help='"gamma" for A=(x,0), B=(x,1), or "A=a|b; B=a|b"')
    ring_opts.add_argument("--field", action="store_true",
                           help="assert that the modulus is irreducible")

    poly_opts = argparse.ArgumentParser(add_help=False)
    poly_opts.add_argument("--poly", help="monic integer polynomial")
    poly_opts.add_argument("--poly-file", help="file holding the polynomial")
    poly_opts.add_argument("--bits", type=int, default=64)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("growth", parents=[common, ring_opts], help="ball sizes")
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--probe", type=int, default=0, help="refutation radius to probe")
    p.add_argument("--cert-radius", type=int, default=0, help="certificate search radius")
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("dplus", parents=[common, ring_opts],
                       help="bracket the radius of positive independence")
    p.add_argument("--nmax", type=int, default=3, help="certificate search radius")
    p.add_argument("--probe", type=int, default=1, help="refutation radius to probe")
    p.set_defaults(func=cmd_dplus)

    p = sub.add_parser("decide", parents=[common, ring_opts], help="decide one pair")
    p.add_argument("--pair", required=True, help='two words, e.g. "A,B" or "A^-3,B A^-3 B^-1"')
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("mahler", parents=[common, poly_opts], help="Mahler measure")
    p.set_defaults(func=cmd_mahler)

    p = sub.add_parser("verify-ct", parents=[common], help="check the counterexample family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--allow-large", action="store_true", help="permit n >= 4")
    p.set_defaults(func=cmd_verify_ct)

    p = sub.add_parser("classify", parents=[common, ring_opts], help="group structure")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("check", help="re-validate an emitted verdict JSON")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("lehmer", parents=[common, poly_opts], help="Mahler-growth experiment")
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--cert-radius", type=int, default=2)
    p.add_argument("--csv", metavar="PATH")
    p.set_defaults(func=cmd_lehmer)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args, out)
    except (WorkbenchError, ValueError, ZeroDivisionError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
