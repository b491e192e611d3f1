"""``longcf`` command line: expand, unit, predict, verify, sweep, normalize.

Exit codes: 0 ok, 1 bad arguments, 2 perfect square, 3 period too long,
4 inadmissible parameters, 5 I/O error, 6 normalisation did not terminate,
7 verification mismatch.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cf_engine import DEFAULT_MAX_PERIOD, PeriodTooLong, expand_sqrt, unit_from_expansion
from .exact_arith import DEFAULT_SQUARE_FREE_BOUND, PerfectSquareError, square_free_probe
from .families import PARAM_NAMES, FamilyId, Inadmissible, UnknownFamily, generate
from .verify import SweepConfig, parse_families, summarize, sweep, verify_instance
from .words import DEFAULT_REWRITE_BUDGET, NonTerminating, eval_finite, normalize

EXIT_OK, EXIT_PARSE, EXIT_SQUARE, EXIT_PERIOD, EXIT_INADMISSIBLE, EXIT_IO, EXIT_NONTERM, EXIT_MISMATCH = range(8)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _big_int(text: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _positive(text: str) -> int:
    value = _big_int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from None


def _params(text: str) -> dict[str, int]:
    out = {}
    for item in text.split(","):
        key, sep, value = item.partition("=")
        if not sep:
            raise argparse.ArgumentTypeError(f"expected k=v, got {item!r}")
        out[key.strip()] = _big_int(value)
    return out


def _family_params(args) -> tuple[FamilyId, dict[str, int]]:
    try:
        fid = FamilyId.parse(args.family)
    except UnknownFamily:
        raise UsageError(f"unknown family {args.family!r}") from None
    names = PARAM_NAMES[fid]
    if set(args.params) != set(names):
        raise UsageError(f"{fid} takes parameters {','.join(names)}")
    return fid, args.params


def _emit(payload: dict, as_json: bool, text: str):
    print(json.dumps(payload) if as_json else text)


def cmd_expand(args) -> int:
    cf = expand_sqrt(args.d, args.max_period)
    _emit({"a0": cf.a0, "period": list(cf.period), "len": cf.period_len},
          args.json, f"{cf} l={cf.period_len}")
    return EXIT_OK


def cmd_unit(args) -> int:
    eps, sign = unit_from_expansion(args.d, args.max_period)
    sq = square_free_probe(args.d, args.square_free_bound)
    mod8 = args.d % 8
    if mod8 == 5:
        print(f"warning: d = 5 (mod 8); the printed element may be a proper power "
              f"of the fundamental unit of the maximal order", file=sys.stderr)
    payload = {"d": str(args.d), "P": str(eps.a), "Q": str(eps.b), "norm": sign,
               "d_mod8": mod8, "square_free": str(sq)}
    text = (f"{eps.a} + {eps.b}*sqrt({args.d})\nnorm {sign:+d}\n"
            f"d mod 8 = {mod8}\nsquare-free: {sq}")
    _emit(payload, args.json, text)
    return EXIT_OK


def cmd_predict(args) -> int:
    fid, params = _family_params(args)
    inst = generate(fid, params)
    payload = {"family": fid.value, "params": params, "d": str(inst.d), "a0": str(inst.a0),
               "predicted_period": [str(a) for a in inst.predicted_period],
               "len": inst.predicted_len,
               "unit": None if inst.predicted_unit is None else
               [str(inst.predicted_unit.a), str(inst.predicted_unit.b)]}
    text = f"d={inst.d}\n[{inst.a0}; {','.join(map(str, inst.predicted_period))}] l={inst.predicted_len}"
    if inst.predicted_unit is not None:
        text += f"\nunit {inst.predicted_unit}"
    _emit(payload, args.json, text)
    return EXIT_OK


def _write(path: Path, text: str):
    try:
        path.write_text(text)
    except OSError as exc:
        raise IOError(exc) from exc


def cmd_verify(args) -> int:
    fid, params = _family_params(args)
    report = verify_instance(fid, params, max_period=args.max_period,
                             square_free_bound=args.square_free_bound)
    record = report.to_json()
    if args.out:
        _write(Path(args.out), report.to_line() + "\n")
    if args.json:
        print(json.dumps(record))
    else:
        print(f"{fid} {params} d={record['d']}")
        for key in ("word_match", "len_match", "unit_match", "pell_sign", "d_mod8", "square_free"):
            print(f"  {key}: {record[key]}")
        for note in record["notes"]:
            print(f"  note: {note}")
        print("PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_sweep(args) -> int:
    try:
        families = parse_families(args.families)
    except UnknownFamily as exc:
        raise UsageError(f"unknown family {exc}") from None
    cfg = SweepConfig(families, args.param_bound, args.k_bound, args.max_period,
                      args.square_free_bound, args.jobs)
    lines = sweep(cfg)
    if args.out:
        _write(Path(args.out), "".join(line + "\n" for line in lines))
    passed, failed = summarize(lines)
    _emit({"instances": len(lines), "pass": passed, "fail": failed}, args.json,
          f"instances={len(lines)} pass={passed} fail={failed}")
    return EXIT_OK if failed == 0 else EXIT_MISMATCH


def _value(word) -> str:
    try:
        return str(eval_finite(word))
    except ZeroDivisionError:
        return "undefined"


def cmd_normalize(args) -> int:
    out = normalize(args.word, args.budget)
    before, after = _value(args.word), _value(out)
    _emit({"input": list(args.word), "word": list(out), "value_before": before, "value_after": after},
          args.json, f"{','.join(map(str, out))} (value {after})\ninput value: {before}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="longcf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, *, d=False, family=False):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--max-period", type=_positive, default=DEFAULT_MAX_PERIOD)
        p.add_argument("--square-free-bound", type=_positive, default=DEFAULT_SQUARE_FREE_BOUND)
        if d:
            p.add_argument("--d", type=_big_int, required=True)
        if family:
            p.add_argument("--family", required=True)
            p.add_argument("--params", type=_params, required=True, help="k=v[,k=v...]")

    common(sub.add_parser("expand", help="period of sqrt(d)"), d=True)
    common(sub.add_parser("unit", help="Pell unit from the expansion"), d=True)
    common(sub.add_parser("predict", help="family word without verification"), family=True)
    p = sub.add_parser("verify", help="check one family instance")
    common(p, family=True)
    p.add_argument("--out")
    p = sub.add_parser("sweep", help="verify a parameter grid")
    common(p)
    p.add_argument("--families", default="all")
    p.add_argument("--param-bound", type=_positive, default=3)
    p.add_argument("--k-bound", type=_positive, default=4)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--out")
    p = sub.add_parser("normalize", help="rewrite zero/negative partial quotients")
    p.add_argument("--word", type=_int_list, required=True)
    p.add_argument("--budget", type=_positive, default=DEFAULT_REWRITE_BUDGET)
    p.add_argument("--json", action="store_true")
    return parser


_HANDLERS = {"expand": cmd_expand, "unit": cmd_unit, "predict": cmd_predict,
             "verify": cmd_verify, "sweep": cmd_sweep, "normalize": cmd_normalize}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help or a parse error
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    try:
        return _HANDLERS[args.command](args)
    except PerfectSquareError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SQUARE
    except PeriodTooLong as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PERIOD
    except Inadmissible as exc:
        print(f"error: inadmissible parameters: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except IOError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NonTerminating as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONTERM
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
