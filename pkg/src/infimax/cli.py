"""Command-line interface: ``infimax <command> --n <index list> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.

CSV column orders:

    covector   l1,l2,l3,err,depth_used
    fractal    value,a0,err
    itm        i,x,symbol,flagged
    attractor  k,lo,hi          (one row per component)
    complexity j,p
    verify     index_list,name,passed,detail
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from contextlib import contextmanager

from . import checks
from .errors import InfimaxError
from .fractal import fractal_sample
from .indices import IndexList
from .itm import attractor_approx, itinerary, itm_params_from_ell
from .projection import stable_covector
from .words import alpha_prefix, beta_suffix, factor_complexity

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _fmt(value) -> str:
    if isinstance(value, float):
        return "%.17g" % value
    if isinstance(value, bool):
        return str(value).lower()
    return str(value)


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _index_list(text: str) -> IndexList:
    return IndexList.parse(text)


def cmd_sequence(args) -> tuple[str, int]:
    n = _index_list(args.n)
    if args.beta or args.beta_hat:
        word = beta_suffix(n, args.len, hat=args.beta_hat)
        kind = "beta_hat" if args.beta_hat else "beta"
    else:
        word, kind = alpha_prefix(n, args.len), "alpha"
    if args.format == "json":
        return _json({"index_list": str(n), "kind": kind, "length": args.len, "symbols": word}), EXIT_OK
    return word + "\n", EXIT_OK


def cmd_covector(args) -> tuple[str, int]:
    n = _index_list(args.n)
    rec = stable_covector(n, tol=args.tol).to_record()
    if args.format == "json":
        return _json({"index_list": str(n), **rec}), EXIT_OK
    keys = ["l1", "l2", "l3", "err", "depth_used"]
    return _csv(keys, [[rec[k] for k in keys]]), EXIT_OK


def cmd_fractal(args) -> tuple[str, int]:
    n = _index_list(args.n)
    ell = stable_covector(n, tol=args.tol)
    points = fractal_sample(n, args.depth, ell)
    if args.format == "json":
        return _json({"index_list": str(n), "depth": args.depth, "ell": list(ell.ell),
                      "points": [{"value": p.value, "a0": p.a0, "err": p.err} for p in points]}), EXIT_OK
    return _csv(["value", "a0", "err"], ([p.value, p.a0, p.err] for p in points)), EXIT_OK


def cmd_itm(args) -> tuple[str, int]:
    n = _index_list(args.n)
    params = itm_params_from_ell(stable_covector(n, tol=args.tol))
    it = itinerary(params, args.x0, args.len, band=args.band)
    flagged = set(it.boundary_flags)
    rows = [[i, float(x), sym, i in flagged] for i, (x, sym) in enumerate(zip(it.orbit, it.symbols))]
    if args.format == "json":
        return _json({"index_list": str(n), "mu1": params.mu1, "mu2": params.mu2, "x0": args.x0,
                      **it.to_record(),
                      "orbit": [dict(zip(("i", "x", "symbol", "flagged"), r)) for r in rows]}), EXIT_OK
    return _csv(["i", "x", "symbol", "flagged"], rows), EXIT_OK


def cmd_attractor(args) -> tuple[str, int]:
    n = _index_list(args.n)
    params = itm_params_from_ell(stable_covector(n, tol=args.tol))
    steps = attractor_approx(params, args.iters)
    if args.format == "json":
        return _json({"index_list": str(n), "mu1": params.mu1, "mu2": params.mu2,
                      "steps": [om.to_record(k) for k, om in enumerate(steps)]}), EXIT_OK
    rows = ([k, float(lo), float(hi)] for k, om in enumerate(steps) for lo, hi in om)
    return _csv(["k", "lo", "hi"], rows), EXIT_OK


def cmd_complexity(args) -> tuple[str, int]:
    n = _index_list(args.n)
    word = alpha_prefix(n, args.len)
    rows = [[j, factor_complexity(word, j)] for j in range(1, args.depth + 1)]
    if args.format == "json":
        return _json({"index_list": str(n), "length": args.len,
                      "complexity": [{"j": j, "p": p} for j, p in rows]}), EXIT_OK
    return _csv(["j", "p"], rows), EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    lists = [_index_list(text) for text in (args.n or ["1*"])]
    results = [(n, r) for n in lists for r in checks.run_all(n, seed=args.seed)]
    passed = all(r.passed for _, r in results)
    code = EXIT_OK if passed else EXIT_FAIL
    if args.format == "json":
        return _json({"passed": passed, "seed": args.seed,
                      "results": [{"index_list": str(n), **r.to_record()} for n, r in results]}), code
    if args.csv_report:
        return _csv(["index_list", "name", "passed", "detail"],
                    ([str(n), r.name, r.passed, r.detail] for n, r in results)), code
    lines = []
    for n, r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {str(n):<20} {r.name:<18} {r.detail}")
        if not r.passed:
            lines.append(f"      witness: {json.dumps(r.witness, default=str)}")
    lines.append("PASS" if passed else "FAIL")
    return "\n".join(lines) + "\n", code


COMMANDS = {
    "sequence": (cmd_sequence, "prefix of alpha, or suffix of beta / beta-hat"),
    "covector": (cmd_covector, "stable covector with its error bound"),
    "fractal": (cmd_fractal, "Rauzy fractal sample over all paths of a given depth"),
    "itm": (cmd_itm, "orbit and itinerary under the interval translation map"),
    "attractor": (cmd_attractor, "interval-union approximations of the ITM attractor"),
    "verify": (cmd_verify, "run the property suites"),
    "complexity": (cmd_complexity, "factor complexity of an alpha prefix"),
}


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="infimax", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        if name == "verify":
            p.add_argument("--n", action="append", metavar="LIST",
                           help="index list, repeatable (default 1*)")
            p.add_argument("--csv-report", action="store_true", help="CSV rows instead of text")
        else:
            p.add_argument("--n", required=True, metavar="LIST",
                           help='index list, e.g. "1*", "2,5,1*", "1,2;(3,4)"')
        p.add_argument("--tol", type=_positive_float, default=1e-12)
        p.add_argument("--depth", type=_positive_int, default={"fractal": 6, "complexity": 30}.get(name, 12))
        p.add_argument("--len", type=_positive_int, default={"complexity": 10_000}.get(name, 100))
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", metavar="PATH", help="output file (default stdout)")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
        if name == "sequence":
            group = p.add_mutually_exclusive_group()
            group.add_argument("--beta", action="store_true")
            group.add_argument("--beta-hat", action="store_true")
        if name == "itm":
            p.add_argument("--x0", type=float, default=0.0)
            p.add_argument("--band", type=_positive_float, default=1e-9)
        if name == "attractor":
            p.add_argument("--iters", type=_positive_int, default=20)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        text, code = handler(args)
    except (InfimaxError, ValueError) as exc:
        message = f"{type(exc).__name__}: {exc}"
        print(f"infimax {args.command}: {message}", file=sys.stderr)
        if args.format == "json":
            sys.stdout.write(_json({"error": str(exc), "error_type": type(exc).__name__}))
        return EXIT_USAGE
    with _output(args.out) as fh:
        fh.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
