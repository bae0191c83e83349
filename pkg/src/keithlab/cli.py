"""Command-line front end.

Every result is written to stdout as one line: a JSON object
``{"schema_version": 1, "command": ..., "payload": {...}}`` or, with
``--format csv``, one CSV row under a fixed per-command header.  Numbers are
written as decimal strings; lists become JSON arrays or space-separated CSV
cells.

Exit codes: 0 success, 1 negative verification (``check``), 2 usage or
domain error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from fractions import Fraction
from typing import Any, Callable, Iterable, Optional, Sequence, TextIO

from . import __version__
from .antichain import (
    PosetPoint,
    brute_max_antichain,
    composite_split,
    construct_k3,
    is_antichain,
    k3_size,
    keith_blocks,
    refined_bound,
    sperner_bound,
)
from .core import digits_of, k_sequence
from .density import feasible_alpha, keith_census, kappa_stat, zero_heavy_count
from .errors import BudgetExceeded, KeithlabError
from .keith_engine import is_keith, naive_budget, search
from .repdigit import (
    lambda_eval,
    lambda_window_min,
    repdigit_cross_check,
    repdigit_keith_scan,
    repdigit_value,
    repunit_hit_excluded,
)

log = logging.getLogger("keithlab")

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

# fixed CSV headers, one per command
FIELDS: dict[str, list[str]] = {
    "check": ["value", "base", "keith", "n", "m", "digits", "prefix_terms"],
    "sequence": ["init", "terms"],
    "search": ["value", "base", "n", "m"],
    "repdigit.scan": ["base", "max_n", "hit_count", "hit_values", "hit_digits", "hit_lengths",
                      "cross_check_max_n", "cross_check"],
    "repdigit.lambda": ["base", "n", "m", "precision_bits", "lambda", "lambda_fixed",
                        "nonzero_exact", "log2_abs_lambda", "window_minimizer", "hit_excluded"],
    "antichain.bound": ["k", "n", "factor", "bound", "size", "holds", "refined_factor",
                        "refined_holds"],
    "antichain.brute": ["k", "n", "size", "bound", "holds", "refined_holds", "witness"],
    "antichain.construct3": ["n", "size", "formula_size", "is_antichain", "points"],
    "antichain.split": ["k", "l", "m", "u", "v", "w"],
    "antichain.blocks": ["base", "n", "prefix_len", "m", "prefix", "size", "suffixes",
                         "is_antichain"],
    "density.census": ["base", "n", "keith_count", "values", "bound_ratio"],
    "density.zeroheavy": ["n", "base", "alpha", "count", "majorant", "within_majorant"],
    "density.alpha": ["base", "empty", "lower", "upper"],
    "density.kappa": ["base", "kappa", "count", "ratio_min", "ratio_max", "ratio_mean",
                      "mean_deviation"],
}


def _scalar(x: Any) -> Any:
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, (int, float, Fraction)):
        return str(x)
    return x


def encode(x: Any) -> Any:
    """Turn numbers into decimal strings, recursively."""
    if isinstance(x, dict):
        return {k: encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode(v) for v in x]
    return _scalar(x)


def _csv_cell(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, list):
        return " ".join(_csv_cell(v) for v in x)
    return str(x)


class Emitter:
    def __init__(self, command: str, fmt: str, out: TextIO):
        self.command = command
        self.fmt = fmt
        self.out = out
        self._writer: Optional[Any] = None

    def emit(self, payload: dict) -> None:
        payload = encode(payload)
        if self.fmt == "json":
            record = {"schema_version": SCHEMA_VERSION, "command": self.command,
                      "payload": payload}
            self.out.write(json.dumps(record) + "\n")
            return
        fields = FIELDS[self.command]
        if self._writer is None:
            self._writer = csv.writer(self.out, lineterminator="\n")
            self._writer.writerow(fields)
        self._writer.writerow([_csv_cell(payload.get(f)) for f in fields])


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from exc


def _digit_span(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            span = int(lo), int(hi)
        else:
            span = int(text), int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}") from exc
    if span[0] < 2 or span[1] < span[0]:
        raise argparse.ArgumentTypeError(f"digit span must satisfy 2 <= LO <= HI, got {text!r}")
    return span


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected a rational like 1/2 or 0.49: {text!r}") from exc


def _witness_payload(w) -> dict:
    return {"value": w.value, "base": w.base, "n": w.n, "m": w.m}


# --- command handlers: each yields payload dicts and returns an exit code ----

def cmd_check(args, emit: Callable[[dict], None]) -> int:
    w = is_keith(args.value, args.base, with_terms=args.witness)
    ds = digits_of(args.value, args.base)
    payload = {
        "value": args.value, "base": args.base, "keith": w is not None, "n": ds.n,
        "m": w.m if w else None, "digits": list(ds.digits),
        "prefix_terms": list(w.prefix_terms) if w and w.prefix_terms else None,
    }
    emit(payload)
    return EXIT_OK if w else EXIT_NEGATIVE


def cmd_sequence(args, emit) -> int:
    emit({"init": args.init, "terms": k_sequence(args.init, args.terms)})
    return EXIT_OK


def cmd_search(args, emit) -> int:
    lo, hi = args.digits
    if args.algo == "naive":
        budget = naive_budget() if args.budget is None else args.budget
        for n in range(lo, hi + 1):
            need = (args.base - 1) * args.base ** (n - 1)
            if need > budget:
                raise BudgetExceeded(need, budget)
    results = []
    for n in range(lo, hi + 1):
        log.info("searching base %d, %d digits (%s)", args.base, n, args.algo)
        results.extend(search(args.base, n, algo=args.algo, jobs=args.jobs, budget=args.budget))
    for w in sorted(results, key=lambda w: w.value):
        emit(_witness_payload(w))
    return EXIT_OK


def cmd_repdigit_scan(args, emit) -> int:
    hits = repdigit_keith_scan(args.base, args.max_n)
    cross_n = min(8, args.max_n)
    emit({
        "base": args.base, "max_n": args.max_n, "hit_count": len(hits),
        "hit_values": [repdigit_value(a, n, args.base) for a, n in hits],
        "hit_digits": [a for a, _ in hits], "hit_lengths": [n for _, n in hits],
        "cross_check_max_n": cross_n, "cross_check": repdigit_cross_check(args.base, cross_n),
    })
    return EXIT_OK


def cmd_repdigit_lambda(args, emit) -> int:
    if args.m is None:
        m_star, rep = lambda_window_min(args.base, args.n, args.precision)
        minimizer = True
    else:
        rep = lambda_eval(args.base, args.n, args.m, args.precision)
        minimizer = False
    digits = max(20, rep.precision_bits * 3 // 10)
    emit({
        "base": rep.base, "n": rep.n, "m": rep.m, "precision_bits": rep.precision_bits,
        "lambda": _fraction_decimal(rep.fraction, digits), "lambda_fixed": rep.lambda_fixed,
        "nonzero_exact": rep.nonzero_exact, "log2_abs_lambda": rep.log2_abs_lambda,
        "window_minimizer": minimizer,
        "hit_excluded": repunit_hit_excluded(rep.base, rep.n, rep.m),
    })
    return EXIT_OK


def _fraction_decimal(x: Fraction, digits: int) -> str:
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = round(x * 10**digits)
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def cmd_antichain_bound(args, emit) -> int:
    b = sperner_bound(args.k, args.n)
    r = refined_bound(args.k, args.n)
    emit({
        "k": args.k, "n": args.n, "factor": b.factor, "bound": b.value, "size": args.size,
        "holds": b.holds(args.size) if args.size is not None else None,
        "refined_factor": r.factor,
        "refined_holds": r.holds(args.size) if args.size is not None else None,
    })
    return EXIT_OK


def _points(points: Iterable[PosetPoint]) -> list[str]:
    return sorted(",".join(map(str, p.coords)) for p in points)


def cmd_antichain_brute(args, emit) -> int:
    rep = brute_max_antichain(args.k, args.n, budget=args.budget)
    emit({
        "k": args.k, "n": args.n, "size": rep.brute_size, "bound": rep.bound.value,
        "holds": rep.bound_holds,
        "refined_holds": refined_bound(args.k, args.n).holds(rep.brute_size),
        "witness": _points(rep.witness) if args.witness else None,
    })
    return EXIT_OK


def cmd_antichain_construct3(args, emit) -> int:
    pts = construct_k3(args.n)
    emit({
        "n": args.n, "size": len(pts), "formula_size": k3_size(args.n),
        "is_antichain": is_antichain(pts), "points": _points(pts) if args.points else None,
    })
    return EXIT_OK


def cmd_antichain_split(args, emit) -> int:
    k = args.l * args.m
    u = PosetPoint(k, tuple(args.point))
    v, w = composite_split(u, args.l, args.m)
    emit({"k": k, "l": args.l, "m": args.m, "u": list(u.coords), "v": list(v.coords),
          "w": list(w.coords)})
    return EXIT_OK


def cmd_antichain_blocks(args, emit) -> int:
    n = args.digits
    prefix_len = args.prefix_len if args.prefix_len is not None else n // 2
    witnesses = search(args.base, n, jobs=args.jobs)
    blocks = keith_blocks(witnesses, prefix_len)
    for (m, prefix), pts in sorted(blocks.items()):
        emit({
            "base": args.base, "n": n, "prefix_len": prefix_len, "m": m,
            "prefix": list(prefix), "size": len(pts),
            "suffixes": [",".join(str(c - 1) for c in p.coords) for p in pts],
            "is_antichain": is_antichain(pts),
        })
    return EXIT_OK


def cmd_density_census(args, emit) -> int:
    for row in keith_census(args.base, args.max_n, n_min=args.min_n, jobs=args.jobs):
        emit({"base": row.base, "n": row.n, "keith_count": row.keith_count,
              "values": list(row.values), "bound_ratio": row.bound_ratio})
    return EXIT_OK


def cmd_density_zeroheavy(args, emit) -> int:
    z = zero_heavy_count(args.n, args.base, args.alpha)
    emit({"n": z.n, "base": z.base, "alpha": z.alpha, "count": z.count,
          "majorant": z.majorant, "within_majorant": z.within_majorant})
    return EXIT_OK


def cmd_density_alpha(args, emit) -> int:
    iv = feasible_alpha(args.base, digits=args.digits)
    emit({"base": args.base, "empty": iv.empty, "lower": iv.lower, "upper": iv.upper})
    return EXIT_OK


def cmd_density_kappa(args, emit) -> int:
    rows = keith_census(args.base, args.max_n, jobs=args.jobs)
    witnesses = [w for row in rows for w in row.witnesses]
    s = kappa_stat(args.base, witnesses)
    emit({"base": s.base, "kappa": s.kappa, "count": s.count, "ratio_min": s.ratio_min,
          "ratio_max": s.ratio_max, "ratio_mean": s.ratio_mean,
          "mean_deviation": s.mean_deviation})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default=argparse.SUPPRESS,
                        help="output format (default json lines)")

    parser = argparse.ArgumentParser(prog="keithlab", description="Keith number toolkit")
    parser.add_argument("--format", choices=["json", "csv"], default="json")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(subparsers, name, func, command, **kw):
        p = subparsers.add_parser(name, parents=[common], **kw)
        p.set_defaults(func=func, record=command)
        return p

    p = leaf(sub, "check", cmd_check, "check", help="is VALUE a Keith number?")
    p.add_argument("value", type=int)
    p.add_argument("--base", type=int, default=10)
    p.add_argument("--witness", action="store_true", help="include terms 1..m")

    p = leaf(sub, "sequence", cmd_sequence, "sequence", help="terms of the n-term recurrence")
    p.add_argument("--init", type=_int_list, required=True)
    p.add_argument("--terms", type=int, required=True)

    p = leaf(sub, "search", cmd_search, "search", help="enumerate Keith numbers")
    p.add_argument("--base", type=int, default=10)
    p.add_argument("--digits", type=_digit_span, required=True, metavar="LO..HI")
    p.add_argument("--algo", choices=["fast", "naive"], default="fast")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=None)

    rep = sub.add_parser("repdigit", help="repdigit Keith analysis")
    rsub = rep.add_subparsers(dest="subcommand", required=True)
    p = leaf(rsub, "scan", cmd_repdigit_scan, "repdigit.scan")
    p.add_argument("--base", type=int, default=10)
    p.add_argument("--max-n", type=int, required=True)
    p = leaf(rsub, "lambda", cmd_repdigit_lambda, "repdigit.lambda")
    p.add_argument("--base", type=int, default=10)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None, help="omit to minimise over 2n<m<7n")
    p.add_argument("--precision", type=int, default=None, help="fractional bits")

    ac = sub.add_parser("antichain", help="product-poset antichains")
    asub = ac.add_subparsers(dest="subcommand", required=True)
    p = leaf(asub, "bound", cmd_antichain_bound, "antichain.bound")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--size", type=int, default=None)
    p = leaf(asub, "brute", cmd_antichain_brute, "antichain.brute")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=4096)
    p.add_argument("--witness", action="store_true")
    p = leaf(asub, "construct3", cmd_antichain_construct3, "antichain.construct3")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--points", action="store_true")
    p = leaf(asub, "split", cmd_antichain_split, "antichain.split")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--point", type=_int_list, required=True)
    p = leaf(asub, "blocks", cmd_antichain_blocks, "antichain.blocks")
    p.add_argument("--base", type=int, default=10)
    p.add_argument("--digits", type=int, required=True)
    p.add_argument("--prefix-len", type=int, default=None, help="default floor(n/2)")
    p.add_argument("--jobs", type=int, default=1)

    dn = sub.add_parser("density", help="density-argument ingredients")
    dsub = dn.add_subparsers(dest="subcommand", required=True)
    p = leaf(dsub, "census", cmd_density_census, "density.census")
    p.add_argument("--base", type=int, default=10)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--min-n", type=int, default=2)
    p.add_argument("--jobs", type=int, default=1)
    p = leaf(dsub, "zeroheavy", cmd_density_zeroheavy, "density.zeroheavy")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--base", type=int, default=10)
    p.add_argument("--alpha", type=_rational, default=Fraction(1, 2))
    p = leaf(dsub, "alpha", cmd_density_alpha, "density.alpha")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--digits", type=int, default=6)
    p = leaf(dsub, "kappa", cmd_density_kappa, "density.kappa")
    p.add_argument("--base", type=int, default=10)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)

    return parser


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    out = sys.stdout if out is None else out
    records: list[dict] = []
    try:
        code = args.func(args, records.append)
    except BudgetExceeded as exc:
        print(f"keithlab: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except KeithlabError as exc:
        parser.print_usage(sys.stderr)
        print(f"keithlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    # nothing is written until the command has fully succeeded
    emitter = Emitter(args.record, args.format, out)
    for payload in records:
        emitter.emit(payload)
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
