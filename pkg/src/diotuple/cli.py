"""Command-line surface: one subcommand per module, reproducible output.

Conventions: results stream to stdout as JSON Lines (or CSV/table where a
tabular view makes sense), diagnostics go to stderr, and every integer on
the wire is a decimal string so no height ever hits a word-size limit.
Exit codes: 0 success, 1 bad input, 2 result truncation, 3 a mathematical
invariant check failed (the loudest failure this tool can produce).
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict
from fractions import Fraction

from . import bounds as bounds_mod
from . import ff as ff_mod
from . import sieve as sieve_mod
from .core import TupleConfig, verify_bipartite, verify_tuple
from .errors import InputError, InvariantViolation
from .exact import format_rational
from .search import SearchBudget, search_bipartite, search_tuples

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit 2 on bad flags; 2 means truncation here."""

    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        sys.exit(1)


def _positive(s: str) -> int:
    if not s.isdigit() or int(s) < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s!r}")
    return int(s)


def _nonneg(s: str) -> int:
    if not s.isdigit():
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {s!r}")
    return int(s)


def _signed(s: str) -> int:
    body = s[1:] if s[:1] in "+-" else s
    if not body.isdigit():
        raise argparse.ArgumentTypeError(f"expected an integer, got {s!r}")
    return int(s)


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {s!r}")


def _element_list(s: str) -> list[int]:
    try:
        return [_positive(part.strip()) for part in s.split(",") if part.strip()]
    except argparse.ArgumentTypeError:
        raise argparse.ArgumentTypeError(f"expected comma-separated positive integers, got {s!r}")


def _residue_list(s: str) -> list[int]:
    try:
        return [_nonneg(part.strip()) for part in s.split(",") if part.strip()]
    except argparse.ArgumentTypeError:
        raise argparse.ArgumentTypeError(f"expected comma-separated residues, got {s!r}")


def _jsonify(obj):
    """Wire form: ints as decimal strings, rationals as p/q, floats as-is."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, dict):
        return {k if isinstance(k, str) else str(k): _jsonify(v)
                for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(record: dict):
    sys.stdout.write(json.dumps(_jsonify(record)) + "\n")


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit_rows(fmt: str, header: list[str], rows: list[list]):
    cells = [[_cell(v) for v in row] for row in rows]
    if fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(cells)
    else:  # aligned table
        widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h)
                  for i, h in enumerate(header)]
        line = "  ".join(h.ljust(w) for h, w in zip(header, widths))
        sys.stdout.write(line.rstrip() + "\n")
        for r in cells:
            sys.stdout.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")


# ---------------------------------------------------------------- subcommands

def _cmd_constants(args) -> int:
    k = args.k
    tc = bounds_mod.table_constants(k)
    alpha, beta = bounds_mod.evertse_constants(k)
    if args.format == "jsonl":
        _emit({"type": "constants", "k": k, "r": tc.r, "s": tc.s, "t": tc.t,
               "u": tc.u, "alpha": alpha, "beta": beta})
    else:
        _emit_rows(args.format, ["k", "r", "s", "t", "u", "alpha", "beta"],
                   [[k, tc.r, tc.s, tc.t, tc.u, alpha, beta]])
    return 0


def _cmd_bound(args) -> int:
    reports = bounds_mod.bound_reports(args.n, args.k, args.L)
    if args.format == "jsonl":
        for r in reports:
            _emit({"type": "bound", **asdict(r)})
    else:
        rows = [[r.name,
                 " ".join(f"{k}={v}" for k, v in r.parameters.items()),
                 r.value, r.exact, r.anchor] for r in reports]
        _emit_rows(args.format, ["name", "parameters", "value", "exact", "anchor"], rows)
    return 0


def _cmd_search_tuples(args) -> int:
    config = TupleConfig(args.k, args.n)
    budget = SearchBudget(height=args.N, min_size=args.min_size,
                          max_results=args.max_results, parallelism=args.threads)
    outcome = search_tuples(config, budget)
    for t in outcome.results:
        _emit({"type": "tuple", **t.to_dict()})
    _emit({"type": "summary", "count": len(outcome.results),
           "truncated": outcome.truncated})
    return 2 if outcome.truncated else 0


def _cmd_search_bipartite(args) -> int:
    config = TupleConfig(args.k, args.n)
    budget = SearchBudget(height=args.N, min_size=args.minA,
                          min_partner=args.minB, max_results=args.max_results,
                          parallelism=args.threads)
    outcome = search_bipartite(config, budget)
    for p in outcome.results:
        _emit({"type": "pair", **p.to_dict()})
    _emit({"type": "summary", "count": len(outcome.results),
           "truncated": outcome.truncated})
    return 2 if outcome.truncated else 0


def _cmd_verify(args) -> int:
    config = TupleConfig(args.k, args.n)
    if args.tuple is not None:
        if args.A is not None or args.B is not None:
            raise InputError("give either --tuple or --A/--B, not both")
        elems = sorted(args.tuple)
        report = verify_tuple(elems, config)
        record = {"type": "verify", "target": "tuple", "k": args.k,
                  "n": args.n, "elements": elems}
    else:
        if args.A is None or args.B is None:
            raise InputError("need --tuple, or both --A and --B")
        A, B = sorted(args.A), sorted(args.B)
        report = verify_bipartite(A, B, config)
        record = {"type": "verify", "target": "pair", "k": args.k,
                  "n": args.n, "A": A, "B": B}
    record.update(ok=report.ok,
                  failures=[list(f) for f in report.failures],
                  notes=list(report.notes))
    _emit(record)
    return 0


def _cmd_sieve(args) -> int:
    if args.audit is not None:
        return _sieve_audit(args)
    if args.n is None or args.k is None or args.L is None:
        raise InputError("sieve needs --n, --k and --L (or --audit)")
    if args.set is not None:
        elems = args.set
    elif args.set_file is not None:
        elems = []
        with open(args.set_file) as fh:
            for line in fh:
                line = line.strip()
                if line:
                    elems.append(_positive(line))
    else:
        raise InputError("sieve needs --set or --set-file")
    result = sieve_mod.sieve_pipeline(elems, args.n, args.k, args.L)
    _emit({"type": "sieve", **asdict(result)})
    return 0


def _sieve_audit(args) -> int:
    """Randomized soundness driver: the estimate must never undercount."""
    rng = random.Random(args.seed)
    N = args.N or 10 ** 4
    pool = sieve_mod.primes_up_to(1000)
    usable = violations = 0
    for trial in range(args.audit):
        size = rng.randint(1, 60)
        A = rng.sample(range(1, N + 1), size)
        P = rng.sample(pool, rng.randint(1, 25))
        ev = sieve_mod.gallagher_bound(A, N, P)
        if ev.bound is None:
            continue
        usable += 1
        if size > ev.bound + 1e-9:
            violations += 1
            _emit({"type": "audit-violation", "trial": trial, "size": size,
                   "bound": ev.bound, "primes": sorted(P)})
            logger.error("sieve bound undercounted on trial %d", trial)
    _emit({"type": "audit-summary", "trials": args.audit, "usable": usable,
           "violations": violations, "seed": args.seed})
    return 3 if violations else 0


def _cmd_ff_scan(args) -> int:
    lams = list(range(1, args.lam_max + 1)) if args.lam_max else [args.lam]

    def run(lam: int):
        config = ff_mod.FieldConfig(args.p, args.k, lam)
        if args.mode == "bipartite":
            return ff_mod.ff_scan_bipartite(config, args.maxA)
        return ff_mod.ff_scan_clique(config)

    if args.threads > 1 and len(lams) > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(run, lams))
    else:
        results = [run(lam) for lam in lams]

    bad = 0
    for r in results:
        record = asdict(r)
        if args.mode == "bipartite":
            record["violation_count"] = len(r.violations)
            bad += len(r.violations)
        else:
            bad += bool(r.violation)
        _emit({"type": f"ff-{args.mode}", **record})
    _emit({"type": "summary", "scans": len(results), "violations": bad})
    return 3 if bad else 0


def _cmd_char_sum(args) -> int:
    if args.max_p is not None:
        rows = []
        for p in sieve_mod.primes_up_to(args.max_p):
            if p < 3 or (p - 1) % args.k != 0:
                continue
            m = args.interval or math.isqrt(p)
            m = max(1, min(m, p - 1))
            config = ff_mod.FieldConfig(p, args.k)
            r = ff_mod.char_sum(range(1, m + 1), range(1, m + 1), config)
            rows.append([p, args.k, m, r.zero_hits, r.magnitude,
                         "" if r.exponent is None else repr(r.exponent)])
        if args.format == "jsonl":
            for row in rows:
                _emit({"type": "char-sweep", "p": row[0], "k": row[1],
                       "side": row[2], "zero_hits": row[3],
                       "magnitude": row[4],
                       "exponent": None if row[5] == "" else float(row[5])})
        else:
            _emit_rows(args.format,
                       ["p", "k", "side", "zero_hits", "magnitude", "exponent"],
                       rows)
        return 0
    if args.p is None or args.A is None or args.B is None:
        raise InputError("char-sum needs --p, --A and --B (or --max-p for a sweep)")
    config = ff_mod.FieldConfig(args.p, args.k, g=args.g or 0)
    r = ff_mod.char_sum(args.A, args.B, config)
    _emit({"type": "char-sum", **asdict(r), "g": config.g})
    return 0


def _cmd_thue_scan(args) -> int:
    report = bounds_mod.thue_scan(args.a, args.b, args.k, args.c, args.X)
    _emit({"type": "thue-scan", **asdict(report)})
    return 3 if report.lemma_violation else 0


# --------------------------------------------------------------------- wiring

def _build_parser() -> tuple[_Parser, dict]:
    parser = _Parser(prog="diotuple",
                     description="search, verify and bound shifted-product tuples")
    subs = parser.add_subparsers(dest="subcommand", required=True)
    registry: dict[str, argparse.ArgumentParser] = {}

    def sub(name: str, func, **kwargs):
        sp = subs.add_parser(name, **kwargs)
        sp.set_defaults(func=func)
        sp.add_argument("--config", help="key=value file with flag defaults")
        registry[name] = sp
        return sp

    sp = sub("constants", _cmd_constants, help="per-degree constant tables")
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--format", choices=["csv", "table", "jsonl"], default="csv")

    sp = sub("bound", _cmd_bound, help="evaluate every applicable size bound")
    sp.add_argument("--n", type=_signed, required=True)
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--L", type=_rational)
    sp.add_argument("--format", choices=["jsonl", "csv", "table"], default="jsonl")

    sp = sub("search-tuples", _cmd_search_tuples, help="maximal tuples up to a height")
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--n", type=_signed, required=True)
    sp.add_argument("--N", type=_positive, required=True)
    sp.add_argument("--min-size", type=_positive, default=2)
    sp.add_argument("--max-results", type=_positive, default=10 ** 5)
    sp.add_argument("--threads", type=_positive, default=1)

    sp = sub("search-bipartite", _cmd_search_bipartite,
             help="maximal two-sided pairs up to a height")
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--n", type=_signed, required=True)
    sp.add_argument("--N", type=_positive, required=True)
    sp.add_argument("--minA", type=_positive, default=2)
    sp.add_argument("--minB", type=_positive, default=2)
    sp.add_argument("--max-results", type=_positive, default=10 ** 5)
    sp.add_argument("--threads", type=_positive, default=1)

    sp = sub("verify", _cmd_verify, help="check a tuple or pair definitionally")
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--n", type=_signed, required=True)
    sp.add_argument("--tuple", type=_element_list)
    sp.add_argument("--A", type=_element_list)
    sp.add_argument("--B", type=_element_list)

    sp = sub("sieve", _cmd_sieve, help="larger-sieve size estimate for a set")
    sp.add_argument("--n", type=_signed)
    sp.add_argument("--k", type=_positive)
    sp.add_argument("--L", type=_rational)
    sp.add_argument("--set", type=_element_list)
    sp.add_argument("--set-file")
    sp.add_argument("--audit", type=_positive,
                    help="run this many randomized soundness trials instead")
    sp.add_argument("--seed", type=_nonneg, default=0)
    sp.add_argument("--N", type=_positive,
                    help="universe bound for audit trials (default 10000)")

    sp = sub("ff-scan", _cmd_ff_scan, help="prime-field product-set scans")
    sp.add_argument("--p", type=_positive, required=True)
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--lam", type=_positive, default=1)
    sp.add_argument("--lam-max", type=_positive,
                    help="sweep the shift over 1..M instead of --lam")
    sp.add_argument("--mode", choices=["bipartite", "clique"], required=True)
    sp.add_argument("--maxA", type=_positive, default=3)
    sp.add_argument("--threads", type=_positive, default=1)

    sp = sub("char-sum", _cmd_char_sum, help="multiplicative character sums")
    sp.add_argument("--p", type=_positive)
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--A", type=_residue_list)
    sp.add_argument("--B", type=_residue_list)
    sp.add_argument("--g", type=_positive)
    sp.add_argument("--max-p", type=_positive,
                    help="sweep primes up to this bound with interval sets")
    sp.add_argument("--interval", type=_positive,
                    help="interval length for the sweep (default: isqrt(p))")
    sp.add_argument("--format", choices=["csv", "table", "jsonl"], default="csv")

    sp = sub("thue-scan", _cmd_thue_scan,
             help="primitive solutions of a two-term power inequality")
    sp.add_argument("--a", type=_positive, required=True)
    sp.add_argument("--b", type=_positive, required=True)
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--c", type=_nonneg, required=True)
    sp.add_argument("--X", type=_positive, required=True)

    return parser, registry


def _inject_config(argv: list[str], registry: dict) -> list[str]:
    """Splice key=value file contents in as defaults; real flags win."""
    if not argv or argv[0] not in registry or "--config" not in argv:
        return argv
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        raise InputError("--config needs a file path")
    path = argv[idx + 1]
    rest = argv[1:idx] + argv[idx + 2:]
    sub = registry[argv[0]]
    option_map = sub._option_string_actions
    extra: list[str] = []
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise InputError(f"config line is not key=value: {line!r}")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key == "config":
                raise InputError("config files cannot nest")
            action = option_map.get("--" + key)
            if action is None:
                raise InputError(
                    f"unknown config key {key!r} for {argv[0]}")
            if action.nargs == 0:
                if value.lower() in ("true", "1", "yes"):
                    extra.append("--" + key)
                elif value.lower() not in ("false", "0", "no"):
                    raise InputError(f"{key} takes true/false, got {value!r}")
            else:
                extra.extend(["--" + key, value])
    return [argv[0]] + extra + rest


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    raw = list(sys.argv[1:] if argv is None else argv)
    parser, registry = _build_parser()
    try:
        args = parser.parse_args(_inject_config(raw, registry))
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"INVARIANT VIOLATION: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
